#include "projdist/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <utility>

#include "projdist/linalg.hpp"
#include "projdist/matched.hpp"

namespace projdist {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_value(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

Eigen::MatrixXcd bloch_projection(double x, double y, double z) {
  Eigen::MatrixXcd p(2, 2);
  p(0, 0) = 0.5 * (1.0 + z);
  p(0, 1) = 0.5 * Complex(x, -y);
  p(1, 0) = 0.5 * Complex(x, y);
  p(1, 1) = 0.5 * (1.0 - z);
  return p;
}

}  // namespace

OracleResult grid_min_2x2(const Idempotent& q, int grid_resolution) {
  if (q.dim() != 2) {
    throw ValidationError("grid_min_2x2: dimension " + std::to_string(q.dim()) + ", need 2");
  }
  if (grid_resolution < 100) {
    throw ValidationError("grid_min_2x2: resolution " + std::to_string(grid_resolution) +
                          " below 100");
  }
  const Complex q00 = q.matrix()(0, 0), q01 = q.matrix()(0, 1);
  const Complex q10 = q.matrix()(1, 0), q11 = q.matrix()(1, 1);

  // Distance² to one Bloch point, unrolled: the grid touches ~10^5 points and
  // building matrices per point would dominate the runtime.
  auto dist_sq = [&](double x, double y, double z) {
    const double d00 = std::norm(0.5 * (1.0 + z) - q00);
    const double d01 = std::norm(0.5 * Complex(x, -y) - q01);
    const double d10 = std::norm(0.5 * Complex(x, y) - q10);
    const double d11 = std::norm(0.5 * (1.0 - z) - q11);
    return d00 + d01 + d10 + d11;
  };

  const long total = static_cast<long>(grid_resolution) * grid_resolution;
  double best = std::norm(q00) + std::norm(q01) + std::norm(q10) + std::norm(q11);  // P = 0
  Eigen::MatrixXcd best_p = Eigen::MatrixXcd::Zero(2, 2);
  {
    const double d_id = std::norm(1.0 - q00) + std::norm(q01) + std::norm(q10) +
                        std::norm(1.0 - q11);
    if (d_id < best) {
      best = d_id;
      best_p = Eigen::MatrixXcd::Identity(2, 2);
    }
  }

  // Fibonacci sphere lattice: uniform areal coverage of the rank-1 stratum.
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  long best_i = -1;
  for (long i = 0; i < total; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(total);
    const double rho = std::sqrt(std::max(1.0 - z * z, 0.0));
    const double phi = static_cast<double>(i) * golden_angle;
    const double d = dist_sq(rho * std::cos(phi), rho * std::sin(phi), z);
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  if (best_i >= 0) {
    const double z = 1.0 - (2.0 * best_i + 1.0) / static_cast<double>(total);
    const double rho = std::sqrt(std::max(1.0 - z * z, 0.0));
    const double phi = static_cast<double>(best_i) * golden_angle;
    best_p = bloch_projection(rho * std::cos(phi), rho * std::sin(phi), z);
  }

  long evaluated = total + 2;
  try {
    Projection as_projection = validate_projection(q.matrix());
    ++evaluated;
    const double d_self = (as_projection.matrix().eigen() - q.matrix().eigen()).squaredNorm();
    if (d_self < best) {
      best = d_self;
      best_p = as_projection.matrix().eigen();
    }
  } catch (const ValidationError&) {
    // Q is a genuine non-projection; the grid candidates stand.
  }

  Projection winner = validate_projection(ComplexMatrix(std::move(best_p)));
  const double distance = (winner.matrix().eigen() - q.matrix().eigen()).norm();
  return OracleResult{distance, std::move(winner), evaluated, OracleMethod::grid2};
}

std::pair<OracleResult, OracleResult> sampled_extrema(const Idempotent& q, long num_samples,
                                                      std::uint64_t seed) {
  const Eigen::Index n = q.dim();
  if (n > 8) {
    throw ValidationError("sampled_extrema: dimension " + std::to_string(n) + " above 8");
  }
  if (num_samples < 1000) {
    throw ValidationError("sampled_extrema: need at least 1000 samples");
  }
  const Eigen::MatrixXcd& qm = q.matrix().eigen();

  Projection m_q = matched_projection(q);
  Projection p_range = range_projection(q);
  const double min_bound = matched_distance(q);
  const double max_bound = (Eigen::MatrixXcd::Identity(n, n) - m_q.matrix().eigen() - qm).norm();

  struct Tracker {
    double distance;
    Projection projection;
  };
  auto measure = [&](const Projection& p) { return (p.matrix().eigen() - qm).norm(); };

  Tracker best_min{measure(m_q), m_q};
  Tracker best_max{best_min.distance, m_q};
  long evaluated = 0;
  auto offer = [&](Projection p) {
    const double d = measure(p);
    ++evaluated;
    if (d < best_min.distance) best_min = Tracker{d, p};
    if (d > best_max.distance) best_max = Tracker{d, std::move(p)};
  };

  offer(m_q);
  offer(m_q.complement());
  offer(p_range);
  offer(p_range.complement());

  std::mt19937_64 rng(seed);
  for (long s = 0; s < num_samples; ++s) {
    const int r = static_cast<int>(s % (n + 1));
    offer(detail::random_projection(n, r, rng));
  }

  if (best_min.distance < min_bound - 1e-9) {
    throw NumericError("sampled_extrema: sample at distance " + format_value(best_min.distance) +
                       " beats the matched-projection minimum " + format_value(min_bound));
  }
  if (best_max.distance > max_bound + 1e-9) {
    throw NumericError("sampled_extrema: sample at distance " + format_value(best_max.distance) +
                       " beats the complement maximum " + format_value(max_bound));
  }
  OracleResult min_result{best_min.distance, std::move(best_min.projection), evaluated,
                          OracleMethod::sampled};
  OracleResult max_result{best_max.distance, std::move(best_max.projection), evaluated,
                          OracleMethod::sampled};
  return {std::move(min_result), std::move(max_result)};
}

}  // namespace projdist
