// Command-line front end: analysis reports, prescribed-distance construction,
// property-suite verification, and the closed-form example families.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "projdist/bounds.hpp"
#include "projdist/idempotent.hpp"
#include "projdist/io.hpp"
#include "projdist/linalg.hpp"
#include "projdist/matched.hpp"
#include "projdist/range.hpp"
#include "projdist/verify.hpp"

namespace {

using nlohmann::json;
using namespace projdist;

json gram_eigenvalues_json(const Idempotent& q) {
  // Nonzero spectrum of QQ*, descending: the squares of the rank-many
  // leading singular values of Q.
  SvdResult dec = svd(q.matrix());
  json values = json::array();
  for (int i = 0; i < q.rank(); ++i) {
    const double s = dec.singular_values[static_cast<std::size_t>(i)];
    values.push_back(format_real(s * s));
  }
  return values;
}

json bound_report_json(const BoundReport& r) {
  return json{
      {"distance", format_real(r.distance)},
      {"lambda", format_real(r.lambda_pq)},
      {"lower_ok", r.lower_ok},
      {"lower_tight", r.lower_tight},
      {"pinv_coefficient", format_real(r.pinv_coefficient)},
      {"pinv_distance", format_real(r.pinv_distance)},
      {"pinv_ok", r.pinv_ok},
      {"upper_ok", r.upper_ok},
      {"upper_tight", r.upper_tight},
  };
}

int run_analyze(const std::string& input_path, const std::string& projection_path,
                const std::string& output_path) {
  ComplexMatrix m = read_matrix_file(input_path);
  Idempotent q = validate_idempotent(m);
  MatchedResult result = analyze(q);

  const double residual =
      frobenius_norm(ComplexMatrix(m.eigen() * m.eigen() - m.eigen()));
  json report{
      {"gram_eigenvalues", gram_eigenvalues_json(q)},
      {"input", matrix_to_json(m)},
      {"input_digest",
       {{"dimension", q.dim()},
        {"idempotency_residual", format_real(residual)},
        {"rank", q.rank()}}},
      {"invariant_constant", format_real(result.invariant_constant)},
      {"lambda1", format_real(result.lambda1)},
      {"lambda2", format_real(result.lambda2)},
      {"matched_projection", matrix_to_json(result.m_q.matrix())},
      {"max_distance", format_real(result.max_distance)},
      {"min_distance", format_real(result.min_distance)},
  };
  if (!projection_path.empty()) {
    Projection p = validate_projection(read_matrix_file(projection_path));
    report["bound_report"] = bound_report_json(check_bounds(p, q));
  }
  write_text_file(output_path, report.dump(2) + "\n");
  std::printf("analyze: n=%lld rank=%d min=%s max=%s -> %s\n",
              static_cast<long long>(q.dim()), q.rank(),
              format_real(result.min_distance).c_str(),
              format_real(result.max_distance).c_str(), output_path.c_str());
  return 0;
}

int run_construct(const std::string& input_path, double alpha, double tol,
                  const std::string& output_path) {
  Idempotent q = validate_idempotent(read_matrix_file(input_path));
  PathPoint point = construct_at_distance(q, alpha, tol);
  write_matrix_file(output_path, point.projection.matrix());
  json sidecar{
      {"achieved_distance", format_real(point.achieved_distance)},
      {"path_index", point.path_index},
      {"segment", segment_name(point.segment)},
      {"t", format_real(point.t)},
  };
  write_text_file(output_path + ".sidecar", sidecar.dump() + "\n");
  std::printf("construct: alpha=%s achieved=%s segment=%s -> %s\n",
              format_real(alpha).c_str(),
              format_real(point.achieved_distance).c_str(),
              segment_name(point.segment), output_path.c_str());
  return 0;
}

int run_verify(std::uint64_t seed, int trials, int max_dim, bool self_test_fail) {
  std::vector<verify::SuiteResult> results;
  if (self_test_fail) {
    results.push_back(verify::forced_failure());
  } else {
    results = verify::run_all(verify::Scale{seed, trials, max_dim});
  }
  json failures = json::array();
  for (const verify::SuiteResult& r : results) {
    std::printf("%s %-36s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.message.c_str());
    if (!r.passed) {
      json matrices = json::object();
      for (const auto& [name, matrix] : r.counterexample) {
        matrices[name] = matrix_to_json(matrix);
      }
      failures.push_back(
          json{{"counterexample", matrices}, {"message", r.message}, {"suite", r.name}});
    }
  }
  if (!failures.empty()) {
    std::printf("%s\n", json{{"failures", failures}}.dump().c_str());
    return 3;
  }
  std::printf("all %zu suites passed\n", results.size());
  return 0;
}

int run_family(const std::string& name, double a, int n, const std::string& output_path) {
  json sidecar{{"family", name}};
  if (name == "qa") {
    Idempotent q = q_family(a);
    write_matrix_file(output_path, q.matrix());
    const double s = std::sqrt(1.0 + a * a);
    sidecar["parameters"] = json{{"a", format_real(a)}};
    sidecar["expected"] = json{
        {"gram_eigenvalues", json::array({format_real(1.0 + a * a)})},
        {"invariant_constant", format_real(2.0 + 2.0 * a * a)},
        {"lambda1", format_real(a)},
        {"lambda2", format_real(std::sqrt(a * a + 2.0))},
        {"max_distance", format_real(std::sqrt(1.0 + a * a + s))},
        {"min_distance", format_real(std::sqrt(1.0 + a * a - s))},
    };
  } else {
    DrazinFamily fam = drazin_family(n, a);
    write_matrix_file(output_path, fam.a);
    write_matrix_file(output_path + ".q", fam.q.matrix());
    // AA^d = Q for this family (A^3 = A^2), so the gap ‖AA† - AA^d‖_F is
    // reproducible as the bound-report distance of (P = AA†, Q).
    Projection aa_dag = validate_projection(column_space_projection(fam.a));
    write_matrix_file(output_path + ".p", aa_dag.matrix());

    const double a2 = a * a;
    const double e1 = (2.0 + 3.0 * a2 + std::sqrt(5.0) * a2) / 2.0;
    const double e2 = (2.0 + 3.0 * a2 - std::sqrt(5.0) * a2) / 2.0;
    const double b = e1 - std::sqrt(e1) + e2 - std::sqrt(e2);
    const double min_sq = b + (2.0 * n - 2.0) * (1.0 + a2 - std::sqrt(1.0 + a2));
    const double lambda1_sq = (2.0 * n + 1.0) * a2;
    const double invariant = 4.0 * n + 2.0 * (2.0 * n + 1.0) * a2;
    json eigenvalues = json::array({format_real(e1)});
    for (int i = 0; i < 2 * n - 2; ++i) eigenvalues.push_back(format_real(1.0 + a2));
    eigenvalues.push_back(format_real(e2));
    sidecar["parameters"] = json{{"a", format_real(a)}, {"n", n}};
    sidecar["expected"] = json{
        {"drazin_gap_sq", format_real(1.0 + lambda1_sq)},
        {"gram_eigenvalues", eigenvalues},
        {"invariant_constant", format_real(invariant)},
        {"lambda1", format_real(std::sqrt(lambda1_sq))},
        {"lambda2", format_real(std::sqrt(lambda1_sq + 4.0 * n))},
        {"max_distance", format_real(std::sqrt(invariant - min_sq))},
        {"min_distance", format_real(std::sqrt(min_sq))},
    };
  }
  write_text_file(output_path + ".sidecar", sidecar.dump() + "\n");
  std::printf("family %s -> %s\n", name.c_str(), output_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matched projections of idempotent matrices"};
  app.require_subcommand(1);

  std::string input_path, projection_path, output_path;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "distance report for an idempotent matrix");
  analyze_cmd->add_option("--input", input_path, "MatrixFile holding the idempotent Q")
      ->required();
  analyze_cmd->add_option("--projection", projection_path,
                          "optional MatrixFile holding a projection P covering Q");
  analyze_cmd->add_option("--output", output_path, "report destination")->required();

  double alpha = 0.0, tol = 1e-8;
  CLI::App* construct_cmd =
      app.add_subcommand("construct", "projection at a prescribed distance from Q");
  construct_cmd->add_option("--input", input_path, "MatrixFile holding the idempotent Q")
      ->required();
  construct_cmd->add_option("--alpha", alpha, "target Frobenius distance")->required();
  construct_cmd->add_option("--tol", tol, "bisection tolerance (default 1e-8)");
  construct_cmd->add_option("--output", output_path, "projection destination")->required();

  std::int64_t seed = 42;
  int trials = 200, max_dim = 6;
  bool self_test_fail = false;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run every property suite");
  verify_cmd->add_option("--seed", seed, "RNG seed (default 42)");
  verify_cmd->add_option("--trials", trials, "samples per suite (default 200)")
      ->check(CLI::Range(1, 1000000));
  verify_cmd->add_option("--max-dim", max_dim, "largest matrix dimension (default 6)")
      ->check(CLI::Range(2, 8));
  verify_cmd->add_flag("--self-test-fail", self_test_fail,
                       "report a forced failure to exercise the failure path")
      ->group("");

  std::string family_name;
  double family_a = 1.0;
  int family_n = 1;
  CLI::App* family_cmd = app.add_subcommand("family", "materialize an example family");
  family_cmd->add_option("--name", family_name, "family name: qa or drazin")
      ->required()
      ->check(CLI::IsMember({"qa", "drazin"}));
  family_cmd->add_option("--a", family_a, "family parameter a (default 1)");
  family_cmd->add_option("--n", family_n, "family parameter n (drazin only, default 1)");
  family_cmd->add_option("--output", output_path, "matrix destination")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors are validation failures
  }

  try {
    if (analyze_cmd->parsed()) return run_analyze(input_path, projection_path, output_path);
    if (construct_cmd->parsed()) return run_construct(input_path, alpha, tol, output_path);
    if (verify_cmd->parsed()) {
      return run_verify(static_cast<std::uint64_t>(seed), trials, max_dim, self_test_fail);
    }
    return run_family(family_name, family_a, family_n, output_path);
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 2;
  } catch (const RangeError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
}
