#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "kplane/errors.hpp"
#include "kplane/flow.hpp"
#include "kplane/io.hpp"
#include "kplane/operators.hpp"
#include "kplane/parallel.hpp"
#include "kplane/special.hpp"
#include "kplane/verify.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Config {
  int k = 1;
  int d = 3;
  std::size_t grid = 2048;
  std::size_t field = 1024;
  std::size_t verify_grid = 512;
  std::size_t iters = 200;
  double tol = 5e-4;
  std::uint64_t seed = 0;
  std::string init = "indicator";
  std::string out;
  std::string format = "text";
  std::uint64_t samples = 1000000;
  std::string suite = "all";
};

int cmd_constant(const Config& c) {
  const kplane::TransformParams params(c.k, c.d);
  const double a = kplane::best_constant(params);
  const double a_gamma = kplane::best_constant_gamma_form(params);
  const auto h = kplane::extremizer_profile(kplane::ExtremizerSpec(params),
                                            kplane::log_grid(1e-4, 1e4, c.grid));
  const double cross = kplane::functional_ratio(h, params, kplane::Exec::parallel) / a;
  if (c.format == "json") {
    nlohmann::json j = {{"k", c.k},          {"d", c.d},
                        {"p", params.p()},   {"q", params.q()},
                        {"A", a},            {"A_gamma_form", a_gamma},
                        {"quadrature_ratio", cross}, {"nodes", c.grid}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("k = %d, d = %d, p = %.17g, q = %.17g\n", c.k, c.d, params.p(), params.q());
    std::printf("A (sphere-area form) = %.17g\n", a);
    std::printf("A (Gamma form)       = %.17g\n", a_gamma);
    std::printf("ratio(h) / A         = %.17g  (%zu nodes)\n", cross, c.grid);
  }
  return kPass;
}

int cmd_iterate(const Config& c) {
  const kplane::TransformParams params(c.k, c.d);
  const auto radii = kplane::log_grid(1e-4, 1e4, c.grid);
  kplane::RadialProfile f0 = [&] {
    if (kplane::is_preset(c.init)) return kplane::preset_profile(c.init, params, radii);
    kplane::ProfileDefaults defaults;
    defaults.d = c.d;
    defaults.tail_exponent = c.k + 1.0;
    return kplane::read_profile(c.init, defaults);
  }();
  if (f0.dim() != c.d) {
    throw kplane::DomainError("profile dimension " + std::to_string(f0.dim()) + " does not match --d");
  }
  kplane::FlowOptions options;
  options.n_rho = options.n_s = c.field;
  options.radii = radii;
  const kplane::ConvergenceReport rep = kplane::competing_iterate(f0, params, c.iters, c.tol, options);
  const std::string summary = kplane::trace_summary_json(rep, c.k, c.d, c.seed, c.init, c.tol, c.iters);
  if (!c.out.empty()) {
    kplane::write_trace_csv(std::filesystem::path(c.out + ".csv"), rep);
    std::FILE* fp = std::fopen((c.out + ".json").c_str(), "w");
    if (!fp) throw kplane::Error("cannot write " + c.out + ".json");
    std::fputs(summary.c_str(), fp);
    std::fputs("\n", fp);
    std::fclose(fp);
    if (rep.final_profile) kplane::write_profile(std::filesystem::path(c.out + "_final.csv"), *rep.final_profile);
  }
  if (c.format == "json") {
    std::cout << summary << "\n";
  } else if (c.format == "csv") {
    kplane::write_trace_csv(std::cout, rep);
  } else {
    std::printf("seed %llu, init %s, %zu iterations\n", static_cast<unsigned long long>(c.seed),
                c.init.c_str(), rep.distances.empty() ? 0 : rep.distances.size() - 1);
    std::printf("converged %s", rep.converged ? "yes" : "no");
    if (rep.converged) std::printf(" at %zu", rep.converged_at);
    std::printf("\nfinal distance to C h %.6e (C = %.6g)\n", rep.final_distance(), rep.amplitude);
    std::printf("distance nonincreasing %s, functional nondecreasing %s\n",
                rep.distance_monotone ? "yes" : "no", rep.ratio_monotone ? "yes" : "no");
  }
  return rep.distance_monotone && rep.ratio_monotone ? kPass : kFail;
}

int cmd_verify(const Config& c) {
  if (!kplane::is_suite(c.suite)) {
    throw CLI::ValidationError("--suite", "unknown suite '" + c.suite + "'");
  }
  kplane::VerifyOptions options;
  options.seed = c.seed;
  options.samples = c.samples;
  options.grid = c.verify_grid;
  options.iters = c.iters;
  const kplane::VerifyReport rep = kplane::run_suite(c.suite, options);
  if (c.format == "json") {
    std::cout << kplane::report_json(rep) << "\n";
  } else {
    std::printf("seed %llu\n", static_cast<unsigned long long>(rep.seed));
    for (const auto& ck : rep.checks) {
      std::printf("%s  %-10s %-42s value %-12.6g tol %-10.3g %s\n", ck.passed ? "PASS" : "FAIL",
                  ck.suite.c_str(), ck.name.c_str(), ck.value, ck.tolerance, ck.detail.c_str());
    }
    std::printf("%s\n", rep.passed() ? "all checks passed" : "some checks FAILED");
  }
  return rep.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  kplane::configure_threads();
  CLI::App app{"k-plane transform extremal problem toolkit"};
  app.require_subcommand(1);
  Config c;

  auto add_kd = [&](CLI::App* sub) {
    sub->add_option("--k", c.k, "plane dimension")->capture_default_str();
    sub->add_option("--d", c.d, "ambient dimension")->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
  };

  auto* constant = app.add_subcommand("constant", "best constant A(k, d)");
  add_kd(constant);
  constant->add_option("--grid", c.grid, "radial nodes for the quadrature cross-check")->capture_default_str();
  add_format(constant, {"text", "json"});

  auto* iterate = app.add_subcommand("iterate", "competing-symmetries flow");
  add_kd(iterate);
  iterate->add_option("--grid", c.grid, "radial profile nodes")->capture_default_str();
  iterate->add_option("--field", c.field, "field cells per axis")->capture_default_str();
  iterate->add_option("--iters", c.iters, "iteration budget")->capture_default_str();
  iterate->add_option("--tol", c.tol, "successive-iterate stopping tolerance")->capture_default_str();
  iterate->add_option("--seed", c.seed, "seed (echoed)")->capture_default_str();
  iterate->add_option("--init", c.init, "h | indicator | gaussian | profile CSV")->capture_default_str();
  iterate->add_option("--out", c.out, "output stem: <out>.csv, <out>.json, <out>_final.csv");
  add_format(iterate, {"text", "json", "csv"});

  auto* verify = app.add_subcommand("verify", "invariant suites");
  verify->add_option("--suite", c.suite, "all | rearrange | lorentz | symmetry | drury | flow")
      ->capture_default_str();
  verify->add_option("--seed", c.seed, "seed (echoed)")->capture_default_str();
  verify->add_option("--samples", c.samples, "Monte Carlo samples")->capture_default_str();
  verify->add_option("--grid", c.verify_grid, "field cells per axis")->capture_default_str();
  verify->add_option("--iters", c.iters, "flow iteration budget")->capture_default_str();
  add_format(verify, {"text", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*constant) return cmd_constant(c);
    if (*iterate) return cmd_iterate(c);
    if (*verify) return cmd_verify(c);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const kplane::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
