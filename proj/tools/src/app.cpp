#include "sepgamma/cli/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sepgamma/baselines.hpp"
#include "sepgamma/cli/json_io.hpp"
#include "sepgamma/cli/selftest.hpp"
#include "sepgamma/cli/verify.hpp"
#include "sepgamma/errors.hpp"

namespace sepgamma::cli {

namespace {

void add_config_options(CLI::App* cmd, SearchConfig& c) {
  cmd->add_option("--restarts", c.restarts, "Independent search restarts")->capture_default_str();
  cmd->add_option("--max-iters", c.max_iters, "Iteration budget per restart")->capture_default_str();
  cmd->add_option("--step-init", c.step_init, "Initial perturbation size")->capture_default_str();
  cmd->add_option("--step-shrink", c.step_shrink, "Step shrink factor in (0,1)")->capture_default_str();
  cmd->add_option("--rank-padding", c.rank_padding, "Extra zero terms in the search")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Base seed for restarts")->capture_default_str();
  cmd->add_option("--entangled-tol", c.entangled_tol, "Margin above 1 that proves entanglement")->capture_default_str();
  cmd->add_option("--sep-tol", c.sep_tol, "Cost margin accepted as separable")->capture_default_str();
  cmd->add_option("--sep-reconstruction-tol", c.sep_reconstruction_tol,
                  "Trace-norm error allowed in product terms")->capture_default_str();
  cmd->add_option("--convergence-tol", c.convergence_tol, "Stop when cost improves less")->capture_default_str();
}

unsigned thread_cap() {
  const char* env = std::getenv("SEPGAMMA_THREADS");
  if (env == nullptr || *env == '\0') return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) {
    throw InputError("SEPGAMMA_THREADS must be a positive integer, got \"" + std::string(env) + "\"");
  }
  return static_cast<unsigned>(n);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

RandomKind parse_kind(const std::string& kind) {
  if (kind == "pure") return RandomKind::Pure;
  if (kind == "mixed_hs") return RandomKind::MixedHs;
  if (kind == "separable") return RandomKind::Separable;
  throw InputError("unknown --kind \"" + kind + "\" (pure|mixed_hs|separable)");
}

struct GenArgs {
  std::string family;
  double p = -1.0;
  Index d = 2;
  Index d1 = 2;
  Index d2 = 2;
  std::string kind = "mixed_hs";
  Index k = 4;
  Index rank = 0;
  Index factor_rank = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string provenance_out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  std::optional<WitnessedState> ws;
  if (a.family == "werner") {
    if (a.p < 0.0) throw InputError("gen werner requires --p in [0, 1]");
    ws = WitnessedState{werner(a.p), std::nullopt};
  } else if (a.family == "bell") {
    ws = WitnessedState{bell_state(), std::nullopt};
  } else if (a.family == "max_entangled") {
    ws = WitnessedState{max_entangled(a.d), std::nullopt};
  } else if (a.family == "random") {
    if (a.d1 * a.d2 > 256) throw InputError("d1*d2 must not exceed 256");
    RandomSpec spec;
    spec.seed = a.seed;
    spec.kind = parse_kind(a.kind);
    spec.rank = a.rank;
    spec.terms = a.k;
    spec.factor_rank = a.factor_rank;
    ws = random_state(spec, BipartiteDims(a.d1, a.d2));
  } else {
    throw InputError("unknown family \"" + a.family + "\" (werner|bell|max_entangled|random)");
  }
  if (!a.provenance_out.empty()) {
    if (!ws->provenance) throw InputError("--provenance-out needs a separable random state");
    write_text(a.provenance_out, dump(separable_to_json(*ws->provenance)), out);
  }
  write_text(a.out, dump(state_to_json(ws->state)), out);
  return kExitOk;
}

int cmd_bounds(const std::string& in, const SearchConfig& config, std::ostream& out) {
  const DensityOperator rho = state_from_json(read_json_file(in));
  const GammaBounds bounds = gamma_bounds(rho, config);
  out << dump(bounds_to_json(bounds, lower_bound_realignment(rho)));
  return kExitOk;
}

int cmd_verify(const std::string& path, std::ostream& out) {
  const VerificationReport report = verify_certificate(read_json_file(path));
  for (const auto& check : report.checks) {
    out << (check.passed ? "[PASS] " : "[FAIL] ") << check.name;
    if (!check.detail.empty()) out << " (" << check.detail << ")";
    out << "\n";
  }
  out << (report.ok ? "certificate verified\n" : "certificate REJECTED\n");
  return report.ok ? kExitOk : kExitCheckFailed;
}

int cmd_certify(const std::string& in, const std::string& seed_dec, const std::string& out_path,
                const SearchConfig& config, std::ostream& out) {
  const DensityOperator rho = state_from_json(read_json_file(in));
  std::optional<ElementaryDecomposition> seed;
  if (!seed_dec.empty()) seed = decomposition_from_json(read_json_file(seed_dec));
  const Certificate cert = certify(rho, config, seed);
  write_text(out_path, dump(certificate_to_json(cert, rho, config)), out);
  return kExitOk;
}

struct SweepArgs {
  std::string family;
  std::string range = "0:1";
  int steps = 21;
  std::string out;
};

std::pair<double, double> parse_range(const std::string& text) {
  const auto sep = text.find_first_of(":,");
  if (sep == std::string::npos) throw InputError("--param-range must look like LO:HI");
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const std::string lo_text = text.substr(0, sep);
    const std::string hi_text = text.substr(sep + 1);
    const double lo = std::stod(lo_text, &used_lo);
    const double hi = std::stod(hi_text, &used_hi);
    if (used_lo != lo_text.size() || used_hi != hi_text.size()) throw std::invalid_argument("");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InputError("--param-range must look like LO:HI, got \"" + text + "\"");
  }
}

int cmd_sweep(const SweepArgs& a, const SearchConfig& config, std::ostream& out) {
  if (a.family != "werner") throw InputError("sweep supports the werner family only");
  const auto [lo, hi] = parse_range(a.range);
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) throw InputError("werner range must lie in [0, 1]");
  if (a.steps < 1) throw InputError("--steps must be >= 1");

  std::ostringstream csv;
  csv << "param,gamma_lower,gamma_upper,measure_lo,measure_hi,ppt_min_eig,verdict\n";
  for (int i = 0; i < a.steps; ++i) {
    const double p = a.steps == 1 ? lo : (lo * (a.steps - 1 - i) + hi * i) / (a.steps - 1);
    const DensityOperator rho = werner(p);
    Certificate cert = certify(rho, config);
    if (!cert.bounds.upper) cert.bounds.upper = upper_bound_search(rho, config).cost;
    const MeasureInterval measure = measure_from_bounds(cert.bounds);
    csv << format_double(p) << ',' << format_double(cert.bounds.lower) << ','
        << format_double(*cert.bounds.upper) << ',' << format_double(measure.lo) << ','
        << format_double(*measure.hi) << ',' << format_double(ppt_check(rho).min_eigenvalue)
        << ',' << to_string(cert.verdict) << '\n';
  }
  write_text(a.out, csv.str(), out);
  return kExitOk;
}

int cmd_selftest(bool corrupt, std::ostream& out) {
  const auto results = run_selftest({corrupt});
  int failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << std::left << std::setw(52) << r.name << ' '
        << std::right << std::fixed << std::setprecision(1) << std::setw(8) << r.millis << " ms";
    if (!r.passed) out << "  " << r.detail;
    out << '\n';
    failed += r.passed ? 0 : 1;
  }
  out << results.size() - static_cast<std::size_t>(failed) << "/" << results.size()
      << " properties passed\n";
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds and separability certificates from the greatest cross norm", "sepgamma"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a state file");
  gen_cmd->add_option("family", gen.family, "werner | bell | max_entangled | random")->required();
  gen_cmd->add_option("--p", gen.p, "Werner singlet weight in [0, 1]");
  gen_cmd->add_option("--d", gen.d, "Local dimension for max_entangled")->capture_default_str();
  gen_cmd->add_option("--d1", gen.d1, "First factor dimension (random)")->capture_default_str();
  gen_cmd->add_option("--d2", gen.d2, "Second factor dimension (random)")->capture_default_str();
  gen_cmd->add_option("--kind", gen.kind, "pure | mixed_hs | separable")->capture_default_str();
  gen_cmd->add_option("--k", gen.k, "Product terms (separable)")->capture_default_str();
  gen_cmd->add_option("--rank", gen.rank, "Ginibre rank (mixed_hs), 0 = full")->capture_default_str();
  gen_cmd->add_option("--factor-rank", gen.factor_rank, "Factor rank (separable), 0 = full")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Sampler seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");
  gen_cmd->add_option("--provenance-out", gen.provenance_out,
                      "Write the separable decomposition of a random separable state");

  SearchConfig config;
  std::string in_path;
  auto* bounds_cmd = app.add_subcommand("bounds", "Print lower and upper bounds as JSON");
  bounds_cmd->add_option("--in", in_path, "State file")->required();
  add_config_options(bounds_cmd, config);

  std::string seed_dec, cert_out, verify_path;
  auto* certify_cmd = app.add_subcommand("certify", "Write a separability certificate");
  certify_cmd->add_option("--in", in_path, "State file");
  certify_cmd->add_option("--seed-dec", seed_dec, "Starting decomposition file");
  certify_cmd->add_option("--out", cert_out, "Certificate path (default stdout)");
  certify_cmd->add_option("--verify", verify_path, "Re-check an existing certificate file");
  add_config_options(certify_cmd, config);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Scan a state family and write CSV");
  sweep_cmd->add_option("family", sweep.family, "werner")->required();
  sweep_cmd->add_option("--param-range", sweep.range, "LO:HI")->capture_default_str();
  sweep_cmd->add_option("--steps", sweep.steps, "Grid points")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "CSV path (default stdout)");
  add_config_options(sweep_cmd, config);

  bool corrupt = false;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in property checks");
  selftest_cmd->add_flag("--corrupt-realignment", corrupt)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    config.threads = thread_cap();
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*selftest_cmd) return cmd_selftest(corrupt, out);
    validate(config);
    if (*bounds_cmd) return cmd_bounds(in_path, config, out);
    if (*certify_cmd) {
      if (!verify_path.empty()) return cmd_verify(verify_path, out);
      if (in_path.empty()) throw InputError("certify requires --in (or --verify)");
      return cmd_certify(in_path, seed_dec, cert_out, config, out);
    }
    if (*sweep_cmd) return cmd_sweep(sweep, config, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumericError;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace sepgamma::cli
