// Acceptance gate: runs the ten release criteria and prints one line each.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "sepgamma/baselines.hpp"
#include "sepgamma/cli/app.hpp"
#include "sepgamma/cli/json_io.hpp"
#include "sepgamma/crossnorm.hpp"
#include "sepgamma/errors.hpp"
#include "sepgamma/random.hpp"

using namespace sepgamma;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ += ok ? 0 : 1;
  }
  Outcome finish(std::string summary) const {
    std::ostringstream s;
    s << summary << "; " << checks_ - failed_ << "/" << checks_ << " checks";
    for (const auto& f : failures_) s << "\n        - " << f;
    return {failed_ == 0, s.str()};
  }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

std::string num(double x) { return cli::format_double(x); }

DensityOperator random_kind(std::uint64_t seed, RandomKind kind, const BipartiteDims& dims, Index terms = 4,
                            Index factor_rank = 0) {
  RandomSpec spec;
  spec.seed = seed;
  spec.kind = kind;
  spec.terms = terms;
  spec.factor_rank = factor_rank;
  return random_state(spec, dims).state;
}

WitnessedState random_separable(std::uint64_t seed, const BipartiteDims& dims, Index terms, Index factor_rank = 0) {
  RandomSpec spec;
  spec.seed = seed;
  spec.kind = RandomKind::Separable;
  spec.terms = terms;
  spec.factor_rank = factor_rank;
  return random_state(spec, dims);
}

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome bound_ordering() {
  const SearchConfig config;
  Tally t;
  int with_upper = 0;
  auto sample = [&](const BipartiteDims& dims, int count, std::uint64_t base) {
    for (int i = 0; i < count; ++i) {
      const DensityOperator rho = random_kind(base + static_cast<std::uint64_t>(i), RandomKind::MixedHs, dims);
      const Certificate cert = certify(rho, config);
      t.expect(cert.bounds.lower >= 1.0, "lower below 1");
      if (!cert.bounds.upper) continue;
      ++with_upper;
      t.expect(cert.bounds.lower <= *cert.bounds.upper + 1e-6,
               "seed " + std::to_string(base + static_cast<std::uint64_t>(i)) + ": lower " + num(cert.bounds.lower) +
                   " > upper " + num(*cert.bounds.upper));
    }
  };
  sample(BipartiteDims(2, 2), 1000, 1'000'000);
  sample(BipartiteDims(3, 3), 200, 2'000'000);
  return t.finish("1200 certificates, " + std::to_string(with_upper) + " with an upper bound");
}

Outcome cost_floor() {
  const SearchConfig config;
  Rng rng(424242);
  Tally t;
  double lowest = 1e300;
  for (int i = 0; i < 1000; ++i) {
    const BipartiteDims dims = i % 3 == 0 ? BipartiteDims(2, 2) : (i % 3 == 1 ? BipartiteDims(2, 3) : BipartiteDims(3, 3));
    std::optional<ElementaryDecomposition> dec;
    if (i % 2 == 0) {
      const Index rank = 1 + static_cast<Index>(uniform01(rng) * static_cast<double>(dims.composite()));
      const DensityOperator rho =
          DensityOperator::from_matrix(random_density_matrix(dims.composite(), rank, rng), dims);
      const ElementaryDecomposition base = to_elementary(operator_schmidt(rho.matrix(), dims), dims);
      const auto n = static_cast<Index>(base.size());
      dec = mix(base, ginibre(n, n, rng));
    } else {
      // Small mixings of an exact separable decomposition probe the floor
      // from just above.
      const WitnessedState ws =
          random_separable(8'000'000 + static_cast<std::uint64_t>(i), dims, 1 + i % 6, i % 4 == 1 ? 1 : 0);
      const ElementaryDecomposition base = to_elementary(*ws.provenance);
      const auto n = static_cast<Index>(base.size());
      const double eps = std::pow(10.0, -1.0 - 7.0 * uniform01(rng));
      dec = mix(base, ComplexMatrix::Identity(n, n) + eps * ginibre(n, n, rng));
    }
    const double cost = decomposition_cost(*dec);
    lowest = std::min(lowest, cost);
    t.expect(cost >= 1.0 - 1e-9, "cost " + num(cost));
    if (i % 10 == 0) {
      const DensityOperator rebuilt = DensityOperator::from_matrix(reconstruct(*dec), dims);
      t.expect(lower_bound_realignment(rebuilt).value >= 1.0, "realignment value below 1");
      t.expect(lower_bound_witness(rebuilt, config).value >= 1.0, "witness value below 1");
      t.expect(certify(rebuilt, config).bounds.lower >= 1.0, "certificate lower below 1");
    }
  }
  return t.finish("lowest cost - 1 = " + num(lowest - 1.0));
}

Outcome bell_anchor() {
  const SearchConfig config;
  const DensityOperator bell = bell_state();
  Tally t;
  const double realign = lower_bound_realignment(bell).value;
  const double witness = lower_bound_witness(bell, config).value;
  const double upper = upper_bound_search(bell, config).cost;
  const Certificate cert = certify(bell, config);
  t.expect(std::abs(realign - 2.0) <= 1e-9, "realignment " + num(realign));
  t.expect(witness >= 2.0 - 1e-6, "witness " + num(witness));
  t.expect(upper <= 2.0 + 1e-2, "upper " + num(upper));
  t.expect(cert.verdict == Verdict::Entangled, "verdict " + std::string(to_string(cert.verdict)));
  return t.finish("realignment " + num(realign) + ", witness " + num(witness) + ", upper " + num(upper));
}

Outcome pure_tightness() {
  Rng rng(777);
  Tally t;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Index d = 2 + i % 3;
    const BipartiteDims dims(d, d);
    const ComplexVector psi = random_unit_vector(d * d, rng);
    const DensityOperator rho = pure_density(psi, dims);
    const ElementaryDecomposition dec = pure_state_decomposition(psi, dims);
    const double cost = decomposition_cost(dec);
    const double realign = lower_bound_realignment(rho).value;
    const double closed = pure_gamma(psi, dims);
    const double recon = trace_norm(reconstruct(dec) - rho.matrix());
    const double gap = std::max({std::abs(cost - realign), std::abs(cost - closed), std::abs(realign - closed)});
    worst = std::max(worst, gap);
    t.expect(gap <= 1e-9, "d=" + std::to_string(d) + " gap " + num(gap));
    t.expect(recon <= 1e-9, "reconstruction " + num(recon));
  }
  return t.finish("largest pairwise gap " + num(worst));
}

Outcome werner_sweep() {
  const std::string path = (fs::temp_directory_path() / ("sepgamma_accept_sweep_" + std::to_string(::getpid()) + ".csv")).string();
  Tally t;
  const int code = run_cli({"sweep", "werner", "--param-range", "0:1", "--steps", "21", "--out", path});
  t.expect(code == cli::kExitOk, "sweep exit code " + std::to_string(code));
  std::istringstream lines(slurp(path));
  fs::remove(path);
  std::string line;
  std::getline(lines, line);
  t.expect(line == "param,gamma_lower,gamma_upper,measure_lo,measure_hi,ppt_min_eig,verdict", "header " + line);
  int rows = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> c;
    std::istringstream cs(line);
    for (std::string cell; std::getline(cs, cell, ',');) c.push_back(cell);
    if (c.size() != 7) {
      t.expect(false, "malformed row " + line);
      continue;
    }
    ++rows;
    const double p = std::stod(c[0]);
    const double lower = std::stod(c[1]);
    const double ppt = std::stod(c[5]);
    const std::string& verdict = c[6];
    if (p <= 1.0 / 3.0) {
      t.expect(lower == 1.0, "p=" + c[0] + " lower " + c[1]);
      t.expect(verdict != "Entangled", "p=" + c[0] + " Entangled");
    } else {
      t.expect(std::abs(lower - (1.0 + 3.0 * p) / 2.0) <= 1e-9, "p=" + c[0] + " lower " + c[1]);
    }
    if (p >= 0.4 - 1e-12) t.expect(verdict == "Entangled", "p=" + c[0] + " verdict " + verdict);
    t.expect(std::abs(ppt - (1.0 - 3.0 * p) / 4.0) <= 1e-9, "p=" + c[0] + " ppt " + c[5]);
  }
  t.expect(rows == 21, "rows " + std::to_string(rows));
  return t.finish(std::to_string(rows) + " grid points");
}

Outcome seeded_separability() {
  const SearchConfig config;
  Tally t;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const BipartiteDims dims = i % 2 == 0 ? BipartiteDims(2, 2) : BipartiteDims(3, 3);
    const WitnessedState ws =
        random_separable(5000 + static_cast<std::uint64_t>(i), dims, 1 + i % 6, i % 4 == 3 ? 1 : 0);
    const Certificate cert = certify(ws.state, config, to_elementary(*ws.provenance));
    t.expect(cert.verdict == Verdict::Separable, "case " + std::to_string(i) + " " + std::string(to_string(cert.verdict)));
    if (cert.verdict != Verdict::Separable) continue;
    try {
      validate(*cert.separable);
      t.expect(true, "");
    } catch (const Error& e) {
      t.expect(false, e.what());
    }
    worst = std::max(worst, *cert.reconstruction_error);
    t.expect(*cert.reconstruction_error <= 1e-8, "error " + num(*cert.reconstruction_error));
  }
  return t.finish("worst reconstruction error " + num(worst));
}

Outcome soundness() {
  const SearchConfig config;
  Tally t;
  int npt = 0, undecided_npt = 0;
  for (std::uint64_t seed = 9'000'000; npt < 500; ++seed) {
    const DensityOperator rho = random_kind(seed, RandomKind::MixedHs, BipartiteDims(2, 2));
    if (ppt_check(rho).min_eigenvalue >= -1e-6) continue;
    ++npt;
    const Verdict v = certify(rho, config).verdict;
    undecided_npt += v == Verdict::Undecided ? 1 : 0;
    t.expect(v != Verdict::Separable, "NPT seed " + std::to_string(seed) + " certified Separable");
  }
  int separable = 0, undecided_sep = 0;
  for (int i = 0; i < 500; ++i) {
    const WitnessedState ws =
        random_separable(7'000'000 + static_cast<std::uint64_t>(i), BipartiteDims(2, 2), 1 + i % 6, i % 5 == 4 ? 1 : 0);
    const Verdict v = certify(ws.state, config).verdict;
    separable += v == Verdict::Separable ? 1 : 0;
    undecided_sep += v == Verdict::Undecided ? 1 : 0;
    t.expect(v != Verdict::Entangled, "separable case " + std::to_string(i) + " certified Entangled");
  }
  return t.finish("500 NPT (" + std::to_string(undecided_npt) + " Undecided), 500 separable (" +
                  std::to_string(separable) + " Separable, " + std::to_string(undecided_sep) + " Undecided)");
}

Outcome invariance() {
  Rng rng(31337);
  Tally t;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const BipartiteDims dims = i % 2 == 0 ? BipartiteDims(2, 2) : BipartiteDims(3, 3);
    const DensityOperator rho = DensityOperator::from_matrix(random_density_matrix(dims.composite(), 0, rng), dims);
    const ComplexMatrix w = kron(haar_unitary(dims.d1(), rng), haar_unitary(dims.d2(), rng));
    ComplexMatrix moved = w * rho.matrix() * w.adjoint();
    moved = 0.5 * (moved + moved.adjoint());
    const DensityOperator rotated = DensityOperator::from_matrix(moved, dims);
    const RealignmentBound a = lower_bound_realignment(rho);
    const RealignmentBound b = lower_bound_realignment(rotated);
    const double gap = std::max(std::abs(a.value - b.value), std::abs(a.raw - b.raw));
    worst = std::max(worst, gap);
    t.expect(gap <= 1e-9, "gap " + num(gap));
  }
  return t.finish("largest difference " + num(worst));
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / ("sepgamma_accept_det_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  Tally t;
  const char* previous = std::getenv("SEPGAMMA_THREADS");
  const std::string saved = previous ? previous : "";

  std::vector<std::string> inputs;
  auto gen = [&](std::vector<std::string> args, const std::string& name) {
    const std::string path = (dir / name).string();
    args.insert(args.end(), {"--out", path});
    t.expect(run_cli(args) == cli::kExitOk, "gen " + name);
    inputs.push_back(path);
  };
  gen({"gen", "bell"}, "bell.json");
  gen({"gen", "random", "--kind", "mixed_hs", "--seed", "11"}, "mixed.json");
  gen({"gen", "random", "--kind", "separable", "--k", "3", "--seed", "12"}, "sep22.json");
  gen({"gen", "random", "--kind", "separable", "--k", "4", "--d1", "2", "--d2", "3", "--seed", "13"}, "sep23.json");
  gen({"gen", "random", "--kind", "mixed_hs", "--d1", "2", "--d2", "3", "--seed", "14"}, "mixed23.json");

  int compared = 0;
  for (const auto& in : inputs) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "4", "4"}) {
      ::setenv("SEPGAMMA_THREADS", threads, 1);
      const std::string out = (dir / ("cert_" + std::to_string(outputs.size()) + ".json")).string();
      t.expect(run_cli({"certify", "--in", in, "--seed", "5", "--out", out}) == cli::kExitOk, "certify " + in);
      outputs.push_back(slurp(out));
    }
    for (std::size_t k = 1; k < outputs.size(); ++k) {
      t.expect(!outputs[0].empty() && outputs[k] == outputs[0], fs::path(in).filename().string() + " run " +
                                                                    std::to_string(k) + " differs");
    }
    ++compared;
  }
  if (previous) {
    ::setenv("SEPGAMMA_THREADS", saved.c_str(), 1);
  } else {
    ::unsetenv("SEPGAMMA_THREADS");
  }
  fs::remove_all(dir);
  return t.finish(std::to_string(compared) + " inputs, runs at SEPGAMMA_THREADS 1,1,4,4");
}

Outcome blind_progress() {
  const SearchConfig config;
  Tally t;
  int reached = 0;
  int separable = 0;
  for (int i = 0; i < 50; ++i) {
    const WitnessedState ws = random_separable(3'000'000 + static_cast<std::uint64_t>(i), BipartiteDims(2, 2), 1 + i % 6);
    const UpperBound ub = upper_bound_search(ws.state, config);
    t.expect(ub.cost <= ub.initial_cost, "case " + std::to_string(i) + ": " + num(ub.cost) + " > " + num(ub.initial_cost));
    reached += ub.cost <= 1.1 ? 1 : 0;
    const Verdict v = certify(ws.state, config).verdict;
    separable += v == Verdict::Separable ? 1 : 0;
    t.expect(v != Verdict::Entangled, "case " + std::to_string(i) + " certified Entangled");
  }
  t.expect(reached * 100 >= 80 * 50, "only " + std::to_string(reached) + "/50 reached 1.1");
  return t.finish(std::to_string(reached) + "/50 reached cost <= 1.1, " + std::to_string(separable) + " Separable");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"bound ordering", bound_ordering},
      {"cost floor", cost_floor},
      {"Bell anchor", bell_anchor},
      {"pure-state tightness", pure_tightness},
      {"Werner sweep", werner_sweep},
      {"seeded separability", seeded_separability},
      {"soundness vs PPT", soundness},
      {"local-unitary invariance", invariance},
      {"determinism", determinism},
      {"blind-search progress", blind_progress},
  };

  int failed = 0;
  const auto all_start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.passed ? 0 : 1;
    std::printf("[%s] criterion %2zu  %-26s %7.2fs  %s\n", o.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - all_start).count();
  std::printf("%zu/%zu criteria passed in %.1fs\n", criteria.size() - static_cast<std::size_t>(failed),
              criteria.size(), total);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
