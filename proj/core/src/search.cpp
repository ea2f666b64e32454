#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "sepgamma/crossnorm.hpp"
#include "sepgamma/errors.hpp"
#include "sepgamma/random.hpp"
#include "seed_check.hpp"

namespace sepgamma {

namespace {

constexpr double kSeedTolerance = 1e-8;
constexpr double kReconstructionTolerance = 1e-8;

struct RestartResult {
  std::vector<ElementaryTerm> terms;
  double cost = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool reached_floor = false;
};

// Term-wise state of one hill-climbing run. Moves are shears of the mixing
// matrix, G <- (I + c E_ij) G, which act as
//   u_i <- u_i + c u_j,   v_j <- v_j - c v_i
// and leave sum_k u_k (x) v_k invariant while touching two terms only.
class Climber {
 public:
  explicit Climber(std::vector<ElementaryTerm> terms) : terms_(std::move(terms)) {
    const std::size_t n = terms_.size();
    norm_u_.resize(n);
    norm_v_.resize(n);
    scale_u_.resize(n);
    for (std::size_t k = 0; k < n; ++k) refresh(k);
    if (n > 0) {
      trial_u_ = terms_[0].u;
      trial_v_ = terms_[0].v;
    }
  }

  double cost() const {
    double c = 0.0;
    for (std::size_t k = 0; k < terms_.size(); ++k) c += norm_u_[k] * norm_v_[k];
    return c;
  }

  /// One randomized pass over all ordered pairs (i, j), i != j. Returns the
  /// number of accepted moves and the number of proposals made.
  std::pair<int, int> sweep(double step, Rng& rng) {
    int accepted = 0;
    int proposals = 0;
    const std::size_t n = terms_.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || scale_u_[j] == 0.0) continue;
        ++proposals;
        const double ratio = scale_u_[i] > 0.0 ? scale_u_[i] / scale_u_[j] : 1.0 / scale_u_[j];
        const Complex c = step * ratio * complex_normal(rng);
        trial_u_.noalias() = terms_[i].u + c * terms_[j].u;
        trial_v_.noalias() = terms_[j].v - c * terms_[i].v;
        const double nu = trace_norm(trial_u_);
        const double nv = trace_norm(trial_v_);
        const double before = norm_u_[i] * norm_v_[i] + norm_u_[j] * norm_v_[j];
        const double after = nu * norm_v_[i] + norm_u_[j] * nv;
        if (after < before) {
          terms_[i].u.swap(trial_u_);
          terms_[j].v.swap(trial_v_);
          norm_u_[i] = nu;
          norm_v_[j] = nv;
          scale_u_[i] = terms_[i].u.norm();
          ++accepted;
        }
      }
    }
    return {accepted, proposals};
  }

  std::vector<ElementaryTerm> release() { return std::move(terms_); }

 private:
  void refresh(std::size_t k) {
    norm_u_[k] = trace_norm(terms_[k].u);
    norm_v_[k] = trace_norm(terms_[k].v);
    scale_u_[k] = terms_[k].u.norm();
  }

  std::vector<ElementaryTerm> terms_;
  std::vector<double> norm_u_;
  std::vector<double> norm_v_;
  std::vector<double> scale_u_;
  ComplexMatrix trial_u_;
  ComplexMatrix trial_v_;
};

std::vector<ElementaryTerm> padded_start(const ElementaryDecomposition& start, int padding,
                                         Rng& rng) {
  std::vector<ElementaryTerm> terms = start.terms();
  const BipartiteDims& dims = start.dims();
  for (int p = 0; p < padding; ++p) {
    // A zero u keeps the reconstruction; the random v gives later shears a
    // nonzero direction to grow the extra term along.
    ComplexMatrix v = ginibre(dims.d2(), dims.d2(), rng);
    v /= v.norm();
    terms.push_back({ComplexMatrix::Zero(dims.d1(), dims.d1()), std::move(v)});
  }
  return terms;
}

template <typename Cancelled>
RestartResult run_restart(const ElementaryDecomposition& start, const SearchConfig& config,
                          int index, double floor, Cancelled cancelled) {
  Rng rng(config.seed + static_cast<std::uint64_t>(index));
  ElementaryDecomposition initial(start.dims(), padded_start(start, config.rank_padding, rng));
  if (index > 0) {
    const auto n = static_cast<Index>(initial.size());
    ComplexMatrix g = ginibre(n, n, rng);
    while (!Eigen::FullPivLU<ComplexMatrix>(g).isInvertible()) g = ginibre(n, n, rng);
    initial = mix(initial, g);
  }

  Climber climber(initial.terms());
  RestartResult out;
  double step = config.step_init;
  double cost = climber.cost();
  for (int it = 1; it <= config.max_iters; ++it) {
    if (cost - floor <= config.convergence_tol) break;
    if (step < config.convergence_tol) break;
    if (cancelled()) break;
    const auto [accepted, proposals] = climber.sweep(step, rng);
    out.iterations = it;
    if (proposals == 0) break;
    if (accepted == 0) {
      step *= config.step_shrink;
    } else if (4 * accepted > proposals) {
      step = std::min(1.0, step / config.step_shrink);
    }
    cost = climber.cost();
  }
  out.cost = climber.cost();
  out.reached_floor = out.cost - floor <= config.convergence_tol;
  out.terms = climber.release();
  return out;
}

// Drops terms with an exactly vanishing factor, keeping at least one term.
std::vector<ElementaryTerm> prune(std::vector<ElementaryTerm> terms) {
  std::vector<ElementaryTerm> kept;
  for (auto& t : terms) {
    if (t.u.isZero(0.0) || t.v.isZero(0.0)) continue;
    kept.push_back(std::move(t));
  }
  if (kept.empty() && !terms.empty()) kept.push_back(std::move(terms.front()));
  return kept;
}

}  // namespace

namespace detail {

void require_matching_seed(const DensityOperator& rho, const ElementaryDecomposition& seed) {
  if (!(seed.dims() == rho.dims())) {
    throw Error(ErrorCode::DimensionMismatch, "seed decomposition dims do not match the state");
  }
  const double mismatch = trace_norm(reconstruct(seed) - rho.matrix());
  if (!(mismatch <= kSeedTolerance)) {
    throw Error(ErrorCode::SeedMismatch,
                "seed decomposition does not reconstruct the state (trace-norm error " +
                    std::to_string(mismatch) + ")",
                mismatch);
  }
}

}  // namespace detail

UpperBound upper_bound_search(const DensityOperator& rho, const SearchConfig& config,
                              const std::optional<ElementaryDecomposition>& seed) {
  validate(config);
  const BipartiteDims& dims = rho.dims();
  const double floor = trace_norm(rho.matrix());

  std::optional<ElementaryDecomposition> start;
  if (seed) {
    detail::require_matching_seed(rho, *seed);
    start = *seed;
  } else {
    start = to_elementary(operator_schmidt(rho.matrix(), dims), dims);
  }

  const double initial_cost = decomposition_cost(*start);
  if (initial_cost - floor <= config.convergence_tol) {
    return {initial_cost, initial_cost, *start, 0, 0};
  }

  const int restarts = config.restarts;
  std::vector<RestartResult> results(static_cast<std::size_t>(restarts));
  // Lowest restart index that reached the floor. Restarts above it cannot be
  // selected, so they may be cancelled without changing the outcome.
  std::atomic<int> floor_index{restarts};
  std::atomic<int> next{0};

  auto worker = [&] {
    for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1)) {
      if (r > floor_index.load()) continue;
      RestartResult res = run_restart(*start, config, r, floor,
                                      [&] { return floor_index.load() < r; });
      if (res.reached_floor) {
        int seen = floor_index.load();
        while (r < seen && !floor_index.compare_exchange_weak(seen, r)) {
        }
      }
      results[static_cast<std::size_t>(r)] = std::move(res);
    }
  };

  const unsigned threads = std::clamp<unsigned>(config.threads, 1u, static_cast<unsigned>(restarts));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  int chosen = floor_index.load();
  if (chosen >= restarts) {
    chosen = 0;
    for (int r = 1; r < restarts; ++r) {
      if (results[static_cast<std::size_t>(r)].cost < results[static_cast<std::size_t>(chosen)].cost) {
        chosen = r;
      }
    }
  }
  RestartResult& best = results[static_cast<std::size_t>(chosen)];
  ElementaryDecomposition witness(dims, prune(std::move(best.terms)));
  const double cost = decomposition_cost(witness);
  if (!std::isfinite(cost)) throw NumericError("decomposition search produced a non-finite cost");
  const double drift = trace_norm(reconstruct(witness) - rho.matrix());
  if (!(drift <= kReconstructionTolerance)) {
    throw NumericError("decomposition search lost the reconstruction (trace-norm error " +
                       std::to_string(drift) + ")");
  }
  return {cost, initial_cost, std::move(witness), best.iterations, chosen};
}

}  // namespace sepgamma
