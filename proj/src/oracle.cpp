#include "sigcore/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <thread>

#include "sigcore/rng.hpp"

namespace sigcore {

namespace {

void require_semicoherent_oracle(const StructureFunction& phi) {
  const auto report = is_semicoherent(phi);
  if (!report.ok) throw_domain("oracle requires a semicoherent structure: " + report.violation);
}

/// Walks one failure ordering (components by increasing lifetime) and
/// returns the 1-based failure index that takes the system down.
int failure_rank(const StructureFunction& phi, const int* order, int n) {
  mask_t alive = full_mask(n);
  for (int k = 1; k <= n; ++k) {
    alive &= ~(mask_t{1} << order[k - 1]);
    if (!phi(alive)) return k;
  }
  return n;  // unreachable for semicoherent phi
}

std::vector<std::uint64_t> run_batches(
    std::uint64_t samples, std::uint64_t seed, int threads, std::size_t n_cells,
    const std::function<void(xoshiro256pp&, std::vector<std::uint64_t>&)>& one_sample) {
  const std::uint64_t n_batches =
      (samples + kMonteCarloBatchSize - 1) / kMonteCarloBatchSize;
  const int workers =
      std::clamp<int>(threads, 1, static_cast<int>(std::min<std::uint64_t>(n_batches, 64)));
  std::atomic<std::uint64_t> next_batch{0};
  std::vector<std::vector<std::uint64_t>> partials(
      static_cast<std::size_t>(workers), std::vector<std::uint64_t>(n_cells, 0));
  auto work = [&](int w) {
    auto& local = partials[static_cast<std::size_t>(w)];
    while (true) {
      const std::uint64_t b = next_batch.fetch_add(1);
      if (b >= n_batches) break;
      const std::uint64_t batch_samples =
          std::min(kMonteCarloBatchSize, samples - b * kMonteCarloBatchSize);
      xoshiro256pp rng(seed, b + 1);
      for (std::uint64_t s = 0; s < batch_samples; ++s) one_sample(rng, local);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::vector<std::uint64_t> counts(n_cells, 0);
  for (const auto& local : partials)
    for (std::size_t i = 0; i < n_cells; ++i) counts[i] += local[i];
  return counts;
}

SimulationReport report_from_counts(std::vector<std::uint64_t> counts, std::uint64_t samples,
                                    std::uint64_t seed) {
  SimulationReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.estimates.resize(counts.size());
  rep.std_errors.resize(counts.size());
  const double N = static_cast<double>(samples);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double est = static_cast<double>(counts[i]) / N;
    rep.estimates[i] = est;
    rep.std_errors[i] = std::sqrt(est * (1.0 - est) / N);
  }
  rep.counts = std::move(counts);
  return rep;
}

void require_model_arity(const LifetimeModel& model, int n) {
  if (model.n != 0 && model.n != n)
    throw_mismatch("arity mismatch: structure has n=" + std::to_string(n) + ", model has n=" +
                   std::to_string(model.n));
}

}  // namespace

int resolve_thread_count(int threads) {
  if (threads > 0) return threads;
  if (const char* env = std::getenv("SIGCORE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(std::min<long>(v, 64));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SignatureVector permutation_signature(const StructureFunction& phi,
                                      const std::optional<LifetimeModel>& model) {
  require_semicoherent_oracle(phi);
  const int n = phi.n();
  SignatureVector sig;
  sig.n = n;
  sig.p.assign(static_cast<std::size_t>(n), 0.0);
  if (model.has_value() && model->kind != LifetimeModel::Kind::order_probs)
    throw_mismatch("permutation oracle takes an order_probs model (or none for uniform)");
  if (model.has_value()) {
    require_model_arity(*model, n);
    for (const auto& [perm, prob] : model->order_probs) {
      const int k = failure_rank(phi, perm.data(), n);
      sig.p[static_cast<std::size_t>(k - 1)] += prob;
    }
    return sig;
  }
  if (n > 10)
    throw_domain("uniform permutation oracle is capped at n <= 10 (n! orderings); "
                 "use the Monte Carlo oracle for n=" + std::to_string(n));
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n), 0);
  std::uint64_t total = 0;
  do {
    ++counts[static_cast<std::size_t>(failure_rank(phi, perm.data(), n) - 1)];
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (int k = 0; k < n; ++k)
    sig.p[static_cast<std::size_t>(k)] =
        static_cast<double>(counts[static_cast<std::size_t>(k)]) / static_cast<double>(total);
  return sig;
}

SimulationReport monte_carlo_signature(const PathSetSystem& paths, const LifetimeModel& model,
                                       std::uint64_t samples, std::uint64_t seed,
                                       int threads) {
  if (samples < 1) throw_domain("sample count must be >= 1");
  require_model_arity(model, paths.n);
  const auto marginals = model.component_marginals();
  if (static_cast<int>(marginals.size()) != paths.n)
    throw_mismatch("model marginal count does not match the structure arity");
  const int n = paths.n;
  const auto path_masks = paths.paths;
  auto one_sample = [&, n](xoshiro256pp& rng, std::vector<std::uint64_t>& counts) {
    double x[kMaxComponents];
    for (int i = 0; i < n; ++i)
      x[i] = marginals[static_cast<std::size_t>(i)].quantile(rng.next_uniform());
    // System lifetime: best path set, worst component inside it.
    double t_sys = 0.0;
    bool first = true;
    for (mask_t p : path_masks) {
      double worst = 0.0;
      bool inner_first = true;
      for (mask_t rest = p; rest != 0; rest &= rest - 1) {
        const int i = std::countr_zero(rest);
        if (inner_first || x[i] < worst) {
          worst = x[i];
          inner_first = false;
        }
      }
      if (first || worst > t_sys) {
        t_sys = worst;
        first = false;
      }
    }
    // The system dies at the rank of its lifetime among the draws; equal
    // draws resolve to the smallest component index, i.e. lowest rank.
    int below = 0;
    for (int i = 0; i < n; ++i)
      if (x[i] < t_sys) ++below;
    ++counts[static_cast<std::size_t>(below)];
  };
  auto counts = run_batches(samples, seed, resolve_thread_count(threads),
                            static_cast<std::size_t>(n), one_sample);
  return report_from_counts(std::move(counts), samples, seed);
}

SimulationReport monte_carlo_signature(const StructureFunction& phi, const LifetimeModel& model,
                                       std::uint64_t samples, std::uint64_t seed,
                                       int threads) {
  if (samples < 1) throw_domain("sample count must be >= 1");
  require_semicoherent_oracle(phi);
  require_model_arity(model, phi.n());
  const auto marginals = model.component_marginals();
  if (static_cast<int>(marginals.size()) != phi.n())
    throw_mismatch("model marginal count does not match the structure arity");
  const int n = phi.n();
  auto one_sample = [&, n](xoshiro256pp& rng, std::vector<std::uint64_t>& counts) {
    double x[kMaxComponents];
    int order[kMaxComponents];
    for (int i = 0; i < n; ++i) {
      x[i] = marginals[static_cast<std::size_t>(i)].quantile(rng.next_uniform());
      order[i] = i;
    }
    std::sort(order, order + n, [&x](int a, int b) {
      return x[a] < x[b] || (x[a] == x[b] && a < b);
    });
    const int k = failure_rank(phi, order, n);
    ++counts[static_cast<std::size_t>(k - 1)];
  };
  auto counts = run_batches(samples, seed, resolve_thread_count(threads),
                            static_cast<std::size_t>(n), one_sample);
  return report_from_counts(std::move(counts), samples, seed);
}

SimulationReport monte_carlo_quality(const LifetimeModel& model, std::uint64_t samples,
                                     std::uint64_t seed, int threads) {
  if (samples < 1) throw_domain("sample count must be >= 1");
  const auto marginals = model.component_marginals();
  const int n = static_cast<int>(marginals.size());
  if (n > 12)
    throw_domain("empirical quality tables are capped at n <= 12 (2^n cells); got n=" +
                 std::to_string(n));
  auto one_sample = [&, n](xoshiro256pp& rng, std::vector<std::uint64_t>& counts) {
    double x[kMaxComponents];
    int order[kMaxComponents];
    for (int i = 0; i < n; ++i) {
      x[i] = marginals[static_cast<std::size_t>(i)].quantile(rng.next_uniform());
      order[i] = i;
    }
    std::sort(order, order + n, [&x](int a, int b) {
      return x[a] < x[b] || (x[a] == x[b] && a < b);
    });
    // Longest-lived components first: one top-k set per level.
    mask_t top = 0;
    for (int k = 1; k <= n; ++k) {
      top |= mask_t{1} << order[n - k];
      ++counts[top];
    }
  };
  auto counts =
      run_batches(samples, seed, resolve_thread_count(threads), table_size(n), one_sample);
  return report_from_counts(std::move(counts), samples, seed);
}

}  // namespace sigcore
