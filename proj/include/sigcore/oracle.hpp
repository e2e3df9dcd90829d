#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sigcore/common.hpp"
#include "sigcore/lifetimes.hpp"
#include "sigcore/signature.hpp"
#include "sigcore/structure.hpp"

namespace sigcore {

/// Ground-truth engines kept deliberately independent of the closed-form
/// code paths: failure orderings are enumerated or simulated outright.

/// Samples are processed in fixed-size batches, each on its own seeded
/// substream; counts merge by integer addition, so the report is
/// identical for any thread count. The batch size is part of the
/// reproducibility contract.
inline constexpr std::uint64_t kMonteCarloBatchSize = std::uint64_t{1} << 16;

struct SimulationReport {
  std::vector<double> estimates;        // empirical p or q values
  std::vector<double> std_errors;       // sqrt(est * (1 - est) / samples)
  std::vector<std::uint64_t> counts;    // raw tallies; estimates = counts / samples
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Exact signature by walking every failure ordering. With no model the
/// orderings are equiprobable (cap n <= 10); with an order-probability
/// model each ordering contributes its own probability (cap n <= 8).
SignatureVector permutation_signature(const StructureFunction& phi,
                                      const std::optional<LifetimeModel>& model = {});

/// Simulates component lifetimes and realizes the system lifetime as the
/// best surviving path set (max over paths of the min lifetime inside).
/// The failure rank is recovered by exact comparison: the system lifetime
/// always equals one of the drawn lifetimes; a tie between equal draws
/// goes to the smallest component index.
SimulationReport monte_carlo_signature(const PathSetSystem& paths, const LifetimeModel& model,
                                       std::uint64_t samples, std::uint64_t seed,
                                       int threads = 0);

/// Truth-table variant: replays the failure order against the structure
/// table and stops at the failure that takes the system down. Equivalent
/// to the path-set evaluation, draw for draw.
SimulationReport monte_carlo_signature(const StructureFunction& phi, const LifetimeModel& model,
                                       std::uint64_t samples, std::uint64_t seed,
                                       int threads = 0);

/// Empirical relative quality: every sample contributes its realized
/// top-k component set at each cardinality level, so the level sums of
/// the tallies are exactly the sample count. Capped at n <= 12.
SimulationReport monte_carlo_quality(const LifetimeModel& model, std::uint64_t samples,
                                     std::uint64_t seed, int threads = 0);

/// Thread count actually used when `threads` <= 0: the SIGCORE_THREADS
/// environment variable if set, else the hardware concurrency.
int resolve_thread_count(int threads);

}  // namespace sigcore
