#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "sigcore/rng.hpp"
#include "sigcore/structure.hpp"

namespace sigcore_test {

using sigcore::mask_t;

/// The five-component bridge: two parallel rails with a crossover.
inline sigcore::PathSetSystem bridge_paths() {
  return sigcore::PathSetSystem::create(
      5, {0b01001 /*{1,4}*/, 0b10010 /*{2,5}*/, 0b10101 /*{1,3,5}*/, 0b01110 /*{2,3,4}*/});
}

inline sigcore::StructureFunction bridge() {
  return sigcore::StructureFunction::from_path_sets(bridge_paths());
}

/// Three components, the first in series with the other two in parallel.
inline sigcore::StructureFunction series_parallel_3() {
  return sigcore::StructureFunction::from_path_sets(
      sigcore::PathSetSystem::create(3, {0b011 /*{1,2}*/, 0b101 /*{1,3}*/}));
}

/// Every structure on n components that passes the semicoherence check
/// (brute force over all truth tables; n <= 4).
inline std::vector<sigcore::StructureFunction> all_semicoherent(int n) {
  std::vector<sigcore::StructureFunction> out;
  const std::size_t cells = sigcore::table_size(n);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << cells); ++code) {
    std::vector<std::uint8_t> table(cells);
    for (std::size_t m = 0; m < cells; ++m) table[m] = (code >> m) & 1;
    auto phi = sigcore::StructureFunction::from_table(n, std::move(table));
    if (sigcore::is_semicoherent(phi).ok) out.push_back(std::move(phi));
  }
  return out;
}

/// Random semicoherent structure built from a random antichain of path
/// sets; deterministic in the generator state.
inline sigcore::StructureFunction random_semicoherent(sigcore::xoshiro256pp& rng, int n) {
  const mask_t full = sigcore::full_mask(n);
  while (true) {
    const int target = 1 + static_cast<int>(rng.next() % (2 * static_cast<unsigned>(n)));
    std::vector<mask_t> candidates;
    for (int i = 0; i < target; ++i) {
      const mask_t m = static_cast<mask_t>(rng.next()) & full;
      if (m != 0) candidates.push_back(m);
    }
    if (candidates.empty()) continue;
    // Keep only the minimal candidates.
    std::vector<mask_t> antichain;
    for (mask_t a : candidates) {
      bool dominated = false;
      for (mask_t b : candidates) {
        if (b != a && (a & b) == b) {  // b is a proper subset of a
          dominated = true;
          break;
        }
      }
      if (!dominated && std::find(antichain.begin(), antichain.end(), a) == antichain.end())
        antichain.push_back(a);
    }
    if (antichain.empty()) continue;
    return sigcore::StructureFunction::from_path_sets(
        sigcore::PathSetSystem::create(n, std::move(antichain)));
  }
}

inline std::vector<double> random_rates(sigcore::xoshiro256pp& rng, int n, double lo = 0.1,
                                        double hi = 10.0) {
  std::vector<double> rates(static_cast<std::size_t>(n));
  for (double& r : rates) r = lo + (hi - lo) * rng.next_uniform();
  return rates;
}

}  // namespace sigcore_test
