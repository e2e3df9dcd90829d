#include "sigcore/structure.hpp"

#include <algorithm>

namespace sigcore {

SubsetMask SubsetMask::from_indices(int n, const std::vector<int>& indices) {
  require_component_count(n);
  SubsetMask s;
  s.n = n;
  for (int i : indices) {
    if (i < 1 || i > n)
      throw_domain("component index " + std::to_string(i) + " out of range [1," +
                   std::to_string(n) + "]");
    s.bits |= mask_t{1} << (i - 1);
  }
  return s;
}

std::vector<int> SubsetMask::indices() const {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (bits & (mask_t{1} << i)) out.push_back(i + 1);
  return out;
}

PathSetSystem PathSetSystem::create(int n, std::vector<mask_t> paths) {
  require_component_count(n);
  if (paths.empty()) throw_domain("path set list must not be empty");
  const mask_t full = full_mask(n);
  for (mask_t p : paths) {
    if (p == 0) throw_domain("path sets must not be empty");
    if (p & ~full)
      throw_mismatch("path set " + format_subset(p, kMaxComponents) +
                     " uses components beyond n=" + std::to_string(n));
  }
  for (std::size_t a = 0; a < paths.size(); ++a) {
    for (std::size_t b = 0; b < paths.size(); ++b) {
      if (a == b) continue;
      if ((paths[a] & paths[b]) == paths[a])
        throw_domain("path sets are not minimal: " + format_subset(paths[a], n) +
                     " is contained in " + format_subset(paths[b], n));
    }
  }
  PathSetSystem ps;
  ps.n = n;
  ps.paths = std::move(paths);
  return ps;
}

StructureFunction StructureFunction::from_table(int n, std::vector<std::uint8_t> table) {
  require_component_count(n);
  if (table.size() != table_size(n))
    throw_domain("truth table must have 2^n = " + std::to_string(table_size(n)) +
                 " entries, got " + std::to_string(table.size()));
  for (std::uint8_t v : table)
    if (v > 1) throw_domain("truth table entries must be 0 or 1");
  return StructureFunction(n, std::move(table));
}

StructureFunction StructureFunction::from_path_sets(const PathSetSystem& ps) {
  std::vector<std::uint8_t> table(table_size(ps.n), 0);
  for (mask_t m = 0; m < table.size(); ++m) {
    for (mask_t p : ps.paths) {
      if ((m & p) == p) {
        table[m] = 1;
        break;
      }
    }
  }
  return StructureFunction(ps.n, std::move(table));
}

StructureFunction StructureFunction::series(int n) { return k_out_of_n(n, 1); }

StructureFunction StructureFunction::parallel(int n) { return k_out_of_n(n, n); }

StructureFunction StructureFunction::k_out_of_n(int n, int k) {
  require_component_count(n);
  if (k < 1 || k > n)
    throw_domain("k must be in [1," + std::to_string(n) + "], got " + std::to_string(k));
  std::vector<std::uint8_t> table(table_size(n), 0);
  for (mask_t m = 0; m < table.size(); ++m)
    table[m] = cardinality(m) >= n - k + 1 ? 1 : 0;
  return StructureFunction(n, std::move(table));
}

std::uint8_t evaluate(const StructureFunction& phi, const SubsetMask& s) {
  if (s.n != phi.n())
    throw_mismatch("arity mismatch: structure has n=" + std::to_string(phi.n()) +
                   ", subset has n=" + std::to_string(s.n));
  return phi(s.bits);
}

SemicoherenceReport is_semicoherent(const StructureFunction& phi) {
  const int n = phi.n();
  if (phi(0) != 0)
    return {false, "boundary violation: phi(" + format_subset(0, n) + ") = 1"};
  if (phi(full_mask(n)) != 1)
    return {false, "boundary violation: phi(" + format_subset(full_mask(n), n) + ") = 0"};
  for (mask_t m = 0; m < table_size(n); ++m) {
    for (int i = 0; i < n; ++i) {
      const mask_t bit = mask_t{1} << i;
      if ((m & bit) == 0 && phi(m) > phi(m | bit)) {
        return {false, "monotonicity violation: phi(" + format_subset(m, n) + ") = 1 > phi(" +
                           format_subset(m | bit, n) + ") = 0"};
      }
    }
  }
  return {true, {}};
}

PathSetSystem minimal_path_sets(const StructureFunction& phi) {
  const auto report = is_semicoherent(phi);
  if (!report.ok)
    throw_domain("minimal path sets require a semicoherent structure: " + report.violation);
  const int n = phi.n();
  std::vector<mask_t> minimal;
  for (int c = 1; c <= n; ++c) {
    for_each_subset_of_cardinality(n, c, [&](mask_t m) {
      if (!phi(m)) return;
      for (mask_t p : minimal)
        if ((m & p) == p) return;  // a smaller working subset is contained
      minimal.push_back(m);
    });
  }
  return PathSetSystem::create(n, std::move(minimal));
}

OrderStatisticFunction::OrderStatisticFunction(int n_, int k_) : n(n_), k(k_) {
  require_component_count(n);
  if (k < 0 || k > n + 1)
    throw_domain("order statistic rank must be in [0," + std::to_string(n + 1) + "]");
}

std::vector<std::uint8_t> OrderStatisticFunction::table() const {
  std::vector<std::uint8_t> t(table_size(n));
  for (mask_t m = 0; m < t.size(); ++m) t[m] = (*this)(m);
  return t;
}

std::vector<double> s_difference(const std::vector<double>& f, int n, mask_t s) {
  require_component_count(n);
  if (f.size() != table_size(n))
    throw_domain("set function table must have 2^n entries");
  if (s & ~full_mask(n)) throw_domain("difference coordinates out of range");
  std::vector<double> g = f;
  for (int i = 0; i < n; ++i) {
    const mask_t bit = mask_t{1} << i;
    if ((s & bit) == 0) continue;
    for (mask_t m = 0; m < g.size(); ++m) {
      if (m & bit) continue;
      const double d = g[m | bit] - g[m];
      g[m] = d;
      g[m | bit] = d;
    }
  }
  return g;
}

double s_difference_at(const std::function<double(mask_t)>& f, mask_t k_set, mask_t x) {
  const mask_t base = x & ~k_set;
  const int k_card = cardinality(k_set);
  kahan_sum acc;
  // All 2^|K| inclusion-exclusion terms; sign flips with the number of
  // coordinates of K left at zero.
  mask_t sub = k_set;
  while (true) {
    const int sign_bits = k_card - cardinality(sub);
    const double term = f(base | sub);
    acc.add((sign_bits & 1) ? -term : term);
    if (sub == 0) break;
    sub = (sub - 1) & k_set;
  }
  return acc.value();
}

}  // namespace sigcore
