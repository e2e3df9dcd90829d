#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sigcore/common.hpp"

namespace sigcore {

/// A subset of components together with the arity it lives in, so that
/// cross-object calls can reject mixed dimensions.
struct SubsetMask {
  mask_t bits = 0;
  int n = 0;

  /// Builds a mask from 1-based component indices.
  static SubsetMask from_indices(int n, const std::vector<int>& indices);
  std::vector<int> indices() const;  // 1-based, ascending
  int size() const { return cardinality(bits); }
};

/// Minimal path sets: an antichain of nonempty subsets. The system works
/// exactly when all components of at least one path set work.
struct PathSetSystem {
  int n = 0;
  std::vector<mask_t> paths;

  /// Validates arity, non-emptiness and the antichain property.
  static PathSetSystem create(int n, std::vector<mask_t> paths);
};

/// Monotone-or-not Boolean design on n components, stored as a dense
/// truth table indexed by subset mask. Immutable after construction.
class StructureFunction {
 public:
  static StructureFunction from_table(int n, std::vector<std::uint8_t> table);
  static StructureFunction from_path_sets(const PathSetSystem& ps);
  static StructureFunction series(int n);
  static StructureFunction parallel(int n);
  /// Works while at least n-k+1 components work; fails at the kth failure.
  static StructureFunction k_out_of_n(int n, int k);

  int n() const { return n_; }
  std::uint8_t operator()(mask_t s) const { return table_[s]; }
  const std::vector<std::uint8_t>& table() const { return table_; }

 private:
  StructureFunction(int n, std::vector<std::uint8_t> table)
      : n_(n), table_(std::move(table)) {}
  int n_ = 0;
  std::vector<std::uint8_t> table_;
};

/// Arity-checked single evaluation; throws on dimension mismatch.
std::uint8_t evaluate(const StructureFunction& phi, const SubsetMask& s);

struct SemicoherenceReport {
  bool ok = false;
  std::string violation;  // empty when ok; names the first violating pair
};

/// True iff phi(empty) = 0, phi(full) = 1 and phi is nondecreasing over
/// every covering pair (S, S + {i}).
SemicoherenceReport is_semicoherent(const StructureFunction& phi);

/// Inverse of from_path_sets: the antichain of minimal working subsets.
/// Walks masks in increasing cardinality with subset filtering, which is
/// O(4^n) against adversarial inputs; intended for display and test use.
PathSetSystem minimal_path_sets(const StructureFunction& phi);

/// Indicator that at least n-k+1 components work, i.e. the Boolean
/// analogue of the kth smallest lifetime. k = 0 is identically 0 and
/// k = n+1 identically 1.
struct OrderStatisticFunction {
  int n = 0;
  int k = 0;

  OrderStatisticFunction(int n_, int k_);
  std::uint8_t operator()(mask_t s) const {
    if (k == 0) return 0;
    if (k == n + 1) return 1;
    return cardinality(s) >= n - k + 1 ? 1 : 0;
  }
  std::vector<std::uint8_t> table() const;
};

/// Iterated partial difference of a dense set function over the
/// coordinates in S, eliminating coordinates in ascending order. The
/// value at any mask m no longer depends on the bits of m inside S.
std::vector<double> s_difference(const std::vector<double>& f, int n, mask_t s);

/// Pointwise form of the same operator for a set function given as a
/// callable: (difference over K of f)(x), expanded by inclusion-exclusion
/// with compensated summation. f is only queried at masks of the form
/// (x minus K) union L with L inside K.
double s_difference_at(const std::function<double(mask_t)>& f, mask_t k_set, mask_t x);

}  // namespace sigcore
