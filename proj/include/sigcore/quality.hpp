#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sigcore/common.hpp"
#include "sigcore/lifetimes.hpp"

namespace sigcore {

enum class QualityRoute {
  exchangeable,
  order_probs,
  quadrature,
  weibull_closed_form,
  weibull_difference,
  external,
};

std::string route_name(QualityRoute route);

/// Relative quality q(S): the probability that every component in S
/// outlives every component outside S, with q(empty) = q(full) = 1 by
/// convention. Values for each cardinality level sum to one. Stored as
/// a dense table over subset masks; immutable after construction.
class QualityFunction {
 public:
  /// Wraps a computed table, clamping sign-cancellation dust in
  /// [-8*accuracy, 0) to zero and verifying conventions, bounds and
  /// per-level sums against the route's declared accuracy.
  static QualityFunction computed(int n, std::vector<double> values, QualityRoute route,
                                  double accuracy);

  /// Wraps externally supplied values (e.g. a file being diagnosed).
  /// Bounds and conventions are enforced; level sums are not, so that
  /// deliberately broken tables can still be inspected.
  static QualityFunction from_values(int n, std::vector<double> values);

  int n() const { return n_; }
  QualityRoute route() const { return route_; }
  /// Declared absolute accuracy of each stored value.
  double accuracy() const { return accuracy_; }
  double operator[](mask_t s) const { return values_[s]; }
  const std::vector<double>& values() const { return values_; }

  /// Sums over each cardinality level, k = 0..n, masks ascending.
  std::vector<double> level_sums() const;
  /// Bound on |level sum - 1| implied by the declared accuracy.
  double level_tolerance() const;

 private:
  QualityFunction(int n, std::vector<double> values, QualityRoute route, double accuracy)
      : n_(n), values_(std::move(values)), route_(route), accuracy_(accuracy) {}
  int n_ = 0;
  std::vector<double> values_;
  QualityRoute route_ = QualityRoute::external;
  double accuracy_ = 0.0;
};

/// Relative quality scaled by the level size, so that 1 marks a subset of
/// exactly average quality for its cardinality.
struct NormalizedQuality {
  int n = 0;
  std::vector<double> values;
};

/// q for exchangeable (in particular i.i.d.) lifetimes: 1 over the number
/// of subsets of the same size.
QualityFunction quality_exchangeable(int n);

/// q assembled from explicit ordering probabilities: each permutation
/// contributes its probability to the top-|S| set it realizes at every
/// cardinality level. Permutations not listed count as probability zero.
QualityFunction quality_from_order_probabilities(const LifetimeModel& model);

/// q for independent lifetimes by one-dimensional adaptive quadrature per
/// subset: integrates the density that the worst component of S fails at
/// t while everything outside S is already down and the rest of S is
/// still up. The half line is folded through t = u/(1-u); each subset is
/// integrated to absolute tolerance `tol`. Accepts any model that carries
/// per-component marginals. Throws (naming the subset) on non-convergence.
QualityFunction quality_independent_quadrature(const LifetimeModel& model,
                                               double tol = 1e-9);

/// Closed form for independent Weibull lifetimes with a common shape:
/// alternating sum over subsets K of the complement of
/// rate_sum(S) / rate_sum(K + S), with rate_sum(S) the sum of rate^alpha
/// over S. Compensated summation, terms grouped by |K| ascending and mask
/// ascending within each size. The 2^(n-|S|) near-unit terms lose digits
/// as n grows; beyond n = 16 prefer the quadrature route.
QualityFunction quality_weibull(double alpha, const std::vector<double>& lambdas);

/// Same quantity evaluated through the iterated-difference operator: the
/// difference over the complement of S of the set function
/// rate_sum(S)/rate_sum(.), taken at S, carries q(S) up to sign. Distinct
/// enumeration and accumulation path from quality_weibull, so the two
/// routes cross-check each other. Capped at n <= 16.
QualityFunction quality_weibull_via_difference(double alpha,
                                               const std::vector<double>& lambdas);

struct WeibullCheck {
  bool compatible = false;
  std::string reason;  // names the violated condition when incompatible
  std::optional<std::vector<double>> recovered_rates;
  double max_deviation = 0.0;
};

/// Decides whether a quality table could have come from independent
/// common-shape Weibull lifetimes: the quality of each (n-1)-subset must
/// be positive, and rebuilding the table from those n values through the
/// closed form must reproduce it within `tol`. When compatible, those n
/// values are returned as recovered (normalized) rates.
WeibullCheck weibull_characterization_check(const QualityFunction& q, double tol);

/// Probability that the component with the shortest lifetime lies in S,
/// for independent Weibull lifetimes: rate_sum(S) / rate_sum(full).
double shortest_lifetime_in_set_probability(double alpha,
                                            const std::vector<double>& lambdas,
                                            mask_t s);

/// Pointwise multiplication by the level size.
NormalizedQuality tilde(const QualityFunction& q);

/// Rescales every cardinality level to sum to exactly 1 under ascending
/// mask summation (the last entry of each level absorbs the residual).
/// Opt-in: raw values are reported unless this is requested.
QualityFunction normalize_levels(const QualityFunction& q);

}  // namespace sigcore
