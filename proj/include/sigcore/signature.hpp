#pragma once

#include <vector>

#include "sigcore/common.hpp"
#include "sigcore/quality.hpp"
#include "sigcore/structure.hpp"

namespace sigcore {

/// p_k = probability that the kth component failure takes the system
/// down. Raw values are kept as computed; use clamped_report for output.
struct SignatureVector {
  int n = 0;
  std::vector<double> p;
};

/// t_k = probability that the system survives the (k-1)th failure,
/// k = 1..n, plus the formal t_{n+1} (the empty-level sum, 0 for any
/// semicoherent design). values has n+1 entries.
struct TailProbabilityVector {
  int n = 0;
  std::vector<double> values;
  double t(int k) const { return values[static_cast<std::size_t>(k - 1)]; }
};

/// Constant term plus coefficients of the order-statistic indicators;
/// evaluates to a function of |x| only.
struct SymmetricApproximation {
  int n = 0;
  double constant = 0.0;
  std::vector<double> coefficients;  // c_1..c_n

  /// Value taken on every subset of the given cardinality.
  double value_at_level(int level) const;
};

/// Design-only signature for i.i.d. (or exchangeable) lifetimes: the
/// difference of the structure function's level averages. Computed with
/// the exchangeable quality weights so that it agrees bit for bit with
/// signature_from_quality under those weights.
SignatureVector boland_signature(const StructureFunction& phi);

/// Survival tail across failure counts: t_k sums q over the subsets of
/// size n-k+1 on which the structure still works (masks ascending).
TailProbabilityVector tail_probabilities(const StructureFunction& phi,
                                         const QualityFunction& q);

/// Generalized signature p_k = t_k - t_{k+1}. Rejects designs that are
/// not semicoherent and quality tables whose noise produces negativity
/// beyond what their declared accuracy can explain.
SignatureVector signature_from_quality(const StructureFunction& phi,
                                       const QualityFunction& q);

/// Same signature computed as a single full-table sum with per-mask
/// coefficients q(x) * (-x_{k+1:n} + 2 x_{k:n} - x_{k-1:n}); an
/// independent reassociation of the level-sum route.
SignatureVector signature_via_rk(const StructureFunction& phi, const QualityFunction& q);

/// Report form: floating-point dust in [-1e-12, 0) is clamped to zero.
std::vector<double> clamped_report(const SignatureVector& sig);

/// Weighted least-squares projection of a real table onto the span of
/// the order-statistic indicators (the symmetric functions): per level,
/// the weighted mean with weights normalized within the level; the
/// coefficients are differences of consecutive level means. Requires
/// nonnegative weights with positive total on every level.
SymmetricApproximation symmetric_projection(int n, const std::vector<double>& f,
                                            const std::vector<double>& w);

/// Largest magnitude among the weighted inner products of the projection
/// residual with each order-statistic indicator and with the constant
/// function; near zero when the projection is correct.
double projection_residual_check(int n, const std::vector<double>& f,
                                 const std::vector<double>& w,
                                 const SymmetricApproximation& approx);

}  // namespace sigcore
