#include "sigcore/signature.hpp"

#include <algorithm>
#include <cmath>

namespace sigcore {

namespace {

void require_semicoherent(const StructureFunction& phi) {
  const auto report = is_semicoherent(phi);
  if (!report.ok)
    throw_domain("signature requires a semicoherent structure: " + report.violation);
}

void require_same_n(const StructureFunction& phi, const QualityFunction& q) {
  if (phi.n() != q.n())
    throw_mismatch("arity mismatch: structure has n=" + std::to_string(phi.n()) +
                   ", quality has n=" + std::to_string(q.n()));
}

/// Per-level sums of weight * phi, masks ascending within each level
/// (one ascending pass over the whole table). Shared by every signature
/// route so that identical inputs give identical floating-point output.
std::vector<double> weighted_level_sums(const StructureFunction& phi,
                                        const std::vector<double>& weights) {
  std::vector<double> sums(static_cast<std::size_t>(phi.n()) + 1, 0.0);
  for (mask_t m = 0; m < weights.size(); ++m)
    if (phi(m)) sums[static_cast<std::size_t>(cardinality(m))] += weights[m];
  return sums;
}

SignatureVector signature_from_tails(const TailProbabilityVector& tails,
                                     double negativity_tol) {
  const int n = tails.n;
  SignatureVector sig;
  sig.n = n;
  sig.p.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k)
    sig.p[static_cast<std::size_t>(k - 1)] = tails.t(k) - tails.t(k + 1);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double pk = sig.p[static_cast<std::size_t>(k)];
    if (pk < -negativity_tol)
      throw_numeric("signature entry p_" + std::to_string(k + 1) + " = " +
                    std::to_string(pk) +
                    " is negative beyond tolerance; the quality table or structure is invalid");
    sum += pk;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw_numeric("signature entries sum to " + std::to_string(sum) + ", expected 1");
  return sig;
}

}  // namespace

double SymmetricApproximation::value_at_level(int level) const {
  double v = constant;
  for (int k = n - level + 1; k <= n; ++k)
    if (k >= 1) v += coefficients[static_cast<std::size_t>(k - 1)];
  return v;
}

SignatureVector boland_signature(const StructureFunction& phi) {
  return signature_from_quality(phi, quality_exchangeable(phi.n()));
}

TailProbabilityVector tail_probabilities(const StructureFunction& phi,
                                         const QualityFunction& q) {
  require_same_n(phi, q);
  require_semicoherent(phi);
  const int n = phi.n();
  const auto level = weighted_level_sums(phi, q.values());
  TailProbabilityVector tails;
  tails.n = n;
  tails.values.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n + 1; ++k)
    tails.values[static_cast<std::size_t>(k - 1)] = level[static_cast<std::size_t>(n - k + 1)];
  return tails;
}

SignatureVector signature_from_quality(const StructureFunction& phi,
                                       const QualityFunction& q) {
  const auto tails = tail_probabilities(phi, q);
  const double neg_tol = std::max(1e-12, 4.0 * q.level_tolerance());
  return signature_from_tails(tails, neg_tol);
}

SignatureVector signature_via_rk(const StructureFunction& phi, const QualityFunction& q) {
  require_same_n(phi, q);
  require_semicoherent(phi);
  const int n = phi.n();
  SignatureVector sig;
  sig.n = n;
  sig.p.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const OrderStatisticFunction os_below(n, k - 1);
    const OrderStatisticFunction os_k(n, k);
    const OrderStatisticFunction os_above(n, k + 1);
    double acc = 0.0;
    for (mask_t m = 0; m < table_size(n); ++m) {
      if (!phi(m)) continue;
      const int coeff = -static_cast<int>(os_above(m)) + 2 * static_cast<int>(os_k(m)) -
                        static_cast<int>(os_below(m));
      if (coeff != 0) acc += q[m] * static_cast<double>(coeff);
    }
    sig.p[static_cast<std::size_t>(k - 1)] = acc;
  }
  return sig;
}

std::vector<double> clamped_report(const SignatureVector& sig) {
  std::vector<double> out = sig.p;
  for (double& v : out)
    if (v < 0.0 && v >= -1e-12) v = 0.0;
  return out;
}

SymmetricApproximation symmetric_projection(int n, const std::vector<double>& f,
                                            const std::vector<double>& w) {
  require_component_count(n);
  if (f.size() != table_size(n) || w.size() != table_size(n))
    throw_domain("function and weight tables must have 2^n entries");
  std::vector<double> level_weight(static_cast<std::size_t>(n) + 1, 0.0);
  for (mask_t m = 0; m < w.size(); ++m) {
    if (!(w[m] >= 0.0))
      throw_domain("weights must be nonnegative; w(" + format_subset(m, n) + ") = " +
                   std::to_string(w[m]));
    level_weight[static_cast<std::size_t>(cardinality(m))] += w[m];
  }
  for (int k = 0; k <= n; ++k) {
    if (!(level_weight[static_cast<std::size_t>(k)] > 0.0))
      throw_domain("projection undefined: total weight at cardinality " + std::to_string(k) +
                   " is not positive");
  }
  // Weighted level means with weights normalized within each level.
  std::vector<double> level_mean(static_cast<std::size_t>(n) + 1, 0.0);
  for (mask_t m = 0; m < f.size(); ++m) {
    const auto c = static_cast<std::size_t>(cardinality(m));
    level_mean[c] += (w[m] / level_weight[c]) * f[m];
  }
  SymmetricApproximation approx;
  approx.n = n;
  approx.constant = f[0];
  approx.coefficients.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    approx.coefficients[static_cast<std::size_t>(k - 1)] =
        level_mean[static_cast<std::size_t>(n - k + 1)] -
        level_mean[static_cast<std::size_t>(n - k)];
  }
  return approx;
}

double projection_residual_check(int n, const std::vector<double>& f,
                                 const std::vector<double>& w,
                                 const SymmetricApproximation& approx) {
  require_component_count(n);
  if (f.size() != table_size(n) || w.size() != table_size(n))
    throw_domain("function and weight tables must have 2^n entries");
  if (approx.n != n) throw_mismatch("approximation arity does not match the tables");
  std::vector<double> approx_at_level(static_cast<std::size_t>(n) + 1);
  for (int l = 0; l <= n; ++l)
    approx_at_level[static_cast<std::size_t>(l)] = approx.value_at_level(l);
  // Residual mass per level; each inner product is a suffix sum of these.
  std::vector<double> level_residual(static_cast<std::size_t>(n) + 1, 0.0);
  for (mask_t m = 0; m < f.size(); ++m) {
    const auto c = static_cast<std::size_t>(cardinality(m));
    level_residual[c] += w[m] * (f[m] - approx_at_level[c]);
  }
  double worst = 0.0;
  double suffix = 0.0;
  for (int l = n; l >= 0; --l) {
    suffix += level_residual[static_cast<std::size_t>(l)];
    // suffix now equals the inner product with os_{n-l+1:n} (l >= 1) or
    // with the constant function (l = 0).
    worst = std::max(worst, std::abs(suffix));
  }
  return worst;
}

}  // namespace sigcore
