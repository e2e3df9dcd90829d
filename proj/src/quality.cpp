#include "sigcore/quality.hpp"

#include <algorithm>
#include <cmath>

#include "sigcore/quadrature.hpp"
#include "sigcore/structure.hpp"

namespace sigcore {

namespace {

/// rate_sum over every mask: tab[m] = sum of weights over the bits of m.
std::vector<double> additive_weight_table(const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<double> tab(table_size(n), 0.0);
  for (mask_t m = 1; m < tab.size(); ++m) {
    const mask_t low = m & (0u - m);
    tab[m] = tab[m ^ low] + weights[static_cast<std::size_t>(std::countr_zero(low))];
  }
  return tab;
}

/// Alternating-sum closed form shared by the Weibull route and the
/// characterization check; `weights` are the per-component rate powers.
std::vector<double> quality_values_from_additive_weights(const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  const auto tab = additive_weight_table(weights);
  const mask_t full = full_mask(n);
  std::vector<double> values(table_size(n), 0.0);
  values[0] = 1.0;
  for (mask_t s = 1; s <= full; ++s) {
    const mask_t comp = full & ~s;
    const auto comp_bits = bit_positions(comp);
    const int comp_size = static_cast<int>(comp_bits.size());
    kahan_sum acc;
    const double rate_s = tab[s];
    for (int c = 0; c <= comp_size; ++c) {
      // Subsets of the complement with exactly c elements, masks ascending.
      for_each_subset_of_cardinality(comp_size, c, [&](mask_t compact) {
        const mask_t k = expand_bits(compact, comp_bits);
        const double term = rate_s / tab[s | k];
        acc.add((c & 1) ? -term : term);
      });
    }
    values[s] = acc.value();
  }
  return values;
}

double closed_form_accuracy(int n) {
  return std::max(1e-13, static_cast<double>(table_size(n)) * 1e-15);
}

}  // namespace

std::string route_name(QualityRoute route) {
  switch (route) {
    case QualityRoute::exchangeable: return "exchangeable";
    case QualityRoute::order_probs: return "order_probs";
    case QualityRoute::quadrature: return "quadrature";
    case QualityRoute::weibull_closed_form: return "weibull_closed_form";
    case QualityRoute::weibull_difference: return "weibull_difference";
    case QualityRoute::external: return "external";
  }
  return "?";
}

QualityFunction QualityFunction::computed(int n, std::vector<double> values,
                                          QualityRoute route, double accuracy) {
  require_component_count(n);
  if (values.size() != table_size(n))
    throw_domain("quality table must have 2^n entries");
  const mask_t full = full_mask(n);
  if (values[0] != 1.0 || values[full] != 1.0)
    throw_numeric("quality conventions violated: q(empty) and q(full) must be 1");
  const double dust = 8.0 * accuracy;
  for (mask_t m = 0; m < values.size(); ++m) {
    double& v = values[m];
    if (v < 0.0) {
      if (v < -dust)
        throw_numeric("quality value at " + format_subset(m, n) + " is negative (" +
                      std::to_string(v) + ") beyond the dust tolerance");
      v = 0.0;
    } else if (v > 1.0) {
      if (v > 1.0 + dust)
        throw_numeric("quality value at " + format_subset(m, n) + " exceeds 1");
      v = 1.0;
    }
  }
  QualityFunction q(n, std::move(values), route, accuracy);
  const auto sums = q.level_sums();
  const double tol = q.level_tolerance();
  for (int k = 1; k < n; ++k) {
    if (std::abs(sums[static_cast<std::size_t>(k)] - 1.0) > tol)
      throw_numeric("quality level " + std::to_string(k) + " sums to " +
                    std::to_string(sums[static_cast<std::size_t>(k)]) +
                    ", outside tolerance " + std::to_string(tol));
  }
  return q;
}

QualityFunction QualityFunction::from_values(int n, std::vector<double> values) {
  require_component_count(n);
  if (values.size() != table_size(n))
    throw_parse("quality table must have 2^n = " + std::to_string(table_size(n)) +
                " entries, got " + std::to_string(values.size()));
  const mask_t full = full_mask(n);
  const double dust = 1e-9;
  if (std::abs(values[0] - 1.0) > dust || std::abs(values[full] - 1.0) > dust)
    throw_parse("quality conventions violated: q(empty) and q(full) must equal 1");
  values[0] = 1.0;
  values[full] = 1.0;
  for (mask_t m = 0; m < values.size(); ++m) {
    double& v = values[m];
    if (!std::isfinite(v) || v < -dust || v > 1.0 + dust)
      throw_parse("quality value at " + format_subset(m, n) + " outside [0,1]");
    v = std::clamp(v, 0.0, 1.0);
  }
  return QualityFunction(n, std::move(values), QualityRoute::external, dust);
}

std::vector<double> QualityFunction::level_sums() const {
  std::vector<double> sums(static_cast<std::size_t>(n_) + 1, 0.0);
  for (mask_t m = 0; m < values_.size(); ++m)
    sums[static_cast<std::size_t>(cardinality(m))] += values_[m];
  return sums;
}

double QualityFunction::level_tolerance() const {
  const double floor = route_ == QualityRoute::quadrature ? 1e-9 : 1e-12;
  return std::max(floor, binomial(n_, n_ / 2) * accuracy_);
}

QualityFunction quality_exchangeable(int n) {
  require_component_count(n);
  std::vector<double> values(table_size(n));
  for (mask_t m = 0; m < values.size(); ++m)
    values[m] = 1.0 / binomial(n, cardinality(m));
  return QualityFunction::computed(n, std::move(values), QualityRoute::exchangeable, 1e-15);
}

QualityFunction quality_from_order_probabilities(const LifetimeModel& model) {
  if (model.kind != LifetimeModel::Kind::order_probs)
    throw_mismatch("order-probability route needs an order_probs model, got '" +
                   model.kind_name() + "'");
  const int n = model.n;
  std::vector<double> values(table_size(n), 0.0);
  for (const auto& [perm, p] : model.order_probs) {
    // perm lists components by increasing lifetime; peel the longest
    // lived off the back to build the top-k sets.
    mask_t top = 0;
    for (int k = 1; k < n; ++k) {
      top |= mask_t{1} << perm[static_cast<std::size_t>(n - k)];
      values[top] += p;
    }
  }
  values[0] = 1.0;
  values[full_mask(n)] = 1.0;
  return QualityFunction::computed(n, std::move(values), QualityRoute::order_probs, 1e-13);
}

QualityFunction quality_independent_quadrature(const LifetimeModel& model, double tol) {
  if (!(tol > 0.0)) throw_domain("quadrature tolerance must be positive");
  const auto marginals = model.component_marginals();
  const int n = static_cast<int>(marginals.size());
  const mask_t full = full_mask(n);
  std::vector<double> values(table_size(n), 0.0);
  values[0] = 1.0;
  values[full] = 1.0;
  std::vector<int> members, outside;
  std::vector<double> surv, pref, suf;
  for (mask_t s = 1; s < full; ++s) {
    members = bit_positions(s);
    outside = bit_positions(full & ~s);
    const auto integrand = [&](double t) {
      double down = 1.0;  // everything outside S has already failed
      for (int i : outside) down *= marginals[static_cast<std::size_t>(i)].cdf(t);
      if (down == 0.0) return 0.0;
      const std::size_t m = members.size();
      // survival prefix/suffix products over S, skipping one member at a
      // time without divisions
      surv.resize(m);
      pref.resize(m + 1);
      suf.resize(m + 1);
      for (std::size_t j = 0; j < m; ++j)
        surv[j] = 1.0 - marginals[static_cast<std::size_t>(members[j])].cdf(t);
      pref[0] = 1.0;
      for (std::size_t j = 0; j < m; ++j) pref[j + 1] = pref[j] * surv[j];
      suf[m] = 1.0;
      for (std::size_t j = m; j-- > 0;) suf[j] = suf[j + 1] * surv[j];
      double density = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        density += marginals[static_cast<std::size_t>(members[j])].pdf(t) * pref[j] * suf[j + 1];
      return down * density;
    };
    const QuadratureResult r = integrate_half_line(integrand, tol);
    if (!r.converged)
      throw_numeric("quadrature did not converge for subset " + format_subset(s, n) +
                    " (error estimate " + std::to_string(r.error_estimate) + ")");
    values[s] = r.value;
  }
  return QualityFunction::computed(n, std::move(values), QualityRoute::quadrature, tol);
}

QualityFunction quality_weibull(double alpha, const std::vector<double>& lambdas) {
  LifetimeModel model = LifetimeModel::weibull(alpha, lambdas);  // validates
  const int n = model.n;
  std::vector<double> weights(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) weights[i] = std::pow(lambdas[i], alpha);
  auto values = quality_values_from_additive_weights(weights);
  return QualityFunction::computed(n, std::move(values), QualityRoute::weibull_closed_form,
                                   closed_form_accuracy(n));
}

QualityFunction quality_weibull_via_difference(double alpha,
                                               const std::vector<double>& lambdas) {
  LifetimeModel model = LifetimeModel::weibull(alpha, lambdas);
  const int n = model.n;
  if (n > 16)
    throw_domain("difference route is capped at n <= 16; use the closed form or quadrature");
  std::vector<double> weights(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) weights[i] = std::pow(lambdas[i], alpha);
  const auto tab = additive_weight_table(weights);
  const mask_t full = full_mask(n);
  std::vector<double> values(table_size(n), 0.0);
  values[0] = 1.0;
  for (mask_t s = 1; s <= full; ++s) {
    const double rate_s = tab[s];
    // The constant rate_sum(S) factor rides inside the differenced set
    // function; the empty set stays a hard error (rate_sum(empty) = 0 is
    // a pole of 1/rate_sum).
    const std::function<double(mask_t)> scaled_reciprocal = [&](mask_t m) {
      if (m == 0)
        throw_numeric("reciprocal rate-sum set function queried at the empty set");
      return rate_s / tab[m];
    };
    const int comp_size = n - cardinality(s);
    const double diff = s_difference_at(scaled_reciprocal, full & ~s, s);
    values[s] = (comp_size & 1) ? -diff : diff;
  }
  return QualityFunction::computed(n, std::move(values), QualityRoute::weibull_difference,
                                   closed_form_accuracy(n));
}

WeibullCheck weibull_characterization_check(const QualityFunction& q, double tol) {
  if (!(tol > 0.0)) throw_domain("characterization tolerance must be positive");
  const int n = q.n();
  const mask_t full = full_mask(n);
  WeibullCheck out;
  std::vector<double> mu(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    mu[static_cast<std::size_t>(i)] = q[full ^ (mask_t{1} << i)];
    if (!(mu[static_cast<std::size_t>(i)] > 0.0)) {
      out.compatible = false;
      out.reason = "positivity condition fails: q(" +
                   format_subset(full ^ (mask_t{1} << i), n) + ") = " +
                   std::to_string(mu[static_cast<std::size_t>(i)]) +
                   " must be strictly positive";
      return out;
    }
  }
  // Rebuild the table from the candidate rates and measure the worst
  // disagreement over nonempty subsets.
  const auto rebuilt = quality_values_from_additive_weights(mu);
  double worst = 0.0;
  mask_t worst_set = 0;
  for (mask_t s = 1; s <= full; ++s) {
    const double dev = std::abs(q[s] - rebuilt[s]);
    if (dev > worst) {
      worst = dev;
      worst_set = s;
    }
  }
  out.max_deviation = worst;
  if (worst > tol) {
    out.compatible = false;
    out.reason = "reconstruction identity fails at " + format_subset(worst_set, n) +
                 ": |deviation| = " + std::to_string(worst) + " > tol " + std::to_string(tol);
    return out;
  }
  out.compatible = true;
  out.recovered_rates = std::move(mu);
  return out;
}

double shortest_lifetime_in_set_probability(double alpha, const std::vector<double>& lambdas,
                                            mask_t s) {
  LifetimeModel model = LifetimeModel::weibull(alpha, lambdas);
  const int n = model.n;
  if (s & ~full_mask(n))
    throw_mismatch("subset " + format_subset(s, kMaxComponents) +
                   " uses components beyond n=" + std::to_string(n));
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = std::pow(lambdas[static_cast<std::size_t>(i)], alpha);
    den += w;
    if (s & (mask_t{1} << i)) num += w;
  }
  if (s == full_mask(n)) return 1.0;
  return num / den;
}

NormalizedQuality tilde(const QualityFunction& q) {
  NormalizedQuality out;
  out.n = q.n();
  out.values.resize(table_size(q.n()));
  for (mask_t m = 0; m < out.values.size(); ++m)
    out.values[m] = binomial(q.n(), cardinality(m)) * q[m];
  return out;
}

QualityFunction normalize_levels(const QualityFunction& q) {
  const int n = q.n();
  std::vector<double> values = q.values();
  std::vector<std::vector<mask_t>> levels(static_cast<std::size_t>(n) + 1);
  for (mask_t m = 0; m < values.size(); ++m)
    levels[static_cast<std::size_t>(cardinality(m))].push_back(m);
  for (int k = 1; k < n; ++k) {
    const auto& level = levels[static_cast<std::size_t>(k)];
    double total = 0.0;
    for (mask_t m : level) total += values[m];
    if (!(total > 0.0))
      throw_numeric("cannot normalize level " + std::to_string(k) +
                    ": its raw sum is not positive");
    double partial = 0.0;
    for (std::size_t i = 0; i + 1 < level.size(); ++i) {
      values[level[i]] /= total;
      partial += values[level[i]];
    }
    // The last entry absorbs the residual, nudged so the ascending-order
    // sum of the level is exactly 1.
    double last = 1.0 - partial;
    while (partial + last > 1.0) last = std::nextafter(last, -1.0);
    while (partial + last < 1.0) last = std::nextafter(last, 2.0);
    values[level.back()] = last;
  }
  values[0] = 1.0;
  values[full_mask(n)] = 1.0;
  return QualityFunction::computed(n, std::move(values), q.route(), 1e-15);
}

}  // namespace sigcore
