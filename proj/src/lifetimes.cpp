#include "sigcore/lifetimes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/erf.hpp>

#include "sigcore/rng.hpp"

namespace sigcore {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double p) {
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

void require_finite_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw_domain(std::string(name) + " must be positive and finite");
}

}  // namespace

Marginal Marginal::weibull(double shape, double rate) {
  require_finite_positive(shape, "weibull shape");
  require_finite_positive(rate, "weibull rate");
  return Marginal(Kind::weibull, shape, rate);
}

Marginal Marginal::exponential(double rate) {
  require_finite_positive(rate, "exponential rate");
  return Marginal(Kind::exponential, rate, 0.0);
}

Marginal Marginal::uniform(double a, double b) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw_domain("uniform lower bound must be >= 0");
  if (!(b > a) || !std::isfinite(b)) throw_domain("uniform upper bound must exceed the lower");
  return Marginal(Kind::uniform, a, b);
}

Marginal Marginal::lognormal(double mu, double sigma) {
  if (!std::isfinite(mu)) throw_domain("lognormal mu must be finite");
  require_finite_positive(sigma, "lognormal sigma");
  return Marginal(Kind::lognormal, mu, sigma);
}

double Marginal::pdf(double t) const {
  if (t < 0.0) return 0.0;
  switch (kind_) {
    case Kind::weibull: {
      const double z = p2_ * t;
      return p1_ * p2_ * std::pow(z, p1_ - 1.0) * std::exp(-std::pow(z, p1_));
    }
    case Kind::exponential:
      return p1_ * std::exp(-p1_ * t);
    case Kind::uniform:
      return (t >= p1_ && t <= p2_) ? 1.0 / (p2_ - p1_) : 0.0;
    case Kind::lognormal: {
      if (t <= 0.0) return 0.0;
      const double z = (std::log(t) - p1_) / p2_;
      return std::exp(-0.5 * z * z) / (t * p2_ * std::sqrt(2.0 * M_PI));
    }
  }
  return 0.0;
}

double Marginal::cdf(double t) const {
  if (t <= 0.0) return 0.0;
  switch (kind_) {
    case Kind::weibull:
      return -std::expm1(-std::pow(p2_ * t, p1_));
    case Kind::exponential:
      return -std::expm1(-p1_ * t);
    case Kind::uniform:
      if (t <= p1_) return 0.0;
      if (t >= p2_) return 1.0;
      return (t - p1_) / (p2_ - p1_);
    case Kind::lognormal:
      return normal_cdf((std::log(t) - p1_) / p2_);
  }
  return 0.0;
}

double Marginal::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw_domain("quantile argument must lie in [0,1]");
  switch (kind_) {
    case Kind::weibull:
      if (p == 1.0) return std::numeric_limits<double>::infinity();
      return std::pow(-std::log1p(-p), 1.0 / p1_) / p2_;
    case Kind::exponential:
      if (p == 1.0) return std::numeric_limits<double>::infinity();
      return -std::log1p(-p) / p1_;
    case Kind::uniform:
      return p1_ + p * (p2_ - p1_);
    case Kind::lognormal:
      if (p == 0.0) return 0.0;
      if (p == 1.0) return std::numeric_limits<double>::infinity();
      return std::exp(p1_ + p2_ * normal_quantile(p));
  }
  return 0.0;
}

std::string Marginal::describe() const {
  switch (kind_) {
    case Kind::weibull:
      return "weibull(shape=" + std::to_string(p1_) + ", rate=" + std::to_string(p2_) + ")";
    case Kind::exponential:
      return "exponential(rate=" + std::to_string(p1_) + ")";
    case Kind::uniform:
      return "uniform(" + std::to_string(p1_) + ", " + std::to_string(p2_) + ")";
    case Kind::lognormal:
      return "lognormal(mu=" + std::to_string(p1_) + ", sigma=" + std::to_string(p2_) + ")";
  }
  return "?";
}

LifetimeModel LifetimeModel::iid(int n) {
  if (n != 0) require_component_count(n);
  LifetimeModel m;
  m.kind = Kind::iid;
  m.n = n;
  return m;
}

LifetimeModel LifetimeModel::exchangeable(int n) {
  if (n != 0) require_component_count(n);
  LifetimeModel m;
  m.kind = Kind::exchangeable;
  m.n = n;
  return m;
}

LifetimeModel LifetimeModel::independent(std::vector<Marginal> marginals) {
  require_component_count(static_cast<int>(marginals.size()));
  LifetimeModel m;
  m.kind = Kind::independent;
  m.n = static_cast<int>(marginals.size());
  m.marginals = std::move(marginals);
  return m;
}

LifetimeModel LifetimeModel::weibull(double alpha, std::vector<double> lambdas) {
  require_component_count(static_cast<int>(lambdas.size()));
  require_finite_positive(alpha, "weibull shape alpha");
  for (double l : lambdas) require_finite_positive(l, "weibull rate");
  LifetimeModel m;
  m.kind = Kind::weibull;
  m.n = static_cast<int>(lambdas.size());
  m.alpha = alpha;
  m.lambdas = std::move(lambdas);
  return m;
}

LifetimeModel LifetimeModel::order_probabilities(
    int n, const std::vector<std::pair<std::vector<int>, double>>& probs) {
  require_component_count(n);
  if (n > 8)
    throw_domain("order-probability models are capped at n <= 8 (n! entries); got n=" +
                 std::to_string(n));
  if (probs.empty()) throw_domain("order-probability model needs at least one permutation");
  LifetimeModel m;
  m.kind = Kind::order_probs;
  m.n = n;
  kahan_sum total;
  std::vector<std::vector<int>> seen;
  for (const auto& [perm, p] : probs) {
    if (static_cast<int>(perm.size()) != n)
      throw_domain("permutation length " + std::to_string(perm.size()) +
                   " does not match n=" + std::to_string(n));
    std::vector<int> zero_based(perm.size());
    std::vector<bool> hit(n, false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      const int v = perm[i];
      if (v < 1 || v > n || hit[v - 1])
        throw_domain("entry is not a permutation of 1.." + std::to_string(n));
      hit[v - 1] = true;
      zero_based[i] = v - 1;
    }
    if (!(p >= 0.0) || !std::isfinite(p))
      throw_domain("ordering probabilities must be nonnegative");
    if (std::find(seen.begin(), seen.end(), zero_based) != seen.end())
      throw_domain("duplicate permutation in order-probability model");
    seen.push_back(zero_based);
    total.add(p);
    m.order_probs.emplace_back(std::move(zero_based), p);
  }
  if (std::abs(total.value() - 1.0) > 1e-12)
    throw_domain("ordering probabilities must sum to 1 within 1e-12, got " +
                 std::to_string(total.value()));
  return m;
}

std::vector<Marginal> LifetimeModel::component_marginals() const {
  switch (kind) {
    case Kind::independent:
      return marginals;
    case Kind::weibull: {
      std::vector<Marginal> out;
      out.reserve(lambdas.size());
      for (double l : lambdas) out.push_back(Marginal::weibull(alpha, l));
      return out;
    }
    default:
      throw_mismatch("model '" + kind_name() + "' is not samplable; supply marginals");
  }
}

std::string LifetimeModel::kind_name() const {
  switch (kind) {
    case Kind::iid: return "iid";
    case Kind::exchangeable: return "exchangeable";
    case Kind::independent: return "independent";
    case Kind::weibull: return "weibull";
    case Kind::order_probs: return "order_probs";
  }
  return "?";
}

SampleMatrix sample(const LifetimeModel& model, std::uint64_t seed, std::size_t count) {
  if (count < 1) throw_domain("sample count must be >= 1");
  const auto marginals = model.component_marginals();
  const int n = static_cast<int>(marginals.size());
  SampleMatrix out;
  out.rows = count;
  out.n = n;
  out.data.resize(count * static_cast<std::size_t>(n));
  xoshiro256pp rng(seed);
  for (std::size_t r = 0; r < count; ++r) {
    for (int i = 0; i < n; ++i) {
      out.data[r * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
          marginals[static_cast<std::size_t>(i)].quantile(rng.next_uniform());
    }
  }
  return out;
}

}  // namespace sigcore
