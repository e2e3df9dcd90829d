#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigcore/common.hpp"

namespace sigcore {

/// One component's lifetime law. All laws are absolutely continuous with
/// F(0) = 0 and strictly increasing F on the support, so quantile is a
/// true inverse there. Parameters are validated at construction.
class Marginal {
 public:
  enum class Kind { weibull, exponential, uniform, lognormal };

  /// F(t) = 1 - exp(-(rate * t)^shape).
  static Marginal weibull(double shape, double rate);
  static Marginal exponential(double rate);
  static Marginal uniform(double a, double b);
  static Marginal lognormal(double mu, double sigma);

  Kind kind() const { return kind_; }
  double param1() const { return p1_; }  // shape / rate / a / mu
  double param2() const { return p2_; }  // rate / -  / b / sigma

  double pdf(double t) const;
  double cdf(double t) const;
  double quantile(double p) const;

  /// A point by which all but 1e-3 of the mass has been spent; used by
  /// diagnostics that need a finite horizon.
  double upper_quantile_999() const { return quantile(0.999); }

  std::string describe() const;

 private:
  Marginal(Kind k, double p1, double p2) : kind_(k), p1_(p1), p2_(p2) {}
  Kind kind_;
  double p1_;
  double p2_;
};

/// Joint lifetime-law description. `iid` and `exchangeable` carry no
/// distributional data (none is needed for the quality function) and are
/// therefore not samplable; `order_probs` pins the law through the n!
/// ordering probabilities, which is all the quality function can see.
struct LifetimeModel {
  enum class Kind { iid, exchangeable, independent, weibull, order_probs };

  Kind kind = Kind::iid;
  int n = 0;  // 0 = unspecified (allowed for iid/exchangeable only)

  // independent
  std::vector<Marginal> marginals;

  // weibull: common shape, per-component rates
  double alpha = 1.0;
  std::vector<double> lambdas;

  // order_probs: 0-based permutations listed with their probabilities;
  // permutations not listed have probability zero.
  std::vector<std::pair<std::vector<int>, double>> order_probs;

  static LifetimeModel iid(int n = 0);
  static LifetimeModel exchangeable(int n = 0);
  static LifetimeModel independent(std::vector<Marginal> marginals);
  static LifetimeModel weibull(double alpha, std::vector<double> lambdas);
  /// Permutations are 1-based on input; probabilities must be nonnegative
  /// and sum to 1 within 1e-12.
  static LifetimeModel order_probabilities(
      int n, const std::vector<std::pair<std::vector<int>, double>>& probs);

  bool samplable() const {
    return kind == Kind::independent || kind == Kind::weibull;
  }
  /// Per-component marginals of a samplable model.
  std::vector<Marginal> component_marginals() const;
  std::string kind_name() const;
};

/// Row-major count x n matrix of lifetime draws.
struct SampleMatrix {
  std::size_t rows = 0;
  int n = 0;
  std::vector<double> data;
  double operator()(std::size_t r, int i) const {
    return data[r * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
  }
};

/// Inverse-transform sampling from a single xoshiro256++ stream seeded by
/// `seed`; row r consumes n uniforms in component order. Deterministic.
/// Models without marginals are refused.
SampleMatrix sample(const LifetimeModel& model, std::uint64_t seed, std::size_t count);

}  // namespace sigcore
