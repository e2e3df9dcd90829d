#pragma once

#include <functional>

#include "sigcore/common.hpp"

namespace sigcore {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // sum of accepted per-interval estimates
  bool converged = false;
  int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (7/15) bisection on [a, b] to an absolute
/// tolerance. Splits the worst interval first is not needed here: plain
/// depth-first bisection with halved budgets keeps evaluation order (and
/// hence the result) deterministic. Gives up after `max_subdivisions`
/// splits and reports converged = false.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double abs_tol,
                                    int max_subdivisions = 1 << 16);

/// Integral over [0, inf) via the rational map t = u / (1 - u), which
/// folds the half line onto (0, 1) without choosing a truncation point.
QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     double abs_tol, int max_subdivisions = 1 << 16);

}  // namespace sigcore
