#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace xroads::numerics {

using Function = std::function<double(double)>;

struct QuadratureSettings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 200;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Integration domain on the real line: the full line or [a, +inf).
struct LineDomain {
  bool full_line = true;
  double start = 0.0;

  static LineDomain full() { return {true, 0.0}; }
  static LineDomain half_from(double a) { return {false, a}; }
};

/// Gamma function. Throws PoleError at non-positive integers.
double gamma_fn(double x);

/// 1 / Gamma(x); zero at the poles of Gamma.
double rgamma(double x);

/// Rising factorial (x)_n = x (x+1) ... (x+n-1); (x)_0 = 1.
double pochhammer(double x, int n);

double binomial(int n, int k);

/// Regularized Gauss hypergeometric function 2F1(a, b; c; z) / Gamma(c) for
/// real z <= 0. Direct series for |z| <= 0.9, Pfaff transformation
/// z -> z / (z - 1) beyond. Throws NonConvergence if the series does not
/// settle.
double hyp2f1_regularized(double a, double b, double c, double z);

/// Adaptive 15-point Gauss-Kronrod quadrature on a finite interval with a
/// global subdivision budget. Throws ToleranceNotMet when the budget runs out.
QuadratureResult integrate(const Function& f, double a, double b, const QuadratureSettings& settings = {});

/// Integral over the full line or a half line. Finite pieces between the
/// (optional) breakpoints use adaptive Gauss-Kronrod; the unbounded tails use
/// a double-exponential (exp-sinh) rule, which copes with algebraic decay such
/// as |z|^-alpha for alpha close to 1. Discontinuities of `f` must be listed
/// in `breakpoints`.
QuadratureResult integrate_line(const Function& f, LineDomain domain,
                                std::span<const double> breakpoints = {},
                                const QuadratureSettings& settings = {});

/// n-th derivative (1 <= n <= 4) by central differences with two levels of
/// Richardson extrapolation. Throws OrderTooHigh for n > 4.
double derivative_n(const Function& f, double x, int n);

/// Derivatives of exp(g) from the derivatives of g.
///
/// `g_derivs[m]` holds g^(m+1) (first derivative at index 0) and `value` is
/// exp(g). Returns f^(0..n) where n = g_derivs.size(). Scaled derivatives
/// (x^m g^(m)) give scaled results, since the recurrence is homogeneous.
std::vector<double> exp_chain_derivatives(double value, std::span<const double> g_derivs);

}  // namespace xroads::numerics
