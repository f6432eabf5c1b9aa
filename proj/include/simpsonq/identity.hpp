#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "adaptive_integrate.hpp"
#include "functions.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"

namespace simpsonq {

/// Signed mean(f) - simpson(f).
inline double lemma1_lhs(const TestFunction& f, const Interval& iv, double tol = kDefaultRefTol) {
  return mean_minus_simpson(f, iv, tol);
}

/// (b-a)^2 ∫_0^1 p(t) f''(tb + (1-t)a) dt by adaptive quadrature split at
/// the kernel's knots 1/3, 1/2, 2/3. Absolute error of the returned value is
/// at most tol (or the roundoff floor of the integrator).
inline double lemma1_rhs(const TestFunction& f, const Interval& iv, double tol = kDefaultRefTol) {
  if (!(tol > 0.0)) {
    throw DomainError("lemma1_rhs: tol must be positive");
  }
  const double a = iv.a();
  const double b = iv.b();
  const double w2 = iv.width() * iv.width();
  const auto integrand = [&](double t) { return kernel_p(t) * f.d2f(t * b + (1.0 - t) * a); };
  static constexpr std::array<double, 3> kKnots = {1.0 / 3.0, 0.5, 2.0 / 3.0};
  return w2 * adaptive_integrate(integrand, 0.0, 1.0, {.abs_tol = tol / w2}, kKnots).value;
}

struct IdentityRecord {
  std::string function;
  Interval interval{0.0, 1.0};
  double lhs_signed = 0.0;
  double rhs_numeric = 0.0;
  double residual = 0.0;
  double tol_used = 0.0;
  /// residual <= identity_tolerance(lhs_signed)
  bool pass = false;
};

/// Acceptance threshold for the identity residual: 1e-9 max(1, |lhs|).
inline double identity_tolerance(double lhs) { return 1e-9 * std::max(1.0, std::abs(lhs)); }

inline IdentityRecord lemma1_residual(const TestFunction& f, const Interval& iv,
                                      double tol = kDefaultRefTol) {
  IdentityRecord r;
  r.function = f.name;
  r.interval = iv;
  r.lhs_signed = lemma1_lhs(f, iv, tol);
  r.rhs_numeric = lemma1_rhs(f, iv, tol);
  r.residual = std::abs(r.lhs_signed - r.rhs_numeric);
  r.tol_used = tol;
  r.pass = r.residual <= identity_tolerance(r.lhs_signed);
  return r;
}

}  // namespace simpsonq
