#pragma once

#include <cmath>
#include <string_view>

#include "adaptive_integrate.hpp"
#include "compensated_sum.hpp"
#include "functions.hpp"
#include "interval.hpp"

namespace simpsonq {

inline constexpr double kDefaultRefTol = 1e-12;

/// Simpson's rule in mean-value form: (1/6)[f(a) + 4 f((a+b)/2) + f(b)].
/// Multiply by (b - a) for the integral estimate.
inline double simpson_single(const TestFunction& f, const Interval& iv) {
  const double fa = checked_eval(f.f, iv.a());
  const double fm = checked_eval(f.f, iv.midpoint());
  const double fb = checked_eval(f.f, iv.b());
  return (fa + 4.0 * fm + fb) / 6.0;
}

enum class SimpsonVariant {
  standard,
  /// Midpoint weight 1 instead of 4, reproducing a known misprint of the
  /// composite formula. Not a quadrature rule: it integrates 1 to (b-a)/2.
  unit_midpoint_weight,
};

/// Composite Simpson sum over a partition, integral scale. Panels are
/// accumulated left to right with compensated summation.
inline double simpson_composite(const TestFunction& f, const Partition& d,
                                SimpsonVariant variant = SimpsonVariant::standard) {
  const double mid_weight = variant == SimpsonVariant::standard ? 4.0 : 1.0;
  const auto pts = d.points();
  CompensatedSum sum;
  double f_left = checked_eval(f.f, pts[0]);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double width = pts[i + 1] - pts[i];
    const double f_mid = checked_eval(f.f, pts[i] + 0.5 * width);
    const double f_right = checked_eval(f.f, pts[i + 1]);
    sum += (f_left + mid_weight * f_mid + f_right) / 6.0 * width;
    f_left = f_right;
  }
  return sum.value();
}

enum class ReferencePath { exact, adaptive };

constexpr std::string_view to_string(ReferencePath p) noexcept {
  return p == ReferencePath::exact ? "exact" : "adaptive";
}

struct ReferenceIntegral {
  double value = 0.0;
  double error_estimate = 0.0;
  ReferencePath path = ReferencePath::exact;
};

/// Ground-truth integral: the attached closed form when present, otherwise
/// adaptive Gauss-Kronrod to absolute tolerance `tol`.
inline ReferenceIntegral reference_integral(const TestFunction& f, const Interval& iv,
                                            double tol = kDefaultRefTol) {
  if (!(tol > 0.0)) {
    throw DomainError("reference_integral: tol must be positive");
  }
  if (f.exact_integral) {
    const double v = (*f.exact_integral)(iv);
    if (!std::isfinite(v)) {
      throw EvaluationError("exact integral is not finite", iv.a());
    }
    return {v, 0.0, ReferencePath::exact};
  }
  const auto r = adaptive_integrate(f.f, iv.a(), iv.b(), {.abs_tol = tol});
  return {r.value, r.error_estimate, ReferencePath::adaptive};
}

/// Signed mean(f) - simpson(f) on iv.
inline double mean_minus_simpson(const TestFunction& f, const Interval& iv,
                                 double tol = kDefaultRefTol) {
  const double mean = reference_integral(f, iv, tol).value / iv.width();
  return mean - simpson_single(f, iv);
}

/// |mean(f) - simpson(f)|: the quantity every mean-scale bound controls.
inline double simpson_defect(const TestFunction& f, const Interval& iv,
                             double tol = kDefaultRefTol) {
  return std::abs(mean_minus_simpson(f, iv, tol));
}

}  // namespace simpsonq
