#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "adaptive_integrate.hpp"
#include "errors.hpp"

namespace simpsonq {

inline constexpr double kLn2 = 0.693147180559945309417232121458176568;
inline constexpr double kLn3 = 1.098612288668109691395245236922525704;

/// Peano kernel of Simpson's rule for the second derivative:
///   mean(f) - simpson(f) = (b-a)^2 * ∫_0^1 p(t) f''(tb + (1-t)a) dt
/// with p(t) = t(3t-1)/6 on [0, 1/2] and (t-1)(3t-2)/6 on [1/2, 1].
/// Both branches equal 1/24 at t = 1/2.
inline double kernel_p(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("kernel_p: t must lie in [0, 1]");
  }
  if (t <= 0.5) {
    return t * (3.0 * t - 1.0) / 6.0;
  }
  return (t - 1.0) * (3.0 * t - 2.0) / 6.0;
}

enum class MomentWeight { one, inv_t, inv_one_minus_t };
enum class MomentRange { left_half, right_half, full };

inline constexpr std::array<MomentWeight, 3> kAllWeights = {
    MomentWeight::one, MomentWeight::inv_t, MomentWeight::inv_one_minus_t};
inline constexpr std::array<MomentRange, 3> kAllRanges = {
    MomentRange::left_half, MomentRange::right_half, MomentRange::full};

constexpr std::string_view to_string(MomentWeight w) noexcept {
  switch (w) {
    case MomentWeight::one: return "one";
    case MomentWeight::inv_t: return "inv_t";
    case MomentWeight::inv_one_minus_t: return "inv_one_minus_t";
  }
  return "?";
}

constexpr std::string_view to_string(MomentRange r) noexcept {
  switch (r) {
    case MomentRange::left_half: return "left_half";
    case MomentRange::right_half: return "right_half";
    case MomentRange::full: return "full";
  }
  return "?";
}

namespace detail {

// ln of the ratios between adjacent kernel knots; ln 2 and ln 3 only enter
// through these.
inline constexpr double kLnFourThirds = 0.287682072451780927439219005993827;  // 2 ln 2 - ln 3
inline constexpr double kLnThreeHalves = 0.405465108108164381978013115464349;  // ln 3 - ln 2

// Integral of 6p(t) w(t) over [lo, hi] inside one branch, from the
// antiderivatives below, with differences factored through (hi - lo) so the
// result carries no cancellation from the absolute antiderivative values.
//
// Left branch 6p = 3t^2 - t, right branch 6p = 3t^2 - 5t + 2. Division by
// the weight's linear factor was carried out by hand:
//   (3t^2 - t)/t          = 3t - 1                 -> 3t^2/2 - t
//   (3t^2 - t)/(1-t)      = -3t - 2 + 2/(1-t)      -> -3t^2/2 - 2t - 2 ln(1-t)
//   (3t^2 - 5t + 2)/t     = 3t - 5 + 2/t           -> 3t^2/2 - 5t + 2 ln t
//   (3t^2 - 5t + 2)/(1-t) = 2 - 3t                 -> 2t - 3t^2/2
// `log_ratio` is ln(hi/lo) on the right branch and ln((1-hi)/(1-lo)) on the left.
inline double left_piece(MomentWeight w, double lo, double hi, double log_ratio) {
  const double h = hi - lo;
  switch (w) {
    case MomentWeight::one: return h * ((hi * hi + hi * lo + lo * lo) - 0.5 * (hi + lo));
    case MomentWeight::inv_t: return h * (1.5 * (hi + lo) - 1.0);
    case MomentWeight::inv_one_minus_t: return h * (-1.5 * (hi + lo) - 2.0) - 2.0 * log_ratio;
  }
  return 0.0;
}

inline double right_piece(MomentWeight w, double lo, double hi, double log_ratio) {
  const double h = hi - lo;
  switch (w) {
    case MomentWeight::one:
      return h * ((hi * hi + hi * lo + lo * lo) - 2.5 * (hi + lo) + 2.0);
    case MomentWeight::inv_t: return h * (1.5 * (hi + lo) - 5.0) + 2.0 * log_ratio;
    case MomentWeight::inv_one_minus_t: return h * (2.0 - 1.5 * (hi + lo));
  }
  return 0.0;
}

// 6p < 0 on (0, 1/3) and (2/3, 1), > 0 on (1/3, 2/3).
inline double left_half_closed(MomentWeight w) {
  constexpr double third = 1.0 / 3.0;
  const double neg = left_piece(w, 0.0, third, -kLnThreeHalves);  // ln(2/3)
  const double pos = left_piece(w, third, 0.5, -kLnFourThirds);   // ln(3/4)
  return pos - neg;
}

inline double right_half_closed(MomentWeight w) {
  constexpr double two_thirds = 2.0 / 3.0;
  const double pos = right_piece(w, 0.5, two_thirds, kLnFourThirds);
  const double neg = right_piece(w, two_thirds, 1.0, kLnThreeHalves);
  return pos - neg;
}

}  // namespace detail

/// Exact value of ∫ |6p(t)| w(t) dt over the given half (or all) of [0, 1].
inline double moment_closed(MomentWeight weight, MomentRange range) {
  switch (range) {
    case MomentRange::left_half: return detail::left_half_closed(weight);
    case MomentRange::right_half: return detail::right_half_closed(weight);
    case MomentRange::full:
      return detail::left_half_closed(weight) + detail::right_half_closed(weight);
  }
  return 0.0;
}

/// Independent quadrature of the same moment. The weight's pole at t = 0 or
/// t = 1 is cancelled analytically before evaluation, so the integrand is
/// bounded everywhere.
inline double moment_numeric(MomentWeight weight, MomentRange range, double tol) {
  if (!(tol > 0.0)) {
    throw DomainError("moment_numeric: tol must be positive");
  }
  const auto integrand = [weight](double t) {
    const bool left = t <= 0.5;
    switch (weight) {
      case MomentWeight::one:
        return left ? std::abs(t * (3.0 * t - 1.0)) : std::abs((t - 1.0) * (3.0 * t - 2.0));
      case MomentWeight::inv_t:
        return left ? std::abs(3.0 * t - 1.0) : std::abs((t - 1.0) * (3.0 * t - 2.0)) / t;
      case MomentWeight::inv_one_minus_t:
        return left ? std::abs(t * (3.0 * t - 1.0)) / (1.0 - t) : std::abs(3.0 * t - 2.0);
    }
    return 0.0;
  };
  static constexpr std::array<double, 3> kBreaks = {1.0 / 3.0, 0.5, 2.0 / 3.0};
  const double lo = range == MomentRange::right_half ? 0.5 : 0.0;
  const double hi = range == MomentRange::left_half ? 0.5 : 1.0;
  return adaptive_integrate(integrand, lo, hi, {.abs_tol = tol}, kBreaks).value;
}

/// Every moment the bound constants are built from.
struct KernelMoments {
  double abs_half;       // ∫_0^{1/2} |6p| dt = 1/27
  double inv_t_left;     // 5/24
  double inv_t_right;    // 6 ln 2 - 4 ln 3 + 7/24
  double inv_omt_left;   // = inv_t_right
  double inv_omt_right;  // = inv_t_left
  double inv_t_total;    // (12 ln 2 - 8 ln 3 + 1) / 2
  double inv_omt_total;
};

inline KernelMoments kernel_moments() {
  using enum MomentWeight;
  using enum MomentRange;
  return {moment_closed(one, left_half),
          moment_closed(inv_t, left_half),
          moment_closed(inv_t, right_half),
          moment_closed(inv_one_minus_t, left_half),
          moment_closed(inv_one_minus_t, right_half),
          moment_closed(inv_t, full),
          moment_closed(inv_one_minus_t, full)};
}

/// (12 ln 2 - 8 ln 3 + 1) / 2, the constant of the first-order bound.
inline double q_bound_constant() { return moment_closed(MomentWeight::inv_t, MomentRange::full); }

/// 6 ln 2 - 4 ln 3 + 7/24, the cross-weight of the power-mean bound.
inline double power_mean_cross_constant() {
  return moment_closed(MomentWeight::inv_t, MomentRange::right_half);
}

/// 5/24, the same-side weight of the power-mean bound.
inline double power_mean_same_constant() {
  return moment_closed(MomentWeight::inv_t, MomentRange::left_half);
}

}  // namespace simpsonq
