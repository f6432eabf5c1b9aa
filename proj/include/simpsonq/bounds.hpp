#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "compensated_sum.hpp"
#include "functions.hpp"
#include "interval.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"

namespace simpsonq {

// Mean-scale bounds (theorem1, theorem2, corollary1_*, classical) control
// |mean(f) - simpson(f)|. Integral-scale bounds (proposition1*,
// classical_composite) control |∫f - S(f, d)|. The two are never mixed.

/// Bounds smaller than this have no meaningful tightness ratio.
inline constexpr double kTightnessFloor = 1e-300;

inline std::optional<double> tightness(double defect, double bound) {
  if (!(bound >= kTightnessFloor)) {
    return std::nullopt;
  }
  return defect / bound;
}

// ---------------------------------------------------------------------------
// Single interval
// ---------------------------------------------------------------------------

/// ((b-a)^2 / 6) * ((12 ln 2 - 8 ln 3 + 1) / 2) * (|f''(a)| + |f''(b)|), from
/// endpoint data. Valid when |f''| is in Q([a, b]).
inline double theorem1_bound(double width, double abs_d2_a, double abs_d2_b) {
  return width * width / 6.0 * q_bound_constant() * (abs_d2_a + abs_d2_b);
}

inline double theorem1_bound(const TestFunction& f, const Interval& iv) {
  const double da = std::abs(checked_eval(f.d2f, iv.a(), "f''"));
  const double db = std::abs(checked_eval(f.d2f, iv.b(), "f''"));
  return theorem1_bound(iv.width(), da, db);
}

/// Power-mean bound, valid when |f''|^q is in Q([a, b]) for a real q >= 1:
///   ((b-a)^2/6) (1/27)^{1-1/q} { [C A^q + (5/24) B^q]^{1/q} + [C B^q + (5/24) A^q]^{1/q} }
/// with A = |f''(a)|, B = |f''(b)|, C = 6 ln 2 - 4 ln 3 + 7/24.
/// Reduces to theorem1_bound at q = 1.
inline double theorem2_bound(double width, double abs_d2_a, double abs_d2_b, double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw DomainError("theorem2_bound: q must be a finite real >= 1");
  }
  const double cross = power_mean_cross_constant();
  const double same = power_mean_same_constant();
  const double scale = std::max(abs_d2_a, abs_d2_b);
  if (scale == 0.0) {
    return 0.0;
  }
  // Factor out the larger endpoint value so |f''|^q cannot overflow.
  const double ra = std::pow(abs_d2_a / scale, q);
  const double rb = std::pow(abs_d2_b / scale, q);
  const double inv_q = 1.0 / q;
  const double brackets =
      std::pow(cross * ra + same * rb, inv_q) + std::pow(cross * rb + same * ra, inv_q);
  const double abs_moment = moment_closed(MomentWeight::one, MomentRange::left_half);
  return width * width / 6.0 * std::pow(abs_moment, 1.0 - inv_q) * scale * brackets;
}

inline double theorem2_bound(const TestFunction& f, const Interval& iv, double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw DomainError("theorem2_bound: q must be a finite real >= 1");
  }
  const double da = std::abs(checked_eval(f.d2f, iv.a(), "f''"));
  const double db = std::abs(checked_eval(f.d2f, iv.b(), "f''"));
  return theorem2_bound(iv.width(), da, db, q);
}

struct MidpointBound {
  double value = 0.0;
  /// f(a) = f(b) = f((a+b)/2) held to 1e-12 relative, so the Simpson mean
  /// collapses to the midpoint value and the bound covers |mean - f(mid)|.
  bool applicable = false;
};

inline MidpointBound corollary1_midpoint_bound(const TestFunction& f, const Interval& iv) {
  const double fa = checked_eval(f.f, iv.a());
  const double fm = checked_eval(f.f, iv.midpoint());
  const double fb = checked_eval(f.f, iv.b());
  const double scale = std::max({std::abs(fa), std::abs(fm), std::abs(fb)});
  const double tol = 1e-12 * scale;
  const bool applicable = std::abs(fa - fm) <= tol && std::abs(fb - fm) <= tol;
  return {theorem1_bound(f, iv), applicable};
}

/// ((b-a)^2 / 3) * ((12 ln 2 - 8 ln 3 + 1) / 2) * M for |f''| <= M on [a, b].
inline double corollary1_uniform_bound(double sup_abs_d2, const Interval& iv) {
  if (!(sup_abs_d2 > 0.0) || !std::isfinite(sup_abs_d2)) {
    throw DomainError("corollary1_uniform_bound: M must be positive");
  }
  return iv.width() * iv.width() / 3.0 * q_bound_constant() * sup_abs_d2;
}

/// max |f''''| over `samples` equispaced points including both endpoints.
inline double fourth_derivative_grid_sup(const TestFunction& f, const Interval& iv,
                                         int samples = 1001) {
  if (!f.d4f) {
    throw InsufficientData("fourth derivative not available for '" + f.name + "'");
  }
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x =
        i + 1 == samples ? iv.b() : iv.a() + iv.width() * static_cast<double>(i) / (samples - 1);
    sup = std::max(sup, std::abs(checked_eval(*f.d4f, x, "f''''")));
  }
  return sup;
}

enum class SupSource { supplied, grid_sup };

constexpr std::string_view to_string(SupSource s) noexcept {
  return s == SupSource::supplied ? "supplied" : "grid-sup";
}

struct ClassicalBound {
  double value = 0.0;
  double m4 = 0.0;
  SupSource source = SupSource::supplied;
};

/// (M4 / 2880) (b-a)^4 with M4 = sup |f''''|, supplied or estimated on a grid.
inline ClassicalBound classical_bound(const TestFunction& f, const Interval& iv,
                                      std::optional<double> m4 = std::nullopt) {
  ClassicalBound out;
  if (m4) {
    if (!(*m4 >= 0.0) || !std::isfinite(*m4)) {
      throw DomainError("classical_bound: M4 must be finite and nonnegative");
    }
    out.m4 = *m4;
    out.source = SupSource::supplied;
  } else if (f.d4f) {
    out.m4 = fourth_derivative_grid_sup(f, iv);
    out.source = SupSource::grid_sup;
  } else {
    throw InsufficientData("classical_bound: neither M4 nor a fourth derivative for '" + f.name +
                           "'");
  }
  const double w2 = iv.width() * iv.width();
  out.value = out.m4 / 2880.0 * w2 * w2;
  return out;
}

// ---------------------------------------------------------------------------
// Composite
// ---------------------------------------------------------------------------

enum class CompositeScale {
  /// Σ (x_{i+1} - x_i)^2 [...]: the printed form of the composite estimate.
  as_printed,
  /// Σ (x_{i+1} - x_i)^3 [...]: panel-wise mean bound times panel width.
  integral,
};

/// ((12 ln 2 - 8 ln 3 + 1) / 12) Σ h_i^p [|f''(x_i)| + |f''(x_{i+1})|],
/// p = 2 (as_printed) or 3 (integral).
inline double proposition1_bound(const TestFunction& f, const Partition& d,
                                 CompositeScale scale = CompositeScale::as_printed) {
  const auto pts = d.points();
  CompensatedSum sum;
  double left = std::abs(checked_eval(f.d2f, pts[0], "f''"));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double h = pts[i + 1] - pts[i];
    const double right = std::abs(checked_eval(f.d2f, pts[i + 1], "f''"));
    const double hp = scale == CompositeScale::as_printed ? h * h : h * h * h;
    sum += hp * (left + right);
    left = right;
  }
  return q_bound_constant() / 6.0 * sum.value();
}

/// (M4 / 90) Σ (x_{i+1} - x_i)^5.
inline double classical_composite_bound(double m4, const Partition& d) {
  if (!(m4 > 0.0) || !std::isfinite(m4)) {
    throw DomainError("classical_composite_bound: M4 must be positive");
  }
  const auto pts = d.points();
  CompensatedSum sum;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double h = pts[i + 1] - pts[i];
    sum += h * h * h * h * h;
  }
  return m4 / 90.0 * sum.value();
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

struct BoundValue {
  double value = 0.0;
  std::optional<double> tightness;
};

struct QBound {
  double q = 1.0;
  double value = 0.0;
  std::optional<double> tightness;
};

/// Every mean-scale certificate for one (function, interval) pair.
struct BoundSet {
  double defect = 0.0;
  BoundValue theorem1;
  std::vector<QBound> theorem2;
  std::optional<BoundValue> corollary1_midpoint;
  std::optional<BoundValue> classical;
  std::optional<double> classical_m4;
  std::optional<SupSource> classical_m4_source;
};

inline BoundSet compute_bound_set(const TestFunction& f, const Interval& iv,
                                  std::span<const double> q_values,
                                  double ref_tol = kDefaultRefTol,
                                  std::optional<double> m4 = std::nullopt) {
  BoundSet bs;
  bs.defect = simpson_defect(f, iv, ref_tol);
  const double da = std::abs(checked_eval(f.d2f, iv.a(), "f''"));
  const double db = std::abs(checked_eval(f.d2f, iv.b(), "f''"));
  const double t1 = theorem1_bound(iv.width(), da, db);
  bs.theorem1 = {t1, tightness(bs.defect, t1)};
  for (double q : q_values) {
    const double v = theorem2_bound(iv.width(), da, db, q);
    bs.theorem2.push_back({q, v, tightness(bs.defect, v)});
  }
  const auto mid = corollary1_midpoint_bound(f, iv);
  if (mid.applicable) {
    bs.corollary1_midpoint = BoundValue{mid.value, tightness(bs.defect, mid.value)};
  }
  if (m4 || f.d4f) {
    const auto cb = classical_bound(f, iv, m4);
    bs.classical = BoundValue{cb.value, tightness(bs.defect, cb.value)};
    bs.classical_m4 = cb.m4;
    bs.classical_m4_source = cb.source;
  }
  return bs;
}

/// Integral-scale certificates for one (function, partition) pair.
struct CompositeBoundRecord {
  Partition partition{std::vector<double>{0.0, 1.0}};
  double error = 0.0;  // |∫f - S(f, d)|
  double proposition1 = 0.0;
  double proposition1_integral = 0.0;
  std::optional<double> classical_composite;
  std::optional<double> m4;
};

inline CompositeBoundRecord compute_composite_record(const TestFunction& f, const Partition& d,
                                                     double ref_tol = kDefaultRefTol,
                                                     std::optional<double> m4 = std::nullopt) {
  CompositeBoundRecord rec;
  rec.partition = d;
  const Interval whole = d.span_interval();
  const double exact = reference_integral(f, whole, ref_tol).value;
  rec.error = std::abs(exact - simpson_composite(f, d));
  rec.proposition1 = proposition1_bound(f, d, CompositeScale::as_printed);
  rec.proposition1_integral = proposition1_bound(f, d, CompositeScale::integral);
  if (!m4 && f.d4f) {
    m4 = fourth_derivative_grid_sup(f, whole);
  }
  rec.m4 = m4;
  if (m4 && *m4 > 0.0) {
    rec.classical_composite = classical_composite_bound(*m4, d);
  }
  return rec;
}

}  // namespace simpsonq
