#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "compensated_sum.hpp"
#include "errors.hpp"

namespace simpsonq {

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t segments = 0;
};

struct IntegrationOptions {
  double abs_tol = 1e-12;
  std::size_t max_segments = 4000;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double abs_value;

  bool operator<(const Segment& other) const noexcept { return error < other.error; }
};

template <typename F>
Segment kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const auto eval = [&](double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
      throw EvaluationError("integrand is not finite", x);
    }
    return y;
  };

  const double fc = eval(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(fc) * kKronrodWeights[7];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f1 = eval(center - dx);
    const double f2 = eval(center + dx);
    kronrod += kKronrodWeights[j] * (f1 + f2);
    abs_sum += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) {
      gauss += kGaussWeights[j / 2] * (f1 + f2);
    }
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) integration by interval halving.
///
/// `breakpoints` strictly inside (a, b) are used as initial segment
/// boundaries so piecewise-smooth integrands converge fast. The result's
/// absolute error estimate is at most max(abs_tol, roundoff floor), where the
/// floor is 50 ulp of the integral of |f|; tolerances below the floor are not
/// representable in double precision. Throws OracleFailure when the segment
/// budget is exhausted first.
template <typename F>
IntegrationResult adaptive_integrate(F&& f, double a, double b, const IntegrationOptions& opts,
                                     std::span<const double> breakpoints = {}) {
  if (!(opts.abs_tol > 0.0)) {
    throw DomainError("integration tolerance must be positive");
  }
  if (!(a < b)) {
    throw DomainError("integration bounds must satisfy a < b");
  }

  std::vector<double> cuts{a};
  for (double bp : breakpoints) {
    if (bp > a && bp < b) {
      cuts.push_back(bp);
    }
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Segment> heap;
  double total_error = 0.0;
  double total_abs = 0.0;
  std::size_t evaluations = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto seg = detail::kronrod15(f, cuts[i], cuts[i + 1]);
    evaluations += 15;
    total_error += seg.error;
    total_abs += seg.abs_value;
    heap.push(seg);
  }

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const auto target = [&] { return std::max(opts.abs_tol, 50.0 * kEps * total_abs); };

  while (total_error > target()) {
    if (heap.size() >= opts.max_segments) {
      throw OracleFailure("adaptive integration exhausted " + std::to_string(opts.max_segments) +
                          " segments; error estimate " + std::to_string(total_error));
    }
    const detail::Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw OracleFailure("adaptive integration cannot bisect further near x = " +
                          std::to_string(worst.a));
    }
    heap.pop();
    const auto left = detail::kronrod15(f, worst.a, mid);
    const auto right = detail::kronrod15(f, mid, worst.b);
    evaluations += 30;
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }

  // Sum in left-to-right order so the result does not depend on heap layout.
  std::vector<detail::Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const auto& x, const auto& y) { return x.a < y.a; });
  CompensatedSum value;
  CompensatedSum error;
  for (const auto& s : segments) {
    value += s.value;
    error += s.error;
  }
  return {value.value(), error.value(), evaluations, segments.size()};
}

}  // namespace simpsonq
