#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "polynomial.hpp"
#include "rng.hpp"

namespace simpsonq {

using RealFunction = std::function<double(double)>;
using IntegralFunction = std::function<double(const Interval&)>;

enum class Provenance { catalog, generated, custom };

/// Replayable description of a test function.
///
/// Exactly one of `builtin` (a catalog tag such as "x^4", "exp",
/// "gauss_spike") or the polynomial fields is meaningful. Polynomial
/// functions are stored through their second derivative plus the two
/// integration constants so that rebuilding yields bit-identical f''.
struct FunctionSpec {
  std::string name;
  std::optional<std::string> builtin;
  std::vector<double> d2f_coefficients;
  double slope = 0.0;
  double offset = 0.0;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;
};

struct TestFunction {
  std::string name;
  RealFunction f;
  RealFunction d2f;
  std::optional<RealFunction> d4f;
  std::optional<IntegralFunction> exact_integral;
  Provenance provenance = Provenance::custom;
  /// False for catalog entries built to fail the Q-class check.
  bool expected_q_member = true;
  /// Absent for ad-hoc functions that cannot be replayed from a report.
  std::optional<FunctionSpec> spec;
};

/// g(x), throwing EvaluationError when the value is not finite.
inline double checked_eval(const RealFunction& g, double x, std::string_view what = "function") {
  const double y = g(x);
  if (!std::isfinite(y)) {
    throw EvaluationError(std::string(what) + " evaluated to a non-finite value", x);
  }
  return y;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/// f with f'' = `second_derivative`, f'(0) = slope, f(0) = offset.
inline TestFunction make_polynomial_function(std::string name, const Polynomial& second_derivative,
                                             double slope, double offset,
                                             Provenance provenance = Provenance::custom,
                                             std::optional<std::uint64_t> seed = std::nullopt) {
  const Polynomial f = second_derivative.antiderivative(slope).antiderivative(offset);
  const Polynomial d4f = second_derivative.derivative().derivative();
  TestFunction tf;
  tf.name = name;
  tf.f = f;
  tf.d2f = second_derivative;
  tf.d4f = RealFunction(d4f);
  tf.exact_integral = [f](const Interval& iv) { return f.integral(iv.a(), iv.b()); };
  tf.provenance = provenance;
  tf.spec = FunctionSpec{std::move(name), std::nullopt, second_derivative.coefficients(), slope,
                         offset, seed};
  return tf;
}

namespace detail {

inline TestFunction monomial(unsigned k) {
  std::vector<double> coeffs(k + 1, 0.0);
  coeffs[k] = 1.0;
  const Polynomial p(std::move(coeffs));
  const Polynomial d2 = p.derivative().derivative();
  const Polynomial d4 = d2.derivative().derivative();
  const std::string tag = "x^" + std::to_string(k);
  TestFunction tf;
  tf.name = tag;
  tf.f = p;
  tf.d2f = d2;
  tf.d4f = RealFunction(d4);
  tf.exact_integral = [p](const Interval& iv) { return p.integral(iv.a(), iv.b()); };
  tf.provenance = Provenance::catalog;
  tf.spec = FunctionSpec{tag, tag, {}, 0.0, 0.0, std::nullopt};
  return tf;
}

inline TestFunction exponential() {
  const auto e = [](double x) { return std::exp(x); };
  TestFunction tf;
  tf.name = "exp";
  tf.f = e;
  tf.d2f = e;
  tf.d4f = RealFunction(e);
  // No exact integral attached: the reference integrator handles it.
  tf.provenance = Provenance::catalog;
  tf.spec = FunctionSpec{"exp", "exp", {}, 0.0, 0.0, std::nullopt};
  return tf;
}

// f'' = exp(-100 (x - 1/2)^2): a narrow bump that violates the Q inequality
// on any interval that straddles it with room to spare.
inline TestFunction gauss_spike() {
  constexpr double kScale = 100.0;
  constexpr double kC = 0.088622692545275801364908374167057;  // sqrt(pi) / 20
  TestFunction tf;
  tf.name = "gauss_spike";
  tf.f = [](double x) {
    const double u = x - 0.5;
    return u * kC * std::erf(10.0 * u) + std::exp(-kScale * u * u) / 200.0;
  };
  tf.d2f = [](double x) {
    const double u = x - 0.5;
    return std::exp(-kScale * u * u);
  };
  tf.d4f = RealFunction([](double x) {
    const double u = x - 0.5;
    return (40000.0 * u * u - 200.0) * std::exp(-kScale * u * u);
  });
  tf.provenance = Provenance::catalog;
  tf.expected_q_member = false;
  tf.spec = FunctionSpec{"gauss_spike", "gauss_spike", {}, 0.0, 0.0, std::nullopt};
  return tf;
}

}  // namespace detail

/// Monomials x^0..x^8, exp(x) and the non-member gauss_spike.
inline std::vector<TestFunction> catalog() {
  std::vector<TestFunction> out;
  for (unsigned k = 0; k <= 8; ++k) {
    out.push_back(detail::monomial(k));
  }
  out.push_back(detail::exponential());
  out.push_back(detail::gauss_spike());
  return out;
}

/// Random polynomial f whose f'' is a positive constant plus a nonnegative
/// combination of even powers of affine terms. Such an f'' is nonnegative
/// and convex, hence |f''| and |f''|^q (q >= 1) belong to Q(I) on every I.
/// deg f <= degree_budget.
inline TestFunction generate_qclass_function(std::uint64_t seed, unsigned degree_budget = 8,
                                             double coeff_scale = 1.0) {
  if (degree_budget < 2) {
    throw DomainError("generate_qclass_function: degree_budget must be at least 2");
  }
  if (!(coeff_scale > 0.0) || !std::isfinite(coeff_scale)) {
    throw DomainError("generate_qclass_function: coeff_scale must be positive");
  }
  Rng rng(seed);
  Polynomial d2(std::vector<double>{coeff_scale * (0.05 + rng.uniform())});
  const unsigned max_half_power = (degree_budget - 2) / 2;
  if (max_half_power > 0) {
    const auto terms = 1 + rng.below(3);
    for (std::uint64_t i = 0; i < terms; ++i) {
      const auto power = static_cast<unsigned>(2 * (1 + rng.below(max_half_power)));
      const double alpha = rng.uniform(-1.0, 1.0);
      const double beta = rng.uniform(-1.0, 1.0);
      const double weight = coeff_scale * rng.uniform();
      d2 = d2 + weight * Polynomial::affine_power(alpha, beta, power);
    }
  }
  const double slope = coeff_scale * rng.uniform(-1.0, 1.0);
  const double offset = coeff_scale * rng.uniform(-1.0, 1.0);
  return make_polynomial_function("gen-" + std::to_string(seed), d2, slope, offset,
                                  Provenance::generated, seed);
}

/// Rebuilds a function from its replay record.
inline TestFunction make_function(const FunctionSpec& spec) {
  if (spec.builtin) {
    const std::string& tag = *spec.builtin;
    if (tag == "exp") {
      return detail::exponential();
    }
    if (tag == "gauss_spike") {
      return detail::gauss_spike();
    }
    if (tag.size() > 2 && tag.starts_with("x^")) {
      int k = -1;
      const auto digits = std::string_view(tag).substr(2);
      const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
      if (ec == std::errc{} && end == digits.data() + digits.size() && k >= 0 && k <= 64 &&
          "x^" + std::to_string(k) == tag) {
        return detail::monomial(static_cast<unsigned>(k));
      }
    }
    throw SchemaError("unknown builtin function tag '" + tag + "'");
  }
  if (spec.d2f_coefficients.empty()) {
    throw SchemaError("function spec '" + spec.name + "' has neither builtin tag nor coefficients");
  }
  return make_polynomial_function(spec.name, Polynomial(spec.d2f_coefficients), spec.slope,
                                  spec.offset,
                                  spec.seed ? Provenance::generated : Provenance::custom,
                                  spec.seed);
}

/// g(y) = f(alpha y + beta), alpha > 0. Carries derivatives and the exact
/// integral through the substitution; not replayable.
inline TestFunction affine_pullback(const TestFunction& f, double alpha, double beta) {
  if (!(alpha > 0.0)) {
    throw DomainError("affine_pullback: alpha must be positive");
  }
  TestFunction g;
  g.name = f.name + "∘affine";
  g.f = [f = f.f, alpha, beta](double y) { return f(alpha * y + beta); };
  g.d2f = [d2 = f.d2f, alpha, beta](double y) { return alpha * alpha * d2(alpha * y + beta); };
  if (f.d4f) {
    g.d4f = RealFunction([d4 = *f.d4f, alpha, beta](double y) {
      return alpha * alpha * alpha * alpha * d4(alpha * y + beta);
    });
  }
  if (f.exact_integral) {
    g.exact_integral = [ex = *f.exact_integral, alpha, beta](const Interval& iv) {
      return ex(Interval(alpha * iv.a() + beta, alpha * iv.b() + beta)) / alpha;
    };
  }
  g.expected_q_member = f.expected_q_member;
  return g;
}

// ---------------------------------------------------------------------------
// Q-class membership by sampling
// ---------------------------------------------------------------------------

enum class QVerdict { pass, fail, inconclusive };

/// "pass (sampled)": a pass is a lattice certificate, never a proof.
constexpr std::string_view to_string(QVerdict v) noexcept {
  switch (v) {
    case QVerdict::pass: return "pass (sampled)";
    case QVerdict::fail: return "fail";
    case QVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct QClassReport {
  Interval interval{0.0, 1.0};
  int grid_x = 0;
  int grid_t = 0;
  double tol = 0.0;
  /// min over the lattice of g(x)/t + g(y)/(1-t) - g(tx + (1-t)y).
  double worst_margin = std::numeric_limits<double>::infinity();
  double worst_x = 0.0;
  double worst_y = 0.0;
  double worst_t = 0.0;
  bool nonneg_ok = true;
  QVerdict verdict = QVerdict::pass;
};

/// Samples the Q-class inequality g(tx + (1-t)y) <= g(x)/t + g(y)/(1-t)
/// on grid_x equispaced nodes (endpoints included) squared, times grid_t
/// values t = k/(grid_t+1), k = 1..grid_t, plus g >= -tol at the nodes.
///
/// Verdict: fail if nonnegativity fails or the worst margin is below -tol;
/// inconclusive if the worst margin is in [-tol, 0); pass otherwise.
inline QClassReport qclass_check(const RealFunction& g, const Interval& iv, int grid_x, int grid_t,
                                 double tol) {
  if (grid_x < 3 || grid_t < 3) {
    throw DomainError("qclass_check: grid_x and grid_t must be at least 3");
  }
  if (!(tol >= 0.0)) {
    throw DomainError("qclass_check: tol must be nonnegative");
  }
  QClassReport report;
  report.interval = iv;
  report.grid_x = grid_x;
  report.grid_t = grid_t;
  report.tol = tol;

  std::vector<double> xs(static_cast<std::size_t>(grid_x));
  std::vector<double> gs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = iv.a() + iv.width() * static_cast<double>(i) / static_cast<double>(grid_x - 1);
  }
  xs.back() = iv.b();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    gs[i] = checked_eval(g, xs[i], "Q-check function");
    if (gs[i] < -tol) {
      report.nonneg_ok = false;
    }
  }

  for (int k = 1; k <= grid_t; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(grid_t + 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const double z = t * xs[i] + (1.0 - t) * xs[j];
        const double lhs = checked_eval(g, z, "Q-check function");
        const double margin = gs[i] / t + gs[j] / (1.0 - t) - lhs;
        if (margin < report.worst_margin) {
          report.worst_margin = margin;
          report.worst_x = xs[i];
          report.worst_y = xs[j];
          report.worst_t = t;
        }
      }
    }
  }

  if (!report.nonneg_ok || report.worst_margin < -tol) {
    report.verdict = QVerdict::fail;
  } else if (report.worst_margin < 0.0) {
    report.verdict = QVerdict::inconclusive;
  } else {
    report.verdict = QVerdict::pass;
  }
  return report;
}

}  // namespace simpsonq
