#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace simpsonq {

/// Dense polynomial, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {}

  [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return c_; }
  [[nodiscard]] std::size_t degree() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }

  [[nodiscard]] double operator()(double x) const noexcept {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * x + *it;
    }
    return acc;
  }

  [[nodiscard]] Polynomial derivative() const {
    if (c_.size() <= 1) {
      return Polynomial({0.0});
    }
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) {
      d[k - 1] = c_[k] * static_cast<double>(k);
    }
    return Polynomial(std::move(d));
  }

  [[nodiscard]] Polynomial antiderivative(double constant = 0.0) const {
    std::vector<double> r(c_.size() + 1);
    r[0] = constant;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      r[k + 1] = c_[k] / static_cast<double>(k + 1);
    }
    return Polynomial(std::move(r));
  }

  /// Mean value over [a, b] in closed form. Uses
  /// (b^{k+1} - a^{k+1}) / ((k+1)(b-a)) = Σ_j b^j a^{k-j} / (k+1),
  /// which has no cancellation when a and b share a sign.
  [[nodiscard]] double mean(double a, double b) const noexcept {
    double total = 0.0;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0.0) {
        continue;
      }
      // Horner on the homogeneous sum: s = a^k + b a^{k-1} + ... + b^k.
      double s = 1.0;
      for (std::size_t j = 0; j < k; ++j) {
        s = s * b + ipow(a, j + 1);
      }
      total += c_[k] * s / static_cast<double>(k + 1);
    }
    return total;
  }

  [[nodiscard]] double integral(double a, double b) const noexcept { return (b - a) * mean(a, b); }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<double> r(std::max(p.c_.size(), q.c_.size()), 0.0);
    for (std::size_t k = 0; k < p.c_.size(); ++k) r[k] += p.c_[k];
    for (std::size_t k = 0; k < q.c_.size(); ++k) r[k] += q.c_[k];
    return Polynomial(std::move(r));
  }

  friend Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> r = p.c_;
    for (double& v : r) v *= s;
    return Polynomial(std::move(r));
  }

  /// (alpha x + beta)^n expanded by the binomial theorem.
  static Polynomial affine_power(double alpha, double beta, unsigned n) {
    std::vector<double> r(n + 1);
    double binom = 1.0;
    for (unsigned k = 0; k <= n; ++k) {
      r[k] = binom * ipow(alpha, k) * ipow(beta, n - k);
      binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return Polynomial(std::move(r));
  }

  static double ipow(double x, std::size_t n) noexcept {
    double r = 1.0;
    while (n > 0) {
      if (n & 1U) r *= x;
      x *= x;
      n >>= 1U;
    }
    return r;
  }

 private:
  std::vector<double> c_;
};

}  // namespace simpsonq
