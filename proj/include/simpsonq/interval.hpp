#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace simpsonq {

/// Closed integration domain [a, b] with finite a < b.
class Interval {
 public:
  Interval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw DomainError("interval endpoints must be finite");
    }
    if (!(a < b)) {
      throw DomainError("interval requires a < b, got [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
    }
  }

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] double width() const noexcept { return b_ - a_; }
  [[nodiscard]] double midpoint() const noexcept { return a_ + 0.5 * (b_ - a_); }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

/// Division a = x0 < x1 < ... < xn = b.
class Partition {
 public:
  explicit Partition(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
      throw DomainError("partition needs at least two points");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!std::isfinite(points_[i])) {
        throw DomainError("partition points must be finite");
      }
      if (i > 0 && !(points_[i - 1] < points_[i])) {
        throw DomainError("partition points must be strictly increasing");
      }
    }
  }

  /// n equal panels over iv.
  static Partition uniform(const Interval& iv, std::size_t panels) {
    if (panels == 0) {
      throw DomainError("uniform partition needs at least one panel");
    }
    std::vector<double> pts(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i) {
      pts[i] = iv.a() + iv.width() * static_cast<double>(i) / static_cast<double>(panels);
    }
    pts.back() = iv.b();
    return Partition(std::move(pts));
  }

  [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
  [[nodiscard]] std::size_t panels() const noexcept { return points_.size() - 1; }
  [[nodiscard]] Interval span_interval() const { return {points_.front(), points_.back()}; }
  [[nodiscard]] Interval panel(std::size_t i) const { return {points_[i], points_[i + 1]}; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<double> points_;
};

}  // namespace simpsonq
