#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <simpsonq/quadrature.hpp>

using namespace simpsonq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

TestFunction monomial(unsigned k) { return make_function(FunctionSpec{"x^" + std::to_string(k), "x^" + std::to_string(k), {}, 0, 0, {}}); }

TestFunction constant_one() { return make_polynomial_function("one", Polynomial({0.0}), 0.0, 1.0); }

TestFunction random_cubic(Rng& rng) {
  // f = c0 + c1 x + c2 x^2 + c3 x^3 through f'' = 2 c2 + 6 c3 x.
  const double c0 = rng.uniform(-1, 1), c1 = rng.uniform(-1, 1);
  const double c2 = rng.uniform(-1, 1), c3 = rng.uniform(-1, 1);
  return make_polynomial_function("cubic", Polynomial({2 * c2, 6 * c3}), c1, c0);
}

Interval random_interval(Rng& rng, double lo = -5, double hi = 5) {
  for (;;) {
    double a = rng.uniform(lo, hi), b = rng.uniform(lo, hi);
    if (a > b) std::swap(a, b);
    if (b - a > 1e-3) return {a, b};
  }
}

}  // namespace

TEST_CASE("Interval and Partition validate their invariants", "[quadrature]") {
  CHECK_THROWS_AS(Interval(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Interval(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(Interval(0.0, INFINITY), DomainError);
  CHECK_THROWS_AS(Partition({0.0}), DomainError);
  CHECK_THROWS_AS(Partition({0.0, 0.5, 0.5, 1.0}), DomainError);
  const auto u = Partition::uniform(Interval(0.0, 1.0), 4);
  CHECK(u.panels() == 4);
  CHECK(u.points().back() == 1.0);
}

TEST_CASE("simpson_single examples", "[quadrature]") {
  CHECK_THAT(simpson_single(monomial(2), Interval(0, 1)), WithinAbs(1.0 / 3.0, 1e-16));
  CHECK(simpson_single(monomial(1), Interval(0, 2)) == 1.0);
  // (1/6)(0 + 4/16 + 1)
  CHECK_THAT(simpson_single(monomial(4), Interval(0, 1)), WithinAbs(5.0 / 24.0, 1e-16));
}

TEST_CASE("simpson_composite examples", "[quadrature]") {
  const Partition halves({0.0, 0.5, 1.0});
  CHECK_THAT(simpson_composite(monomial(2), halves), WithinAbs(1.0 / 3.0, 1e-16));
  // Panels: (1/12)(4/256 + 16/256) + (1/12)(1/16 + 4 (3/4)^4 + 1) = 77/384.
  CHECK_THAT(simpson_composite(monomial(4), halves), WithinAbs(77.0 / 384.0, 1e-16));

  const Partition any({-1.0, 0.2, 0.7, 3.0});
  CHECK_THAT(simpson_composite(constant_one(), any, SimpsonVariant::unit_midpoint_weight),
             WithinAbs(4.0 / 2.0, 1e-15));
  CHECK_THAT(simpson_composite(constant_one(), any, SimpsonVariant::standard),
             WithinAbs(4.0, 1e-15));
}

TEST_CASE("composite over the trivial partition is the single rule", "[quadrature][property]") {
  Rng rng(3);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = generate_qclass_function(s);
    const auto iv = random_interval(rng);
    const Partition trivial({iv.a(), iv.b()});
    CHECK_THAT(simpson_composite(f, trivial),
               WithinRel(simpson_single(f, iv) * iv.width(), 1e-15));
  }
}

TEST_CASE("composite error decreases under refinement", "[quadrature]") {
  const auto f = monomial(4);
  double previous = INFINITY;
  for (std::size_t n : {1u, 2u, 4u, 8u, 16u}) {
    const double err = std::abs(simpson_composite(f, Partition::uniform(Interval(0, 1), n)) - 0.2);
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("reference_integral paths", "[quadrature]") {
  const auto x4 = reference_integral(monomial(4), Interval(0, 1));
  CHECK(x4.path == ReferencePath::exact);
  CHECK_THAT(x4.value, WithinAbs(0.2, 1e-16));
  CHECK_THAT(reference_integral(monomial(2), Interval(-1, 1)).value, WithinAbs(2.0 / 3.0, 1e-16));

  const auto e = reference_integral(catalog()[9], Interval(0, 1), 1e-12);
  CHECK(e.path == ReferencePath::adaptive);
  CHECK_THAT(e.value, WithinAbs(std::numbers::e - 1.0, 1e-12));
  CHECK_THROWS_AS(reference_integral(monomial(1), Interval(0, 1), 0.0), DomainError);
}

TEST_CASE("simpson_defect examples", "[quadrature]") {
  CHECK_THAT(simpson_defect(monomial(4), Interval(0, 1)), WithinAbs(1.0 / 120.0, 1e-16));
  CHECK_THAT(simpson_defect(monomial(3), Interval(-2.5, 4.0)), WithinAbs(0.0, 1e-14 * 64.0));
  // (e - 1) - (1 + 4 sqrt(e) + e)/6, 30-digit reference
  CHECK_THAT(mean_minus_simpson(catalog()[9], Interval(0, 1)),
             WithinAbs(-5.79323417547735098860965748791e-4, 1e-14));
}

TEST_CASE("Simpson is exact on cubics", "[quadrature][property]") {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_cubic(rng);
    const auto iv = random_interval(rng);
    const double scale = std::max({1.0, std::abs(f.f(iv.a())), std::abs(f.f(iv.midpoint())),
                                   std::abs(f.f(iv.b()))});
    CHECK(simpson_defect(f, iv) / scale <= 1e-13);
  }
}

TEST_CASE("defect is invariant under joint translation", "[quadrature][property]") {
  Rng rng(7);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = generate_qclass_function(s);
    const auto iv = random_interval(rng, -3, 3);
    const double shift = rng.uniform(-2, 2);
    const auto g = affine_pullback(f, 1.0, shift);  // g(y) = f(y + shift)
    const Interval moved(iv.a() - shift, iv.b() - shift);
    CHECK_THAT(simpson_defect(g, moved),
               WithinRel(simpson_defect(f, iv), 1e-12) || WithinAbs(simpson_defect(f, iv), 1e-12));
  }
}

TEST_CASE("non-finite samples raise EvaluationError", "[quadrature]") {
  const auto bad = make_polynomial_function("p", Polynomial({1.0}), 0.0, 0.0);
  TestFunction pole = bad;
  pole.f = [](double x) { return 1.0 / x; };
  CHECK_THROWS_AS(simpson_single(pole, Interval(0.0, 1.0)), EvaluationError);
  pole.exact_integral.reset();
  CHECK_THROWS_AS(reference_integral(pole, Interval(-1.0, 1.0)), EvaluationError);
}

TEST_CASE("compensated panel sum stays accurate for many panels", "[quadrature]") {
  const auto f = monomial(2);
  const auto d = Partition::uniform(Interval(0.0, 1.0), 10000);
  CHECK_THAT(simpson_composite(f, d), WithinAbs(1.0 / 3.0, 1e-15));
}
