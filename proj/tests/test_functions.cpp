#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <simpsonq/adaptive_integrate.hpp>
#include <simpsonq/functions.hpp>

using namespace simpsonq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const TestFunction& find(const std::vector<TestFunction>& fs, std::string_view name) {
  for (const auto& f : fs)
    if (f.name == name) return f;
  FAIL("missing catalog entry " << name);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("catalog contents", "[functions]") {
  const auto cat = catalog();
  for (int k = 0; k <= 8; ++k) {
    const auto& f = find(cat, "x^" + std::to_string(k));
    REQUIRE(f.exact_integral);
    CHECK(f.expected_q_member);
  }
  const auto& x4 = find(cat, "x^4");
  CHECK_THAT((*x4.exact_integral)(Interval(0.0, 1.0)), WithinAbs(0.2, 1e-16));
  const auto& x3 = find(cat, "x^3");
  CHECK(x3.d2f(0.7) == 6.0 * 0.7);
  const auto& e = find(cat, "exp");
  REQUIRE(e.d4f);
  CHECK((*e.d4f)(1.3) == std::exp(1.3));
  const auto& spike = find(cat, "gauss_spike");
  CHECK_FALSE(spike.expected_q_member);
}

TEST_CASE("catalog exact integrals match quadrature", "[functions][oracle]") {
  Rng rng(5);
  for (const auto& f : catalog()) {
    if (!f.exact_integral) continue;
    for (int i = 0; i < 20; ++i) {
      double a = rng.uniform(-5, 5);
      double b = rng.uniform(-5, 5);
      if (a > b) std::swap(a, b);
      if (b - a < 1e-3) continue;
      const Interval iv(a, b);
      const double numeric = adaptive_integrate(f.f, a, b, {.abs_tol = 1e-13}).value;
      INFO(f.name << " on [" << a << ", " << b << "]");
      CHECK_THAT((*f.exact_integral)(iv), WithinRel(numeric, 1e-10) || WithinAbs(numeric, 1e-12));
    }
  }
}

TEST_CASE("second derivatives agree with finite differences", "[functions][property]") {
  std::vector<TestFunction> fs = catalog();
  for (std::uint64_t s = 0; s < 10; ++s) fs.push_back(generate_qclass_function(s));
  constexpr double h = 1e-4;
  Rng rng(17);
  for (const auto& f : fs) {
    for (int i = 0; i < 50; ++i) {
      const double x = rng.uniform(-2.0, 2.0);
      const double exact = f.d2f(x);
      const double fd = (f.f(x + h) - 2.0 * f.f(x) + f.f(x - h)) / (h * h);
      INFO(f.name << " at x = " << x);
      // Truncation error is h^2/12 |f''''|; roundoff adds about eps |f| / h^2.
      CHECK_THAT(fd, WithinAbs(exact, 1e-6 * (1.0 + std::abs(exact))));
    }
  }
}

TEST_CASE("generator is deterministic and seed-sensitive", "[functions][generator]") {
  const auto a = generate_qclass_function(42);
  const auto b = generate_qclass_function(42);
  REQUIRE(a.spec);
  REQUIRE(b.spec);
  CHECK(*a.spec == *b.spec);
  CHECK(a.f(1.234) == b.f(1.234));

  std::set<std::vector<double>> seen;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto f = generate_qclass_function(s);
    auto key = f.spec->d2f_coefficients;
    key.push_back(f.spec->slope);
    key.push_back(f.spec->offset);
    seen.insert(std::move(key));
  }
  CHECK(seen.size() == 1000);
}

TEST_CASE("degree budget two gives a constant second derivative", "[functions][generator]") {
  const auto f = generate_qclass_function(9, 2);
  const auto& c = f.spec->d2f_coefficients;
  REQUIRE(c.size() == 1);
  CHECK(c[0] > 0.0);
  CHECK(f.d2f(-3.0) == c[0]);
  CHECK(f.d2f(4.0) == c[0]);
  // f = c x^2 / 2 + slope x + offset
  const double x = 1.75;
  CHECK_THAT(f.f(x), WithinRel(c[0] * x * x / 2 + f.spec->slope * x + f.spec->offset, 1e-15));

  const auto g = make_polynomial_function("c", Polynomial({3.0}), 0.0, 0.0);
  CHECK(g.f(2.0) == 6.0);
  CHECK((*g.d4f)(0.3) == 0.0);

  CHECK_THROWS_AS(generate_qclass_function(1, 1), DomainError);
}

TEST_CASE("spec round trip rebuilds identical functions", "[functions]") {
  for (const auto& f : catalog()) {
    const auto g = make_function(*f.spec);
    CHECK(g.name == f.name);
    CHECK(g.f(0.3) == f.f(0.3));
    CHECK(g.d2f(-0.4) == f.d2f(-0.4));
  }
  const auto f = generate_qclass_function(1234, 8, 0.5);
  const auto g = make_function(*f.spec);
  CHECK(*g.spec == *f.spec);
  CHECK(g.d2f(2.5) == f.d2f(2.5));
  CHECK(g.f(-4.5) == f.f(-4.5));
  CHECK_THROWS_AS(make_function(FunctionSpec{"bad", "x^foo", {}, 0, 0, {}}), SchemaError);
  CHECK_THROWS_AS(make_function(FunctionSpec{"empty", std::nullopt, {}, 0, 0, {}}), SchemaError);
}

TEST_CASE("qclass_check examples", "[functions][qclass]") {
  const Interval unit(0.0, 1.0);
  const auto square = qclass_check([](double x) { return x * x; }, unit, 33, 31, 1e-12);
  CHECK(square.verdict == QVerdict::pass);
  CHECK(square.nonneg_ok);
  CHECK(to_string(square.verdict) == "pass (sampled)");

  const auto negative = qclass_check([](double) { return -1.0; }, unit, 5, 5, 1e-12);
  CHECK(negative.verdict == QVerdict::fail);
  CHECK_FALSE(negative.nonneg_ok);

  const auto bump = [](double x) { return std::exp(-100.0 * (x - 0.5) * (x - 0.5)); };
  const auto rep = qclass_check(bump, unit, 33, 31, 1e-12);
  CHECK(rep.verdict == QVerdict::fail);
  CHECK(rep.worst_margin < -0.99);
  // The triple (0, 1, 1/2) is on the lattice: LHS 1, RHS 4 exp(-25).
  const double rhs = bump(0.0) / 0.5 + bump(1.0) / 0.5;
  CHECK_THAT(rhs, WithinRel(4.0 * std::exp(-25.0), 1e-14));
  CHECK(bump(0.5) - rhs > 0.99);
}

TEST_CASE("qclass_check contract", "[functions][qclass]") {
  const Interval unit(0.0, 1.0);
  const auto g = [](double x) { return x; };
  CHECK_THROWS_AS(qclass_check(g, unit, 2, 5, 0.0), DomainError);
  CHECK_THROWS_AS(qclass_check(g, unit, 5, 2, 0.0), DomainError);
  CHECK_THROWS_AS(qclass_check(g, unit, 5, 5, -1.0), DomainError);
  CHECK_THROWS_AS(qclass_check([](double x) { return 1.0 / (x - 0.5); }, unit, 5, 5, 0.0),
                  EvaluationError);
  // Only the tolerance band is violated: inconclusive, not fail.
  const auto tiny_dip = [](double x) { return x == 0.5 ? 1e-13 : 0.0; };
  const auto rep = qclass_check(tiny_dip, unit, 3, 3, 1e-12);
  CHECK(rep.verdict == QVerdict::inconclusive);
}

TEST_CASE("generated second derivatives are Q-class on random intervals", "[functions][property]") {
  Rng rng(2024);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto f = generate_qclass_function(s);
    const RealFunction g = [&](double x) { return std::abs(f.d2f(x)); };
    for (int i = 0; i < 100; ++i) {
      double a = rng.uniform(-5, 5);
      double b = rng.uniform(-5, 5);
      if (a > b) std::swap(a, b);
      if (b - a < 1e-6) continue;
      const auto rep = qclass_check(g, Interval(a, b), 11, 9, 1e-12 * 1e6);
      INFO(f.name << " on [" << a << ", " << b << "] margin " << rep.worst_margin);
      CHECK(rep.verdict == QVerdict::pass);
    }
  }
}

TEST_CASE("affine pullback carries derivatives and integral", "[functions]") {
  const auto cat = catalog();
  const auto& x4 = find(cat, "x^4");
  const auto g = affine_pullback(x4, 2.0, 1.0);  // g(y) = (2y + 1)^4
  CHECK(g.f(0.5) == 16.0);
  CHECK(g.d2f(0.5) == 4.0 * 12.0 * 4.0);
  // ∫_0^1 (2y+1)^4 dy = (3^5 - 1) / 10
  CHECK_THAT((*g.exact_integral)(Interval(0.0, 1.0)), WithinRel(24.2, 1e-14));
  CHECK_THROWS_AS(affine_pullback(x4, -1.0, 0.0), DomainError);
}
