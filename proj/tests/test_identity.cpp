#include <catch_amalgamated.hpp>

#include <cmath>
#include <simpsonq/identity.hpp>
#include <simpsonq/rng.hpp>

using namespace simpsonq;
using Catch::Matchers::WithinAbs;

namespace {

TestFunction x_pow(unsigned k) {
  const auto tag = "x^" + std::to_string(k);
  return make_function(FunctionSpec{tag, tag, {}, 0, 0, {}});
}

Interval random_interval(Rng& rng) {
  for (;;) {
    double a = rng.uniform(-5, 5), b = rng.uniform(-5, 5);
    if (a > b) std::swap(a, b);
    if (b - a > 1e-3) return {a, b};
  }
}

}  // namespace

TEST_CASE("identity on low-degree examples", "[identity]") {
  for (unsigned k : {0u, 1u, 2u, 3u}) {
    const auto r = lemma1_residual(x_pow(k), Interval(-1.3, 2.1));
    INFO("x^" << k);
    CHECK_THAT(r.lhs_signed, WithinAbs(0.0, 1e-13));
    CHECK_THAT(r.rhs_numeric, WithinAbs(0.0, 1e-13));
    CHECK(r.pass);
  }
}

TEST_CASE("identity for x^4 on [0,1]", "[identity]") {
  const auto r = lemma1_residual(x_pow(4), Interval(0, 1));
  CHECK_THAT(r.lhs_signed, WithinAbs(-1.0 / 120.0, 1e-15));
  CHECK_THAT(r.rhs_numeric, WithinAbs(-1.0 / 120.0, 1e-12));
  CHECK(r.residual <= 1e-10);
  CHECK(r.pass);
}

TEST_CASE("identity for exp on [-1,2]", "[identity]") {
  // mean - simpson = (e^2 - e^-1)/3 - (e^-1 + 4 e^(1/2) + e^2)/6
  constexpr double kLhs = -0.0515778845640315541584578335275;
  const auto r = lemma1_residual(make_function(FunctionSpec{"exp", "exp", {}, 0, 0, {}}), Interval(-1, 2));
  CHECK_THAT(r.lhs_signed, WithinAbs(kLhs, 1e-15));
  CHECK(r.residual <= 1e-9 * std::abs(kLhs));
}

TEST_CASE("identity holds for catalog polynomials on random intervals", "[identity][property]") {
  Rng rng(2024);
  for (unsigned k = 0; k <= 8; ++k) {
    const auto f = x_pow(k);
    for (int i = 0; i < 100; ++i) {
      const auto iv = random_interval(rng);
      const auto r = lemma1_residual(f, iv);
      INFO("x^" << k << " on [" << iv.a() << ", " << iv.b() << "] residual " << r.residual);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("identity holds for generated functions", "[identity][property]") {
  Rng rng(99);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto f = generate_qclass_function(s);
    for (int i = 0; i < 10; ++i) {
      const auto iv = random_interval(rng);
      CHECK(lemma1_residual(f, iv).pass);
    }
  }
}

TEST_CASE("identity is invariant under affine reparameterization", "[identity][property]") {
  Rng rng(5);
  const auto f = generate_qclass_function(17);
  for (int i = 0; i < 50; ++i) {
    const double alpha = rng.uniform(0.2, 3.0);
    const double beta = rng.uniform(-1.0, 1.0);
    const Interval iv(rng.uniform(-1.5, 0.0), rng.uniform(0.1, 1.5));
    const Interval image(alpha * iv.a() + beta, alpha * iv.b() + beta);
    const auto g = affine_pullback(f, alpha, beta);
    const double lf = lemma1_lhs(f, image);
    CHECK_THAT(lemma1_lhs(g, iv), WithinAbs(lf, 1e-10 * std::max(1.0, std::abs(lf))));
    CHECK_THAT(lemma1_rhs(g, iv), WithinAbs(lemma1_rhs(f, image), 1e-10 * std::max(1.0, std::abs(lf))));
  }
}

TEST_CASE("identity rhs rejects bad tolerances", "[identity]") {
  CHECK_THROWS_AS(lemma1_rhs(x_pow(2), Interval(0, 1), 0.0), DomainError);
}
