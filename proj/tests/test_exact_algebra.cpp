#include <fmethod/linalg.hpp>
#include <fmethod/polynomial.hpp>
#include <fmethod/signature.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace fmethod;

namespace {

Polynomial xi(int i) { return var(Var::xi(i)); }
Polynomial L() { return var(Var::lambda()); }

Polynomial random_poly(std::mt19937& rng, int vars, int max_deg, int terms) {
  std::uniform_int_distribution<int> coeff(-5, 5), deg(0, max_deg), pick(1, vars);
  Polynomial p;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (int k = 0; k < 2; ++k) {
      Var v = Var::xi(pick(rng));
      m.set(v, m.exponent(v) + deg(rng));
    }
    p.add_term(m, make_rational(coeff(rng), 1 + std::abs(coeff(rng))));
  }
  return p;
}

}  // namespace

TEST(PolyArith, DifferenceOfSquares) {
  EXPECT_EQ((xi(1) + Polynomial(1)) * (xi(1) - Polynomial(1)), xi(1) * xi(1) - Polynomial(1));
}

TEST(PolyArith, ZeroAnnihilates) {
  Polynomial p = xi(1) * xi(2) + make_rational(3, 7) * L();
  EXPECT_TRUE((Polynomial(0) * p).is_zero());
}

TEST(PolyArith, W2CoefficientAtN3) {
  Signature sig(2, 3);
  Polynomial c = Rational(2) * L() + Polynomial(Rational(sig.n() - 3));
  EXPECT_EQ(c * xi(3).pow(2), parse_polynomial("2*L*xi3^2"));
}

TEST(PolyArith, MulIsDegreeAdditive) {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    Polynomial a = random_poly(rng, 3, 3, 4), b = random_poly(rng, 3, 3, 4);
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
  }
}

TEST(PolyArith, RingAxioms) {
  std::mt19937 rng(11);
  for (int i = 0; i < 40; ++i) {
    Polynomial a = random_poly(rng, 3, 2, 3), b = random_poly(rng, 3, 2, 3), c = random_poly(rng, 3, 2, 3);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(PolyText, CanonicalOrder) {
  Polynomial w2 = -(Rational(2) * L()) * xi(3).pow(2) - xi(1).pow(2) + xi(2).pow(2);
  EXPECT_EQ(w2.to_string(), "1*xi2^2 - 1*xi1^2 - 2*L*xi3^2");
  EXPECT_EQ(parse_polynomial(w2.to_string()), w2);
  EXPECT_EQ(parse_polynomial("-xi3^2 + 1/2 * xi1"), make_rational(1, 2) * xi(1) - xi(3).pow(2));
  EXPECT_EQ(Polynomial().to_string(), "0");
  EXPECT_THROW(parse_polynomial("xi1 +"), std::invalid_argument);
}

TEST(PartialDerivative, Examples) {
  EXPECT_EQ(derivative(xi(1).pow(2) * xi(2), Var::xi(1)), Rational(2) * xi(1) * xi(2));
  EXPECT_TRUE(derivative(xi(1).pow(2), Var::xi(2)).is_zero());
  EXPECT_EQ(derivative(xi(3).pow(4), Var::xi(3)), Rational(4) * xi(3).pow(3));
}

TEST(PartialDerivative, Commute) {
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    Polynomial f = random_poly(rng, 3, 4, 5);
    for (int u = 1; u <= 3; ++u)
      for (int v = 1; v <= 3; ++v)
        EXPECT_EQ(derivative(derivative(f, Var::xi(u)), Var::xi(v)),
                  derivative(derivative(f, Var::xi(v)), Var::xi(u)));
  }
}

TEST(Substitute, Examples) {
  EXPECT_EQ(substitute(L() * xi(3).pow(2), Var::lambda(), make_rational(1, 2)), make_rational(1, 2) * xi(3).pow(2));
  Polynomial f = var(Var::x(3)).pow(2) + var(Var::x(1));
  EXPECT_EQ(substitute(f, Var::x(3), Rational(0)), var(Var::x(1)));
}

TEST(Substitute, Composition) {
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    Polynomial f = random_poly(rng, 3, 3, 4);
    Polynomial g = xi(1) * xi(2) + Polynomial(2);
    Polynomial h = random_poly(rng, 3, 2, 2);
    EXPECT_EQ(substitute(substitute(f, Var::xi(1), g), Var::xi(1), h),
              substitute(f, Var::xi(1), substitute(g, Var::xi(1), h)));
  }
}

TEST(Nullspace, Examples) {
  EXPECT_TRUE(nullspace({{1, 0}, {0, 1}}).empty());
  auto k = nullspace({{1, 1}});
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], (RationalVector{1, -1}));
  EXPECT_EQ(nullspace({}, 3).size(), 3u);
}

TEST(Nullspace, RankNullity) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-3, 3), dim(1, 6);
  for (int it = 0; it < 60; ++it) {
    int r = dim(rng), c = dim(rng);
    RationalMatrix m(r, RationalVector(c));
    for (auto& row : m)
      for (auto& e : row) e = d(rng) * (it % 3 == 0 ? 0 : 1) + (d(rng) > 1 ? d(rng) : 0);
    auto ker = nullspace(m);
    EXPECT_EQ(rank(m) + ker.size(), static_cast<std::size_t>(c));
    for (const auto& v : ker)
      for (const auto& row : m) {
        Rational s = 0;
        for (int j = 0; j < c; ++j) s += row[j] * v[j];
        EXPECT_EQ(sgn(s), 0);
      }
  }
}

TEST(Nullspace, SpanContains) {
  using Vec = std::map<int, Rational>;
  std::vector<Vec> super{{{0, 1}, {1, 1}}, {{2, 1}}};
  EXPECT_TRUE(span_contains(super, {Vec{{0, 2}, {1, 2}, {2, -1}}}));
  EXPECT_FALSE(span_contains(super, {Vec{{0, 1}}}));
}

TEST(Signature, Epsilons) {
  Signature sig(2, 3);
  EXPECT_EQ(sig.n(), 3);
  EXPECT_EQ(sig.epsilon(), (std::vector<int>{1, -1, -1}));
  EXPECT_EQ(Signature(1, 4).epsilon(), (std::vector<int>{-1, -1, -1}));
  EXPECT_THROW(Signature(0, 3), std::invalid_argument);
  EXPECT_THROW(Signature(2, 1), std::invalid_argument);
  EXPECT_THROW(sig.eps(4), std::out_of_range);
}

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("-1/2"), make_rational(-1, 2));
  EXPECT_EQ(parse_rational("4/6"), make_rational(2, 3));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("0.5"), std::invalid_argument);
}
