#include <fmethod/scalar.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace fmethod;

namespace {
Polynomial xi(int i) { return var(Var::xi(i)); }
Polynomial x(int i) { return var(Var::x(i)); }
Polynomial L() { return var(Var::lambda()); }

std::vector<Signature> small_signatures() {
  std::vector<Signature> out;
  for (int n = 3; n <= 5; ++n)
    for (int p = 1; p <= n; ++p) out.emplace_back(p, n + 2 - p);
  return out;
}

bool proportional(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return normalize_leading(a) == normalize_leading(b);
}
}  // namespace

TEST(ApplyP, Examples) {
  Signature sig(2, 3);
  for (int j = 1; j <= 3; ++j) EXPECT_TRUE(apply_P(j, L(), Polynomial(1), sig).is_zero());
  EXPECT_EQ(apply_P(1, L(), xi(1), sig), L());
  Polynomial f = xi(3).pow(2) - sig.xi_prime_sq();
  for (int j = 1; j <= 3; ++j) EXPECT_TRUE(apply_P(j, Polynomial(make_rational(-1, 2)), f, sig).is_zero()) << j;
  EXPECT_THROW(apply_P(4, L(), xi(1), sig), std::out_of_range);
  EXPECT_THROW(apply_P(0, L(), xi(1), sig), std::out_of_range);
}

TEST(ApplyP, LowersDegreeByOne) {
  Signature sig(3, 3);
  for (const auto& m : monomials_of_degree(sig.xi_vars(), 3)) {
    Polynomial img = apply_P(2, Polynomial(make_rational(1, 3)), Polynomial::term(m, 1), sig);
    if (!img.is_zero()) {
      EXPECT_EQ(img.degree(), 2);
    }
  }
}

TEST(ApplyP, OperatorsCommute) {
  Signature sig(2, 3);
  for (const auto& m : monomials_of_degree(sig.xi_vars(), 4)) {
    Polynomial f = Polynomial::term(m, 1);
    for (int j = 1; j <= 3; ++j)
      for (int k = j + 1; k <= 3; ++k)
        EXPECT_EQ(apply_P(j, L(), apply_P(k, L(), f, sig), sig), apply_P(k, L(), apply_P(j, L(), f, sig), sig));
  }
}

TEST(ApplyQ, Examples) {
  Signature sig(2, 3);
  EXPECT_EQ(apply_Q(2, L(), Polynomial(1), sig), L() * x(2));
  Polynomial X2 = sig.quadratic(Var::Kind::X);
  EXPECT_EQ(apply_Q(3, L(), x(3), sig), make_rational(1, 2) * X2 + (L() + Polynomial(1)) * x(3).pow(2));
  EXPECT_EQ(apply_Q(1, L(), x(2), sig), (L() + Polynomial(1)) * x(1) * x(2));
  EXPECT_THROW(apply_Q(3, L(), x(1), sig, 2), std::out_of_range);
}

TEST(ClosedFormW, PaperList) {
  Signature sig(2, 3);
  int n = sig.n();
  Polynomial r = sig.xi_prime_sq();
  Polynomial c3 = Rational(2) * L() + Polynomial(n - 3);
  EXPECT_EQ(closed_form_w(0, L(), sig), Polynomial(1));
  EXPECT_EQ(closed_form_w(1, L(), sig), xi(3));
  EXPECT_EQ(closed_form_w(2, L(), sig), -c3 * xi(3).pow(2) - r);
  EXPECT_EQ(closed_form_w(2, L(), sig).to_string(), "1*xi2^2 - 1*xi1^2 - 2*L*xi3^2");
  Polynomial c5 = Rational(2) * L() + Polynomial(n - 5), c7 = Rational(2) * L() + Polynomial(n - 7);
  EXPECT_EQ(closed_form_w(4, L(), sig),
            make_rational(1, 3) * c5 * c7 * xi(3).pow(4) + Rational(2) * c5 * xi(3).pow(2) * r + r.pow(2));
  EXPECT_EQ(closed_form_w(3, L(), sig), make_rational(-1, 3) * c5 * xi(3).pow(3) - xi(3) * r);
  EXPECT_THROW(closed_form_w(-1, L(), sig), std::invalid_argument);
}

TEST(ClosedFormW, TopCoefficientIsOne) {
  Signature sig(3, 3);
  for (int K = 0; K <= 8; ++K) {
    Polynomial w = closed_form_w(K, L(), sig);
    EXPECT_EQ(w.degree_if([](Var v) { return v.kind() == Var::Kind::Xi; }), K);
    // coefficient of (-|xi'|^2)^N is 1, so xi_1^{2N} carries (-1)^N
    Monomial m = Monomial::of(Var::xi(1), 2 * (K / 2));
    if (K % 2) m.set(Var::xi(4), 1);
    EXPECT_EQ(w.coefficient(m), Rational((K / 2) % 2 ? -1 : 1)) << K;
  }
}

TEST(Annihilation, SymbolicAllSmallSignatures) {
  for (const auto& sig : small_signatures())
    for (int K = 0; K <= 6; ++K) {
      Polynomial w = closed_form_w(K, L(), sig);
      for (int j = 1; j < sig.n(); ++j)
        EXPECT_TRUE(apply_P(j, L(), w, sig).is_zero()) << sig.to_string() << " K=" << K << " j=" << j;
    }
}

TEST(Annihilation, LastOperatorDoesNotKillGenericW) {
  Signature sig(2, 3);
  EXPECT_FALSE(apply_P(3, L(), closed_form_w(2, L(), sig), sig).is_zero());
}

TEST(BruteForce, Examples) {
  Signature sig(2, 3);
  auto k = brute_force_sol(2, make_rational(1, 3), sig, false);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_TRUE(proportional(k[0].vector, closed_form_w(2, Polynomial(make_rational(1, 3)), sig)));
  EXPECT_EQ(brute_force_sol(1, Rational(0), sig, false).size(), 3u);
  EXPECT_TRUE(brute_force_sol(2, make_rational(1, 3), sig, true).empty());
}

TEST(BruteForce, AgreesWithClosedFormGeneric) {
  Signature sig(2, 3);
  for (Rational lam : {make_rational(1, 3), make_rational(-2, 7), make_rational(5, 4)})
    for (int K = 0; K <= 5; ++K) {
      auto k = brute_force_sol(K, lam, sig, false);
      ASSERT_EQ(k.size(), 1u);
      EXPECT_TRUE(proportional(k[0].vector, closed_form_w(K, Polynomial(lam), sig)));
    }
}

TEST(BruteForce, NaturalLambdaEnlargesOnlyAtLambdaPlusOne) {
  Signature sig(2, 3);
  for (int lam = 0; lam <= 2; ++lam)
    for (int K = 0; K <= 4; ++K) {
      auto pred = classify_sol(Rational(lam), sig, false);
      EXPECT_EQ(brute_force_sol(K, Rational(lam), sig, false).size(), pred.dimension(K, sig))
          << "lambda=" << lam << " K=" << K;
    }
}

TEST(LabelSol, HarmonicExtras) {
  Signature sig(2, 3);
  auto raw = brute_force_sol(2, Rational(1), sig, false);
  auto labeled = label_sol(2, Rational(1), sig, raw);
  ASSERT_EQ(labeled.size(), raw.size());
  EXPECT_EQ(labeled[0].kind, SolKind::Gegenbauer);
  for (std::size_t i = 1; i < labeled.size(); ++i) EXPECT_EQ(labeled[i].kind, SolKind::Harmonic);
  EXPECT_EQ(labeled[1].label(), "harmonic(2,1)");
}

TEST(HarmonicSpace, Dimensions) {
  Signature sig(2, 3);
  EXPECT_EQ(harmonic_space(0, sig, false).size(), 1u);
  EXPECT_EQ(harmonic_space(1, sig, false).size(), 3u);
  EXPECT_EQ(harmonic_space(2, sig, false).size(), 5u);
  for (int k = 0; k <= 4; ++k)
    for (const auto& s : {Signature(2, 3), Signature(1, 5), Signature(3, 3)}) {
      auto plain = harmonic_space(k, s, false);
      auto filtered = harmonic_space(k, s, true);
      EXPECT_EQ(plain.size(), filtered.size());
      EXPECT_EQ(span_dimension(filtered), filtered.size());
      for (const auto& h : filtered) EXPECT_TRUE(box(h, s, Var::Kind::Xi).is_zero());
    }
}

TEST(HarmonicSpace, ComponentZeroIsW) {
  // w_{lambda+1} spans H'_0 at natural lambda
  Signature sig(2, 4);
  for (int lam = 0; lam <= 3; ++lam) {
    auto c0 = harmonic_component(lam + 1, 0, sig);
    ASSERT_EQ(c0.size(), 1u);
    EXPECT_TRUE(proportional(c0[0], closed_form_w(lam + 1, Polynomial(lam), sig))) << lam;
  }
}

TEST(ClassifySol, Descriptions) {
  Signature sig(2, 3);
  auto g = classify_sol(make_rational(1, 3), sig, false);
  EXPECT_FALSE(g.harmonic_extras);
  EXPECT_TRUE(classify_sol(Rational(0), sig, false).harmonic_extras);
  auto amb = classify_sol(make_rational(-1, 2), sig, true);
  EXPECT_TRUE(amb.power_laplacian);
  EXPECT_EQ(amb.power_degree, 2);
  EXPECT_FALSE(amb.harmonic_extras);
  EXPECT_EQ(amb.dimension(0, sig), 1u);
  EXPECT_EQ(amb.dimension(2, sig), 1u);
  EXPECT_EQ(amb.dimension(1, sig), 0u);
}

TEST(RadialReduction, Holds) {
  for (const auto& sig : {Signature(2, 3), Signature(1, 4), Signature(3, 4)})
    for (int K = 0; K <= 7; ++K) {
      auto rep = radial_reduction_check(K, L(), sig);
      EXPECT_TRUE(rep.ok) << sig.to_string() << " K=" << K;
    }
}

TEST(RadialReduction, Examples) {
  Signature sig(2, 3);
  EXPECT_TRUE(radial_discrepancy(0, Polynomial(1), 1, L(), sig).is_zero());
  Polynomial alpha = scalar_alpha(L(), sig);
  Polynomial h = substitute(inflated_Cscript(2, true, alpha), Var::t(), -var(Var::t()));
  EXPECT_TRUE(ode_residual_R(2, h, alpha).is_zero());
  EXPECT_TRUE(apply_P(1, L(), clear_radial(h, Var::t(), 2, sig, -1), sig).is_zero());
  // h = t: both sides a nonzero multiple of eps_j xi_j
  Polynomial lhs = apply_P(2, L(), clear_radial(var(Var::t()), Var::t(), 2, sig, -1), sig);
  EXPECT_FALSE(lhs.is_zero());
  EXPECT_TRUE(radial_discrepancy(2, var(Var::t()), 2, L(), sig).is_zero());
}

TEST(Polw, SpansAtNaturalLambda) {
  for (const auto& sig : {Signature(2, 3), Signature(2, 4)})
    for (int lam = 0; lam <= 3; ++lam) {
      EXPECT_TRUE(polw_spans(lam + 1, Rational(lam), sig)) << lam;
      for (int K = 0; K <= lam + 1; ++K) {
        Polynomial w = closed_form_w(K, Polynomial(lam), sig);
        EXPECT_NE(sgn(w.coefficient(Monomial::of(Var::xi(sig.n()), K))), 0) << "lambda=" << lam << " K=" << K;
      }
    }
}
