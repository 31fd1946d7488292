#include <fmethod/spinor.hpp>

#include <gtest/gtest.h>

using namespace fmethod;

namespace {
Polynomial xi(int i) { return var(Var::xi(i)); }
Polynomial L() { return var(Var::lambda()); }
CliffordPolynomial e(int i) { return CliffordPolynomial::basis_vector(i); }

std::vector<Signature> small_signatures() {
  std::vector<Signature> out;
  for (int n = 3; n <= 5; ++n)
    for (int p = 1; p <= n; ++p) out.emplace_back(p, n + 2 - p);
  return out;
}
}  // namespace

TEST(Clifford, Relations) {
  Signature sig(2, 3);
  EXPECT_EQ(clifford_mul(e(1), e(1), sig), CliffordPolynomial(Polynomial(-1)));
  EXPECT_EQ(clifford_mul(e(2), e(2), sig), CliffordPolynomial(Polynomial(1)));
  CliffordPolynomial e12(Blade::of({1, 2}), Polynomial(1));
  EXPECT_EQ(clifford_mul(e(1), e(2), sig), e12);
  EXPECT_EQ(clifford_mul(e(2), e(1), sig), -e12);
  CliffordPolynomial xp = xi_prime_vector(sig);
  EXPECT_EQ(clifford_mul(xp, xp, sig), CliffordPolynomial(-sig.xi_prime_sq()));
  CliffordPolynomial xn = xi_n_vector(sig);
  EXPECT_EQ(clifford_mul(xn, xn, sig), CliffordPolynomial(xi(3).pow(2)));
}

TEST(Clifford, Associative) {
  for (const auto& sig : {Signature(2, 3), Signature(3, 3), Signature(1, 5)}) {
    auto blades = all_blades(sig.n());
    for (Blade a : blades)
      for (Blade b : blades)
        for (Blade c : blades) {
          CliffordPolynomial A(a, Polynomial(1)), B(b, Polynomial(1)), C(c, Polynomial(1));
          ASSERT_EQ(clifford_mul(clifford_mul(A, B, sig), C, sig), clifford_mul(A, clifford_mul(B, C, sig), sig));
        }
  }
}

TEST(Clifford, BladeOrder) {
  auto b = all_blades(3);
  ASSERT_EQ(b.size(), 8u);
  std::vector<std::string> names;
  for (Blade x : b) names.push_back(x.to_string());
  EXPECT_EQ(names, (std::vector<std::string>{"1", "e1", "e2", "e3", "e12", "e13", "e23", "e123"}));
}

TEST(Dirac, Examples) {
  Signature sig(2, 3);
  EXPECT_TRUE(dirac(CliffordPolynomial(Polynomial(1)), sig, false).is_zero());
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(dirac(CliffordPolynomial(xi(k)), sig, false), e(k));
  EXPECT_TRUE(dirac(CliffordPolynomial(xi(3)), sig, true).is_zero());
}

TEST(Dirac, SquareIsMinusBox) {
  for (const auto& sig : {Signature(2, 3), Signature(2, 4)})
    for (int d = 0; d <= 4; ++d)
      for (const auto& m : monomials_of_degree(sig.xi_vars(), d))
        for (Blade b : all_blades(sig.n())) {
          CliffordPolynomial f(b, Polynomial::term(m, 1));
          ASSERT_EQ(dirac(dirac(f, sig, false), sig, false), -box(f, sig, Var::Kind::Xi));
        }
}

TEST(SpinorP, Examples) {
  Signature sig(2, 3);
  for (int j = 1; j <= 3; ++j) EXPECT_TRUE(apply_spinor_P(j, L(), CliffordPolynomial(Polynomial(1)), sig).is_zero());
  EXPECT_EQ(apply_spinor_P(1, L(), CliffordPolynomial(xi(1)), sig), CliffordPolynomial(L()));
  CliffordPolynomial F1 = xi_prime_vector(sig) + (Rational(2) * spinor_alpha(L(), 3)) * xi_n_vector(sig);
  EXPECT_EQ(spinor_singular_F(1, L(), sig), F1);
  for (int j = 1; j <= 2; ++j) EXPECT_TRUE(apply_spinor_P(j, L(), F1, sig).is_zero());
  EXPECT_THROW(apply_spinor_P(4, L(), F1, sig), std::out_of_range);
}

TEST(SpinorQ, Examples) {
  Signature sig(2, 3);
  Polynomial x1 = var(Var::x(1));
  CliffordPolynomial q = apply_spinor_Q(1, L(), CliffordPolynomial(Polynomial(1)), sig);
  // identity blade: x_1(lambda + 1/2) + 1/2 eps_1 x_1 e_1 e_1 = x_1 lambda
  EXPECT_EQ(q.component(Blade::scalar()), L() * x1);
  EXPECT_EQ(q.component(Blade::of({1, 2})), make_rational(-1, 2) * var(Var::x(2)));
  EXPECT_EQ(q.component(Blade::of({1, 3})), make_rational(-1, 2) * var(Var::x(3)));
  CliffordPolynomial q2 = apply_spinor_Q(1, L(), CliffordPolynomial(x1), sig);
  CliffordPolynomial expect = CliffordPolynomial(make_rational(-1, 2) * sig.quadratic(Var::Kind::X) +
                                                 (L() + Polynomial(make_rational(3, 2))) * x1 * x1) +
                              Polynomial(make_rational(1, 2)) * clifford_mul(x1 * x_vector(sig), e(1), sig);
  EXPECT_EQ(q2, expect);
}

TEST(SpinorF, LowDegrees) {
  Signature sig(2, 3);
  EXPECT_EQ(spinor_singular_F(0, L(), sig), CliffordPolynomial(Polynomial(1)));
  Polynomial alpha = spinor_alpha(L(), 3);
  CliffordPolynomial F2 = CliffordPolynomial(Rational(2) * (alpha + Polynomial(1)) * xi(3).pow(2) - sig.xi_prime_sq()) +
                          Polynomial(2) * clifford_mul(xi_prime_vector(sig), xi_n_vector(sig), sig);
  EXPECT_EQ(spinor_singular_F(2, L(), sig), F2);
  EXPECT_THROW(spinor_singular_F(-1, L(), sig), std::invalid_argument);
}

TEST(SpinorF, SymbolicAnnihilation) {
  for (const auto& sig : small_signatures())
    for (int K = 0; K <= 5; ++K) {
      CliffordPolynomial F = spinor_singular_F(K, L(), sig);
      EXPECT_EQ(F.degree_if([](Var v) { return v.kind() == Var::Kind::Xi; }), K);
      for (int j = 1; j < sig.n(); ++j)
        EXPECT_TRUE(apply_spinor_P(j, L(), F, sig).is_zero()) << sig.to_string() << " K=" << K << " j=" << j;
    }
}

TEST(SpinorF, ParityStructure) {
  Signature sig(2, 4);
  for (int K = 0; K <= 6; ++K) {
    auto [even, odd] = split_parity(spinor_singular_F(K, L(), sig));
    if (K % 2 == 0) {
      EXPECT_TRUE(odd.is_zero());
      for (const auto& [b, p] : even.components())
        EXPECT_TRUE(b.grade() == 0 || (b.grade() == 2 && b.contains(sig.n()))) << b.to_string();
    } else {
      EXPECT_TRUE(even.is_zero());
      for (const auto& [b, p] : odd.components()) EXPECT_EQ(b.grade(), 1);
    }
  }
}

TEST(SpinorOde, Examples) {
  Polynomial t = var(Var::t());
  for (const auto& r : spinor_ode_residuals(Polynomial(1), Polynomial(), 0, L(), 3, Parity::Even))
    EXPECT_TRUE(r.is_zero());
  auto [P, Q] = spinor_gegenbauer_pair(2, L(), 3);
  EXPECT_EQ(Q, Polynomial(2));
  for (const auto& r : spinor_ode_residuals(P, Q, 1, L(), 3, Parity::Even)) EXPECT_TRUE(r.is_zero());
  auto bad = spinor_ode_residuals(P, Polynomial(1), 1, L(), 3, Parity::Even);
  EXPECT_FALSE(bad[3].is_zero());
  EXPECT_TRUE(bad[3].is_constant());
}

TEST(SpinorOde, GegenbauerPairsSolveAllFour) {
  for (int n = 3; n <= 6; ++n)
    for (int K = 0; K <= 9; ++K) {
      auto [P, Q] = spinor_gegenbauer_pair(K, L(), n);
      auto r = spinor_ode_residuals(P, Q, K / 2, L(), n, K % 2 ? Parity::Odd : Parity::Even);
      for (std::size_t i = 0; i < r.size(); ++i) EXPECT_TRUE(r[i].is_zero()) << "n=" << n << " K=" << K << " eq" << i;
    }
}

TEST(SpinorOde, FirstTwoFollowFromLastTwo) {
  Polynomial t = var(Var::t());
  for (Parity par : {Parity::Even, Parity::Odd})
    for (int N = 0; N <= 4; ++N)
      for (int a = 0; a <= 5; ++a)
        for (bool onP : {true, false}) {
          Polynomial P = onP ? t.pow(a) : Polynomial(), Q = onP ? Polynomial() : t.pow(a);
          for (const auto& d : spinor_ode_implication(P, Q, N, L(), 4, par)) EXPECT_TRUE(d.is_zero());
        }
}

TEST(SpinorSol, BruteForceDimensions) {
  Signature sig(2, 3);
  Rational lam(1, 5);
  EXPECT_EQ(brute_force_spinor_sol(0, lam, sig).dimension(), 8u);
  auto k1 = brute_force_spinor_sol(1, lam, sig);
  EXPECT_EQ(k1.dimension(), 8u);
  EXPECT_EQ(k1.multiplier, 4u);
  auto k2 = brute_force_spinor_sol(2, lam, sig);
  EXPECT_EQ(k2.dimension(), 8u);
  // spanned by Ftilde_K times constant blades
  for (int K = 1; K <= 2; ++K) {
    auto k = brute_force_spinor_sol(K, lam, sig);
    CliffordPolynomial F = spinor_singular_F(K, Polynomial(lam), sig);
    std::vector<CliffordPolynomial> right;
    for (Blade b : all_blades(3)) right.push_back(right_blade(F, b, sig));
    EXPECT_EQ(clifford_span_dimension(right), 8u);
    EXPECT_TRUE(clifford_in_span(k.basis, right));
  }
}

TEST(SpinorSol, RightModule) {
  Signature sig(2, 3);
  auto k = brute_force_spinor_sol(2, make_rational(1, 5), sig);
  for (const auto& f : k.basis)
    for (Blade b : all_blades(3)) EXPECT_TRUE(clifford_in_span(k.basis, {right_blade(f, b, sig)}));
}

TEST(Monogenic, Dimensions) {
  Signature sig(2, 3);
  EXPECT_EQ(monogenic_basis(0, sig).size(), 8u);
  EXPECT_EQ(monogenic_basis(1, sig).size(), 16u);
  for (const auto& f : monogenic_basis(2, sig)) EXPECT_TRUE(dirac(f, sig, false).is_zero());
}

TEST(Monogenic, AnnihilatedAtHalfIntegers) {
  Signature sig(2, 3);
  for (const auto& f : monogenic_basis(1, sig))
    for (int j = 1; j <= 3; ++j) EXPECT_TRUE(apply_spinor_P(j, Polynomial(make_rational(1, 2)), f, sig).is_zero());
}
