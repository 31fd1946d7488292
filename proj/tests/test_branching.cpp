#include <fmethod/branching.hpp>

#include <gtest/gtest.h>

using namespace fmethod;

TEST(InfChar, ScalarExamples) {
  auto c0 = inf_char_scalar(Rational(0), 0, 3);
  EXPECT_EQ(c0.entries, (std::vector<Rational>{1, 0}));
  auto c2 = inf_char_scalar(Rational(0), 2, 3);
  EXPECT_EQ(c2.entries, (std::vector<Rational>{-1, 0}));
  EXPECT_TRUE(c0 == c2);
  EXPECT_THROW(inf_char_scalar(Rational(0), 0, 2), std::invalid_argument);
  for (int b = 0; b < 10; ++b)
    for (int bb = b + 1; bb < 10; ++bb) EXPECT_FALSE(inf_char_scalar(make_rational(1, 3), b, 3) == inf_char_scalar(make_rational(1, 3), bb, 3));
}

TEST(InfChar, Lengths) {
  for (int n = 3; n <= 8; ++n) {
    EXPECT_EQ(inf_char_scalar(Rational(0), 0, n).entries.size(), static_cast<std::size_t>((n + 1) / 2));
    EXPECT_EQ(inf_char_spinor(Rational(0), 0, n).entries.size(), static_cast<std::size_t>((n + 1) / 2));
  }
  EXPECT_EQ(inf_char_spinor(Rational(0), 0, 5, -1).entries, (std::vector<Rational>{2, make_rational(3, 2), make_rational(-1, 2)}));
  EXPECT_EQ(inf_char_spinor(Rational(0), 0, 6).entries, (std::vector<Rational>{make_rational(5, 2), 2, 1}));
}

TEST(InfChar, TypeDParity) {
  CharacterVector a{{make_rational(3, 2), make_rational(1, 2)}, WeylType::D};
  CharacterVector b{{make_rational(3, 2), make_rational(-1, 2)}, WeylType::D};
  CharacterVector c{{make_rational(-3, 2), make_rational(-1, 2)}, WeylType::D};
  EXPECT_FALSE(a == b);
  EXPECT_TRUE(a == c);
  CharacterVector z1{{Rational(2), Rational(0)}, WeylType::D}, z2{{Rational(-2), Rational(0)}, WeylType::D};
  EXPECT_TRUE(z1 == z2);
}

TEST(Generic, Examples) {
  EXPECT_TRUE(is_generic(make_rational(1, 3), 3));
  EXPECT_FALSE(is_generic(make_rational(-1, 2), 3));
  for (int n = 3; n <= 6; ++n) EXPECT_TRUE(is_generic(make_rational(-n, 2), n));
}

TEST(Generic, CollisionsExactlyAtLambdaJ) {
  for (int n = 3; n <= 5; ++n)
    for (int num = -30; num <= 30; ++num) {
      Rational lam(num, 2);
      lam.canonicalize();
      for (int b = 0; b <= 12; ++b)
        for (int bb = 0; bb <= 12; ++bb) {
          if (b == bb) continue;
          bool collide = inf_char_scalar(lam, b, n) == inf_char_scalar(lam, bb, n);
          EXPECT_EQ(collide, lam == lambda_j(b + bb, n)) << "n=" << n << " lambda=" << lam << " b=" << b << " b'=" << bb;
          if (collide) {
            EXPECT_FALSE(is_generic(lam, n));
          }
        }
    }
}

TEST(ScalarBranch, Examples) {
  for (int n : {3, 4}) {
    auto r2 = scalar_branch_report(lambda_j(2, n), n);
    EXPECT_EQ(r2.verdict, Verdict::EvenExceptionalWithExtensions);
    EXPECT_EQ(r2.summands[0].partner, 2);
    EXPECT_EQ(r2.summands[2].partner, 0);
    EXPECT_FALSE(r2.summands[1].partner.has_value());
    for (std::size_t b = 3; b < r2.summands.size(); ++b) EXPECT_FALSE(r2.summands[b].partner.has_value());
    auto r4 = scalar_branch_report(lambda_j(4, n), n);
    EXPECT_EQ(r4.summands[0].partner, 4);
    EXPECT_EQ(r4.summands[1].partner, 3);
    EXPECT_FALSE(r4.summands[2].partner.has_value());
    auto r3 = scalar_branch_report(lambda_j(3, n), n);
    EXPECT_EQ(r3.verdict, Verdict::OddExceptionalDirectSum);
    for (const auto& s : r3.summands) EXPECT_FALSE(s.partner.has_value());
    EXPECT_FALSE(r3.generic);
    auto g = scalar_branch_report(make_rational(1, 3), n);
    EXPECT_EQ(g.verdict, Verdict::GenericDirectSum);
    EXPECT_TRUE(g.collisions.empty());
  }
}

TEST(ScalarBranch, PartnersShareCharacters) {
  for (int n : {3, 4, 5})
    for (int k = 1; k <= 4; ++k) {
      auto rep = scalar_branch_report(lambda_j(2 * k, n), n, 20);
      for (const auto& s : rep.summands)
        if (s.partner) {
          EXPECT_TRUE(s.character == rep.summands[*s.partner].character);
        }
      for (std::size_t a = 0; a < rep.summands.size(); ++a)
        for (std::size_t b = a + 1; b < rep.summands.size(); ++b) {
          bool partnered = rep.summands[a].partner == static_cast<int>(b);
          if (!partnered) {
            EXPECT_FALSE(rep.summands[a].character == rep.summands[b].character);
          }
        }
    }
}

TEST(ScalarBranch, Truncation) {
  EXPECT_EQ(default_bmax(make_rational(1, 3), 3), 2 * 11 / 3 + 8);
  EXPECT_EQ(scalar_branch_report(Rational(0), 3, 5).summands.size(), 6u);
  auto j = scalar_branch_report(Rational(0), 3, 5).to_json();
  EXPECT_EQ(j["truncated_at"], 5);
}

TEST(SpinorBranch, Examples) {
  EXPECT_EQ(spinor_branch_report(make_rational(1, 5), 3).verdict, Verdict::GenericDirectSum);
  EXPECT_TRUE(spinor_branch_report(make_rational(1, 5), 3).collisions.empty());
  EXPECT_FALSE(spinor_conditions_hold(make_rational(-1, 2), 3));
  EXPECT_FALSE(spinor_conditions_hold(Rational(0), 4));
  EXPECT_EQ(spinor_branch_report(Rational(0), 4).verdict, Verdict::ExceptionalNotClassified);
  EXPECT_EQ(spinor_branch_report(make_rational(1, 5), 3, 2).summands.size(), 6u);
}

TEST(SpinorBranch, CollisionsRequireSecondCondition) {
  // distinct b collide only when 2 lambda + n - 1 is in N_+; for n odd the
  // pair (+,b), (-,b) also collides when the leading entry is 0
  for (int n : {3, 4, 5})
    for (int num = -20; num <= 20; ++num) {
      Rational lam = make_rational(num, 4);
      auto rep = spinor_branch_report(lam, n, 16);
      Rational c2 = 2 * lam + n - 1;
      for (auto [a, b] : rep.collisions) {
        const auto &sa = rep.summands[a], &sb = rep.summands[b];
        if (sa.b != sb.b) {
          EXPECT_TRUE(is_positive_natural(c2)) << "n=" << n << " lambda=" << lam;
        } else {
          EXPECT_EQ(n % 2, 1);
          EXPECT_EQ(sgn(sa.character.entries[0]), 0);
          EXPECT_TRUE(is_natural(c2));
        }
      }
    }
  auto edge = spinor_branch_report(Rational(-1), 3, 4);
  EXPECT_TRUE(spinor_conditions_hold(Rational(-1), 3));
  ASSERT_EQ(edge.collisions.size(), 1u);
  EXPECT_EQ(edge.summands[edge.collisions[0].first].b, 0);
}

TEST(Irreducibility, Examples) {
  EXPECT_TRUE(irreducibility_test(make_rational(1, 3), 4));
  EXPECT_FALSE(irreducibility_test(Rational(0), 3));
  EXPECT_FALSE(irreducibility_test(Rational(-1), 4));
  EXPECT_FALSE(irreducibility_test(Rational(0), 4));
  EXPECT_TRUE(irreducibility_test(make_rational(1, 3), 3));
}

TEST(Irreducibility, MatchesAmbientBruteForce) {
  for (const auto& sig : {Signature(2, 3), Signature(2, 4)})
    for (Rational lam : {make_rational(-1, 2), Rational(0), Rational(1), make_rational(1, 3), Rational(-1)}) {
      bool extra = false;
      for (int K = 1; K <= 6; ++K) extra |= !brute_force_sol(K, lam, sig, true).empty();
      EXPECT_EQ(irreducibility_test(lam, sig.n()), !extra) << sig.to_string() << " " << lam;
    }
}

TEST(Factorization, Witness) {
  Signature sig(2, 3);
  auto r = factorization_witness(1, 0, sig);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(f_K(2, Polynomial(r.lambda), sig), sig.xi_prime_sq());
  EXPECT_TRUE(factorization_witness(2, 1, sig).ok());
  EXPECT_TRUE(factorization_witness(2, 2, sig).difference.is_zero());
  EXPECT_THROW(factorization_witness(1, 2, sig), std::invalid_argument);
  for (const auto& s : {Signature(2, 3), Signature(3, 3), Signature(1, 5)})
    for (int k = 0; k <= 4; ++k)
      for (int a = 0; a <= k; ++a) EXPECT_TRUE(factorization_witness(k, a, s).ok()) << k << "," << a;
}

TEST(Factorization, SubmoduleInclusion) {
  Signature sig(2, 3);
  for (int k = 1; k <= 3; ++k)
    for (int a = 0; a <= k; ++a) EXPECT_EQ(submodule_inclusion_failure(k, a, sig, 2 * k + 2), -1) << k << "," << a;
}
