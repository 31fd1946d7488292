#pragma once

#include <fmethod/gegenbauer.hpp>
#include <fmethod/rational.hpp>
#include <fmethod/scalar.hpp>
#include <fmethod/signature.hpp>

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace fmethod {

enum class WeylType { B, D };

/// Infinitesimal character modulo the Weyl group of type B or D.
struct CharacterVector {
  std::vector<Rational> entries;
  WeylType weyl_type = WeylType::B;

  /// Sorted absolute values (descending); for type D with no zero entry the
  /// parity of the number of negative entries is appended as 0/1.
  std::vector<Rational> canonical() const {
    std::vector<Rational> a;
    int negatives = 0;
    bool has_zero = false;
    for (const auto& e : entries) {
      a.push_back(abs(e));
      if (sgn(e) < 0) ++negatives;
      if (sgn(e) == 0) has_zero = true;
    }
    std::sort(a.begin(), a.end(), [](const Rational& x, const Rational& y) { return x > y; });
    if (weyl_type == WeylType::D && !has_zero) a.push_back(Rational(negatives % 2));
    return a;
  }

  friend bool operator==(const CharacterVector& a, const CharacterVector& b) {
    return a.weyl_type == b.weyl_type && a.canonical() == b.canonical();
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> s;
    for (const auto& e : entries) s.push_back(to_string(e));
    return s;
  }
};

inline void require_n(int n) {
  if (n < 3) throw std::invalid_argument("branching requires n >= 3");
}

/// lambda_j = (1 - n + j)/2.
inline Rational lambda_j(int j, int n) { return make_rational(1 - n + j, 2); }

/// The j with lambda = lambda_j, j >= 1, if any.
inline std::optional<int> exceptional_index(const Rational& lambda, int n) {
  Rational j = 2 * lambda + n - 1;
  j.canonicalize();
  if (is_positive_natural(j)) return static_cast<int>(to_long(j));
  return std::nullopt;
}

/// True iff 2 lambda + n is not in {2, 3, 4, ...}.
inline bool is_generic(const Rational& lambda, int n) { return !exceptional_index(lambda, n).has_value(); }

/// Character of the g'-Verma module induced from C_{lambda-b}:
/// (lambda - b + (n-1)/2, (n-3)/2, (n-5)/2, ...) of length floor((n+1)/2).
inline CharacterVector inf_char_scalar(const Rational& lambda, int b, int n) {
  require_n(n);
  CharacterVector c;
  c.weyl_type = n % 2 == 0 ? WeylType::B : WeylType::D;
  c.entries.push_back(lambda - b + make_rational(n - 1, 2));
  int rank = (n + 1) / 2;
  for (int i = 0; i < rank - 1; ++i) c.entries.push_back(make_rational(n - 3 - 2 * i, 2));
  return c;
}

/// Character of the g'-Verma module induced from the spinor S^{n-1}_{eps, lambda-b}:
/// n odd: (lambda-b+(n-1)/2, n/2-1, ..., 3/2, eps/2), type D;
/// n even: (lambda-b+(n-1)/2, n/2-1, ..., 1), type B.
inline CharacterVector inf_char_spinor(const Rational& lambda, int b, int n, int eps = 1) {
  require_n(n);
  CharacterVector c;
  c.entries.push_back(lambda - b + make_rational(n - 1, 2));
  if (n % 2) {
    c.weyl_type = WeylType::D;
    for (Rational v(n - 2, 2); v >= make_rational(3, 2); v -= 1) c.entries.push_back(v);
    c.entries.push_back(make_rational(eps, 2));
  } else {
    c.weyl_type = WeylType::B;
    for (int v = n / 2 - 1; v >= 1; --v) c.entries.push_back(Rational(v));
  }
  return c;
}

enum class Verdict {
  GenericDirectSum,
  OddExceptionalDirectSum,
  EvenExceptionalWithExtensions,
  ExceptionalNotClassified
};

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::GenericDirectSum: return "generic_direct_sum";
    case Verdict::OddExceptionalDirectSum: return "odd_exceptional_direct_sum";
    case Verdict::EvenExceptionalWithExtensions: return "even_exceptional_with_extensions";
    case Verdict::ExceptionalNotClassified: return "exceptional_not_classified";
  }
  return "?";
}

struct Summand {
  int b = 0;
  int epsilon = 0;  // +-1 for spinor summands with n odd, else 0
  CharacterVector character;
  std::optional<int> partner;
};

struct BranchReport {
  Rational lambda;
  int n = 0;
  bool spinor = false;
  Verdict verdict = Verdict::GenericDirectSum;
  bool generic = true;                  // 2 lambda + n not in {2,3,...}
  std::optional<int> exceptional_j;     // lambda = lambda_j
  std::vector<Summand> summands;
  std::vector<std::pair<std::size_t, std::size_t>> collisions;  // summand indices
  int truncated_at = 0;                 // largest b included

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["lambda"] = to_string(lambda);
    j["n"] = n;
    j["spinor"] = spinor;
    j["verdict"] = to_string(verdict);
    j["generic"] = generic;
    j["exceptional_j"] = exceptional_j ? nlohmann::ordered_json(*exceptional_j) : nlohmann::ordered_json();
    auto& s = j["summands"] = nlohmann::ordered_json::array();
    for (const auto& m : summands) {
      nlohmann::ordered_json e;
      e["b"] = m.b;
      if (m.epsilon) e["epsilon"] = m.epsilon;
      e["character"] = m.character.to_strings();
      e["weyl_type"] = m.character.weyl_type == WeylType::B ? "B" : "D";
      e["partner"] = m.partner ? nlohmann::ordered_json(*m.partner) : nlohmann::ordered_json();
      s.push_back(e);
    }
    auto& c = j["collisions"] = nlohmann::ordered_json::array();
    for (auto [a, b] : collisions) {
      nlohmann::ordered_json pair = nlohmann::ordered_json::array();
      for (auto idx : {a, b}) {
        nlohmann::ordered_json e;
        e["b"] = summands[idx].b;
        if (summands[idx].epsilon) e["epsilon"] = summands[idx].epsilon;
        pair.push_back(e);
      }
      c.push_back(pair);
    }
    j["truncated_at"] = truncated_at;
    if (!spinor && verdict == Verdict::EvenExceptionalWithExtensions)
      j["note"] = "partner pairs (a, 2k-a) form non-split extensions; inclusion and character data are checked";
    return j;
  }
};

/// Default truncation floor(2|2 lambda + n|) + 8.
inline int default_bmax(const Rational& lambda, int n) {
  Rational v = 2 * abs(2 * lambda + n);
  mpz_class fl = v.get_num() / v.get_den();
  return static_cast<int>(fl.get_si()) + 8;
}

inline void fill_collisions(BranchReport& rep) {
  for (std::size_t a = 0; a < rep.summands.size(); ++a)
    for (std::size_t b = a + 1; b < rep.summands.size(); ++b)
      if (rep.summands[a].character == rep.summands[b].character) rep.collisions.emplace_back(a, b);
}

/// Restriction of the scalar generalized Verma module to g'.
inline BranchReport scalar_branch_report(const Rational& lambda, int n, std::optional<int> bmax = std::nullopt) {
  require_n(n);
  BranchReport rep;
  rep.lambda = lambda;
  rep.n = n;
  rep.truncated_at = bmax.value_or(default_bmax(lambda, n));
  rep.exceptional_j = exceptional_index(lambda, n);
  rep.generic = !rep.exceptional_j;
  if (!rep.exceptional_j)
    rep.verdict = Verdict::GenericDirectSum;
  else if (*rep.exceptional_j % 2)
    rep.verdict = Verdict::OddExceptionalDirectSum;
  else
    rep.verdict = Verdict::EvenExceptionalWithExtensions;
  for (int b = 0; b <= rep.truncated_at; ++b) {
    Summand s{b, 0, inf_char_scalar(lambda, b, n), std::nullopt};
    if (rep.verdict == Verdict::EvenExceptionalWithExtensions) {
      int j = *rep.exceptional_j;
      if (b < j / 2 || (b > j / 2 && b <= j)) s.partner = j - b;
    }
    rep.summands.push_back(s);
  }
  fill_collisions(rep);
  return rep;
}

/// lambda + n - 3/2 not in N_+ and 2 lambda + n - 1 not in N_+.
inline bool spinor_conditions_hold(const Rational& lambda, int n) {
  Rational c1 = lambda + n - make_rational(3, 2), c2 = 2 * lambda + n - 1;
  c1.canonicalize();
  c2.canonicalize();
  return !is_positive_natural(c1) && !is_positive_natural(c2);
}

/// Restriction of the spinor generalized Verma module to g'.
inline BranchReport spinor_branch_report(const Rational& lambda, int n, std::optional<int> bmax = std::nullopt) {
  require_n(n);
  BranchReport rep;
  rep.lambda = lambda;
  rep.n = n;
  rep.spinor = true;
  rep.truncated_at = bmax.value_or(default_bmax(lambda, n));
  rep.exceptional_j = std::nullopt;
  rep.generic = spinor_conditions_hold(lambda, n);
  rep.verdict = rep.generic ? Verdict::GenericDirectSum : Verdict::ExceptionalNotClassified;
  for (int b = 0; b <= rep.truncated_at; ++b) {
    if (n % 2) {
      for (int eps : {1, -1}) rep.summands.push_back({b, eps, inf_char_spinor(lambda, b, n, eps), std::nullopt});
    } else {
      rep.summands.push_back({b, 0, inf_char_spinor(lambda, b, n), std::nullopt});
    }
  }
  fill_collisions(rep);
  return rep;
}

/// Irreducibility of the ambient scalar Verma module: n/2 + lambda not in N_+,
/// and for n odd also lambda not in N.
inline bool irreducibility_test(const Rational& lambda, int n) {
  require_n(n);
  Rational m = lambda + make_rational(n, 2);
  m.canonicalize();
  if (is_positive_natural(m)) return false;
  if (n % 2 && is_natural(lambda)) return false;
  return true;
}

struct FactorizationReport {
  int k = 0, a = 0;
  Rational lambda;
  Polynomial difference;        // f_{2k-a} - |xi'|^{2(k-a)} f_a at lambda_{2k}
  bool gegenbauer_duality = false;  // C_a^{-k} = C_{2k-a}^{-k}
  bool ok() const { return difference.is_zero() && gegenbauer_duality; }
};

inline FactorizationReport factorization_witness(int k, int a, const Signature& sig) {
  if (a < 0 || a > k) throw std::invalid_argument("factorization requires 0 <= a <= k");
  FactorizationReport rep;
  rep.k = k;
  rep.a = a;
  rep.lambda = lambda_j(2 * k, sig.n());
  Polynomial lam(rep.lambda);
  rep.difference = f_K(2 * k - a, lam, sig) - sig.xi_prime_sq().pow(k - a) * f_K(a, lam, sig);
  Polynomial mk(Rational(-k));
  rep.gegenbauer_duality = gegenbauer_C(a, mk) == gegenbauer_C(2 * k - a, mk) &&
                           gegenbauer_C(a, mk) == gegenbauer_negative_parameter(a, k);
  return rep;
}

/// Pol[xi']·w_{2k-a} inside Pol[xi']·w_a in every degree up to max_degree,
/// at lambda = lambda_{2k}. Returns the first failing degree, or -1.
inline int submodule_inclusion_failure(int k, int a, const Signature& sig, int max_degree) {
  Polynomial lam(lambda_j(2 * k, sig.n()));
  Polynomial big = closed_form_w(2 * k - a, lam, sig), small = closed_form_w(a, lam, sig);
  auto primed = sig.xi_vars(sig.n() - 1);
  for (int d = 2 * k - a; d <= max_degree; ++d) {
    std::vector<Polynomial> sub, super;
    for (const auto& m : monomials_of_degree(primed, d - (2 * k - a))) sub.push_back(Polynomial::term(m, 1) * big);
    for (const auto& m : monomials_of_degree(primed, d - a)) super.push_back(Polynomial::term(m, 1) * small);
    if (!in_span(super, sub)) return d;
  }
  return -1;
}

}  // namespace fmethod
