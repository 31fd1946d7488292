#pragma once

#include <fmethod/polynomial.hpp>
#include <fmethod/rational.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmethod {

enum class GegenbauerVariant { C, Ctilde, Cscript, CscriptTilde };

inline std::string to_string(GegenbauerVariant v) {
  switch (v) {
    case GegenbauerVariant::C: return "C";
    case GegenbauerVariant::Ctilde: return "Ctilde";
    case GegenbauerVariant::Cscript: return "Cscript";
    case GegenbauerVariant::CscriptTilde: return "CscriptTilde";
  }
  return "?";
}

inline GegenbauerVariant parse_variant(const std::string& s) {
  if (s == "C") return GegenbauerVariant::C;
  if (s == "Ctilde") return GegenbauerVariant::Ctilde;
  if (s == "Cscript") return GegenbauerVariant::Cscript;
  if (s == "CscriptTilde") return GegenbauerVariant::CscriptTilde;
  throw std::invalid_argument("unknown Gegenbauer variant '" + s + "'");
}

inline bool is_renormalized(GegenbauerVariant v) {
  return v == GegenbauerVariant::Ctilde || v == GegenbauerVariant::CscriptTilde;
}
inline bool is_inflated(GegenbauerVariant v) {
  return v == GegenbauerVariant::Cscript || v == GegenbauerVariant::CscriptTilde;
}

namespace detail {

/// prod_{m=from}^{to} (alpha + m); empty product is 1.
inline Polynomial shifted_product(const Polynomial& alpha, long from, long to) {
  Polynomial out(1);
  for (long m = from; m <= to; ++m) out *= alpha + Polynomial(Rational(m));
  return out;
}

/// Coefficient of x^{l-2k}, for k = 0..floor(l/2).
inline std::vector<Polynomial> gegenbauer_coefficients(int l, bool renormalized, const Polynomial& alpha) {
  if (l < 0) return {};
  std::vector<Polynomial> c;
  long start = renormalized ? (l + 1) / 2 : 0;
  for (int k = 0; 2 * k <= l; ++k) {
    Rational scalar = pow(Rational(2), l - 2 * k) / (factorial(k) * factorial(l - 2 * k));
    if (k % 2) scalar = -scalar;
    c.push_back(scalar * shifted_product(alpha, start, l - k - 1));
  }
  return c;
}

}  // namespace detail

/// C_l^alpha(x) with x = Var::u(). alpha may be any polynomial (symbolic,
/// shifted, or a rational constant). Negative l gives 0.
inline Polynomial gegenbauer_C(int l, const Polynomial& alpha = var(Var::alpha())) {
  Polynomial out;
  auto c = detail::gegenbauer_coefficients(l, false, alpha);
  for (std::size_t k = 0; k < c.size(); ++k) out += c[k] * var(Var::u()).pow(l - 2 * static_cast<int>(k));
  return out;
}

/// C_l^alpha / (alpha)_{floor((l+1)/2)}, built from the closed coefficient
/// product so it stays polynomial in alpha.
inline Polynomial gegenbauer_Ctilde(int l, const Polynomial& alpha = var(Var::alpha())) {
  Polynomial out;
  auto c = detail::gegenbauer_coefficients(l, true, alpha);
  for (std::size_t k = 0; k < c.size(); ++k) out += c[k] * var(Var::u()).pow(l - 2 * static_cast<int>(k));
  return out;
}

/// Inflated polynomial with Cscript_l(x^2) = x^l C_l(1/x), in the variable v.
inline Polynomial inflated_Cscript(int l, bool renormalized, const Polynomial& alpha = var(Var::alpha()),
                                   Var v = Var::t()) {
  Polynomial out;
  auto c = detail::gegenbauer_coefficients(l, renormalized, alpha);
  for (std::size_t k = 0; k < c.size(); ++k) out += c[k] * var(v).pow(static_cast<int>(k));
  return out;
}

struct GegenbauerPoly {
  int l;
  GegenbauerVariant variant;
  Polynomial body;
};

inline GegenbauerPoly gegenbauer(int l, GegenbauerVariant variant, const Polynomial& alpha = var(Var::alpha())) {
  if (l < 0 && !is_inflated(variant)) throw std::invalid_argument("degree must be non-negative");
  if (l < -1) throw std::invalid_argument("degree must be >= -1");
  Polynomial body;
  switch (variant) {
    case GegenbauerVariant::C: body = gegenbauer_C(l, alpha); break;
    case GegenbauerVariant::Ctilde: body = gegenbauer_Ctilde(l, alpha); break;
    case GegenbauerVariant::Cscript: body = inflated_Cscript(l, false, alpha); break;
    case GegenbauerVariant::CscriptTilde: body = inflated_Cscript(l, true, alpha); break;
  }
  return {l, variant, body};
}

/// R(l,alpha)h = 4v(1+v)h'' + ((6-4l)v + 4(1-alpha-l))h' + l(l-1)h.
inline Polynomial ode_residual_R(int l, const Polynomial& h, const Polynomial& alpha, Var v = Var::t()) {
  Polynomial t = var(v);
  Polynomial d1 = derivative(h, v);
  Polynomial d2 = derivative(d1, v);
  Polynomial first = Rational(6 - 4 * l) * t + Rational(4) * (Polynomial(Rational(1 - l)) - alpha);
  return Rational(4) * t * (Polynomial(1) + t) * d2 + first * d1 + Polynomial(Rational(l * (l - 1))) * h;
}

/// (1-x^2)g'' - (2alpha+1)xg' + l(l+2alpha)g in x = Var::u().
inline Polynomial gegenbauer_ode_residual(int l, const Polynomial& g, const Polynomial& alpha) {
  Polynomial x = var(Var::u());
  Polynomial d1 = derivative(g, Var::u());
  Polynomial d2 = derivative(d1, Var::u());
  return (Polynomial(1) - x * x) * d2 - (Rational(2) * alpha + Polynomial(1)) * x * d1 +
         Rational(l) * (Polynomial(Rational(l)) + Rational(2) * alpha) * g;
}

/// Closed form of C_a^{-k}(x): (-1)^a k! sum_i (2x)^{a-2i} / ((k-a+i)! i! (a-2i)!),
/// terms with k-a+i < 0 dropped.
inline Polynomial gegenbauer_negative_parameter(int a, int k) {
  Polynomial out;
  for (int i = 0; 2 * i <= a; ++i) {
    if (k - a + i < 0) continue;
    Rational c = factorial(k) * pow(Rational(2), a - 2 * i) /
                 (factorial(k - a + i) * factorial(i) * factorial(a - 2 * i));
    if (a % 2) c = -c;
    out += c * var(Var::u()).pow(a - 2 * i);
  }
  return out;
}

/// x^l p(1/x) for a polynomial of degree <= l in v.
inline Polynomial reverse_in(const Polynomial& p, Var v, int l) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    int e = m.exponent(v);
    if (e > l) throw std::domain_error("degree exceeds reversal length");
    Monomial r = m;
    r.set(v, l - e);
    out.add_term(r, c);
  }
  return out;
}

struct IdentityReport {
  std::string name;
  bool ok = true;
  int cases = 0;
  // first failure
  int failing_l = -1;
  std::string failing_alpha_coefficient;
  std::string detail;
};

inline const std::vector<std::string>& gegenbauer_identity_names() {
  static const std::vector<std::string> names{
      "derivative",        "three_term",       "contiguous",        "renorm_deriv_even",
      "renorm_deriv_odd",  "renorm_three_even", "renorm_three_odd", "dual_negative_k"};
  return names;
}

/// Checks one named identity for every admissible degree up to l_max.
inline IdentityReport verify_identity(const std::string& name, int l_max) {
  if (l_max < 1) throw std::invalid_argument("l_max must be >= 1");
  IdentityReport rep;
  rep.name = name;
  const Polynomial a = var(Var::alpha());
  const Polynomial a1 = a + Polynomial(1);
  const Polynomial x = var(Var::u());
  auto fail = [&](int l, const Polynomial& residual, const std::string& what) {
    if (!rep.ok) return;
    rep.ok = false;
    rep.failing_l = l;
    // the first nonzero coefficient in x, as a polynomial in alpha
    auto coeffs = residual.coefficients_in(Var::u());
    if (!coeffs.empty()) rep.failing_alpha_coefficient = coeffs.begin()->second.to_string();
    rep.detail = what + ": residual " + residual.to_string();
  };
  auto check = [&](int l, const Polynomial& residual, const std::string& what) {
    ++rep.cases;
    if (!residual.is_zero()) fail(l, residual, what);
  };

  if (name == "derivative") {
    for (int l = 1; l <= l_max; ++l)
      check(l, derivative(gegenbauer_C(l), Var::u()) - Rational(2) * a * gegenbauer_C(l - 1, a1),
            "d/dx C_l = 2 alpha C_{l-1}^{alpha+1}");
  } else if (name == "three_term") {
    for (int l = 2; l <= l_max; ++l)
      check(l,
            Rational(l) * gegenbauer_C(l) - Rational(2) * x * (a + Polynomial(Rational(l - 1))) * gegenbauer_C(l - 1) +
                (Rational(2) * a + Polynomial(Rational(l - 2))) * gegenbauer_C(l - 2),
            "three-term recurrence");
  } else if (name == "contiguous") {
    for (int l = 1; l <= l_max; ++l) {
      check(l,
            Rational(l) * gegenbauer_C(l) - Rational(2) * a * x * gegenbauer_C(l - 1, a1) +
                Rational(2) * a * gegenbauer_C(l - 2, a1),
            "l C_l - 2 alpha x C_{l-1}^{alpha+1} + 2 alpha C_{l-2}^{alpha+1}");
      check(l,
            Rational(-2) * a * gegenbauer_C(l, a1) + (Rational(2) * a + Polynomial(Rational(l))) * gegenbauer_C(l) +
                Rational(2) * a * x * gegenbauer_C(l - 1, a1),
            "-2 alpha C_l^{alpha+1} + (l+2alpha) C_l + 2 alpha x C_{l-1}^{alpha+1}");
    }
  } else if (name == "renorm_deriv_even") {
    for (int N = 1; 2 * N <= l_max; ++N)
      check(2 * N,
            derivative(gegenbauer_Ctilde(2 * N), Var::u()) -
                Rational(2) * (a + Polynomial(Rational(N))) * gegenbauer_Ctilde(2 * N - 1, a1),
            "d/dx Ctilde_{2N} = 2(alpha+N) Ctilde_{2N-1}^{alpha+1}");
  } else if (name == "renorm_deriv_odd") {
    for (int N = 0; 2 * N + 1 <= l_max; ++N)
      check(2 * N + 1,
            derivative(gegenbauer_Ctilde(2 * N + 1), Var::u()) - Rational(2) * gegenbauer_Ctilde(2 * N, a1),
            "d/dx Ctilde_{2N+1} = 2 Ctilde_{2N}^{alpha+1}");
  } else if (name == "renorm_three_even") {
    for (int N = 1; 2 * N <= l_max; ++N)
      check(2 * N,
            Rational(N) * gegenbauer_Ctilde(2 * N) -
                (a + Polynomial(Rational(N))) * x * gegenbauer_Ctilde(2 * N - 1, a1) +
                gegenbauer_Ctilde(2 * N - 2, a1),
            "N Ctilde_{2N} - (alpha+N) x Ctilde_{2N-1}^{alpha+1} + Ctilde_{2N-2}^{alpha+1}");
  } else if (name == "renorm_three_odd") {
    for (int N = 0; 2 * N + 1 <= l_max; ++N)
      check(2 * N + 1,
            Rational(2 * N + 1) * gegenbauer_Ctilde(2 * N + 1) - Rational(2) * x * gegenbauer_Ctilde(2 * N, a1) +
                Rational(2) * gegenbauer_Ctilde(2 * N - 1, a1),
            "(2N+1) Ctilde_{2N+1} - 2x Ctilde_{2N}^{alpha+1} + 2 Ctilde_{2N-1}^{alpha+1}");
  } else if (name == "dual_negative_k") {
    for (int k = 1; 2 * k <= l_max; ++k) {
      Polynomial mk(Rational(-k));
      for (int a_deg = 0; a_deg <= 2 * k; ++a_deg) {
        Polynomial direct = gegenbauer_C(a_deg, mk);
        Polynomial closed = gegenbauer_negative_parameter(a_deg, k);
        check(a_deg, direct - closed, "C_a^{-k} against the closed negative-parameter sum, k=" + std::to_string(k));
        check(a_deg, closed - gegenbauer_negative_parameter(2 * k - a_deg, k),
              "C_a^{-k} = C_{2k-a}^{-k}, k=" + std::to_string(k));
        if (a_deg <= k)
          check(a_deg,
                inflated_Cscript(2 * k - a_deg, false, mk, Var::s()) -
                    var(Var::s()).pow(k - a_deg) * inflated_Cscript(a_deg, false, mk, Var::s()),
                "Cscript_{2k-a}^{-k}(s) = s^{k-a} Cscript_a^{-k}(s), k=" + std::to_string(k));
      }
    }
  } else {
    throw std::invalid_argument("unknown identity '" + name + "'");
  }
  return rep;
}

/// Coefficients of t^0..t^{terms-1} in (1 - 2xt + t^2)^{-m}, by truncated
/// series inversion followed by repeated truncated multiplication.
inline std::vector<Polynomial> generating_function_coefficients(int m, int terms) {
  if (m < 1) throw std::invalid_argument("integer parameter must be >= 1");
  const Polynomial x = var(Var::u());
  std::vector<Polynomial> g{Polynomial(1), Rational(-2) * x, Polynomial(1)};
  std::vector<Polynomial> inv(terms);
  for (int k = 0; k < terms; ++k) {
    Polynomial acc = k == 0 ? Polynomial(1) : Polynomial();
    for (int i = 1; i <= std::min(k, 2); ++i) acc -= g[i] * inv[k - i];
    inv[k] = acc;
  }
  std::vector<Polynomial> out(terms);
  out[0] = Polynomial(1);
  for (int r = 0; r < m; ++r) {
    std::vector<Polynomial> next(terms);
    for (int i = 0; i < terms; ++i)
      for (int j = 0; i + j < terms; ++j) next[i + j] += out[i] * inv[j];
    out = std::move(next);
  }
  return out;
}

/// Whether the first `terms` series coefficients match C_l^m for l < terms.
inline bool generating_function_matches(int m, int terms) {
  auto coeffs = generating_function_coefficients(m, terms);
  for (int l = 0; l < terms; ++l)
    if (coeffs[l] != gegenbauer_C(l, Polynomial(Rational(m)))) return false;
  return true;
}

/// The lowest coefficient of Ctilde_l (x^{l mod 2}) is a nonzero rational, so
/// Ctilde_l and CscriptTilde_l never vanish under alpha instantiation.
inline Rational renormalized_floor_coefficient(int l) {
  auto c = detail::gegenbauer_coefficients(l, true, var(Var::alpha()));
  const Polynomial& last = c.back();
  if (!last.is_constant()) throw std::logic_error("lowest renormalized coefficient depends on alpha");
  return last.constant_term();
}

}  // namespace fmethod
