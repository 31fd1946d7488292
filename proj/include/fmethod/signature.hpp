#pragma once

#include <fmethod/polynomial.hpp>
#include <fmethod/rational.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmethod {

/// Signature (p,q) of the ambient space; the flat model R^{p-1,q-1} has
/// dimension n = p+q-2 with metric signs eps_i = +1 for i < p, -1 otherwise.
class Signature {
 public:
  Signature(int p, int q) : p_(p), q_(q) {
    if (p < 1) throw std::invalid_argument("signature requires p >= 1");
    if (q < 2) throw std::invalid_argument("signature requires q >= 2");
    if (n() > kMaxDim) throw std::invalid_argument("n = p+q-2 exceeds " + std::to_string(kMaxDim));
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int n() const { return p_ + q_ - 2; }

  /// eps_i for 1 <= i <= n.
  int eps(int i) const {
    check(i);
    return i <= p_ - 1 ? 1 : -1;
  }

  std::vector<int> epsilon() const {
    std::vector<int> e;
    for (int i = 1; i <= n(); ++i) e.push_back(eps(i));
    return e;
  }

  void check(int i) const {
    if (i < 1 || i > n())
      throw std::out_of_range("index " + std::to_string(i) + " outside 1.." + std::to_string(n()));
  }

  std::vector<Var> xi_vars(int upto = -1) const {
    std::vector<Var> v;
    for (int i = 1; i <= (upto < 0 ? n() : upto); ++i) v.push_back(Var::xi(i));
    return v;
  }
  std::vector<Var> x_vars(int upto = -1) const {
    std::vector<Var> v;
    for (int i = 1; i <= (upto < 0 ? n() : upto); ++i) v.push_back(Var::x(i));
    return v;
  }

  /// sum_{i<=m} eps_i v_i^2, m defaults to n.
  Polynomial quadratic(Var::Kind kind, int m = -1) const {
    Polynomial out;
    for (int i = 1; i <= (m < 0 ? n() : m); ++i) {
      Var v = kind == Var::Kind::Xi ? Var::xi(i) : Var::x(i);
      out.add_term(Monomial::of(v, 2), Rational(eps(i)));
    }
    return out;
  }

  /// |xi'|^2 = sum_{i<n} eps_i xi_i^2.
  Polynomial xi_prime_sq() const { return quadratic(Var::Kind::Xi, n() - 1); }

  std::string to_string() const { return "(" + std::to_string(p_) + "," + std::to_string(q_) + ")"; }

  friend bool operator==(const Signature& a, const Signature& b) { return a.p_ == b.p_ && a.q_ == b.q_; }

 private:
  int p_, q_;
};

/// Laplacian sum_k eps_k d^2/dv_k^2 over the first m coordinates of one kind.
inline Polynomial box(const Polynomial& f, const Signature& sig, Var::Kind kind, int m = -1) {
  Polynomial out;
  for (int k = 1; k <= (m < 0 ? sig.n() : m); ++k) {
    Var v = kind == Var::Kind::Xi ? Var::xi(k) : Var::x(k);
    Polynomial d2 = derivative(f, v, 2);
    if (sig.eps(k) > 0)
      out += d2;
    else
      out -= d2;
  }
  return out;
}

/// Euler operator sum_k v_k d/dv_k over the first m coordinates of one kind.
inline Polynomial euler(const Polynomial& f, const Signature& sig, Var::Kind kind, int m = -1) {
  int top = m < 0 ? sig.n() : m;
  Polynomial out;
  for (const auto& [mono, c] : f.terms()) {
    int d = 0;
    for (int k = 1; k <= top; ++k) d += mono.exponent(kind == Var::Kind::Xi ? Var::xi(k) : Var::x(k));
    out.add_term(mono, c * d);
  }
  return out;
}

/// The inducing parameter: either the formal variable L or a rational value.
class DensityParam {
 public:
  DensityParam() = default;  // symbolic
  DensityParam(const Rational& v) : value_(v) {}  // NOLINT
  DensityParam(long v) : value_(Rational(v)) {}   // NOLINT

  static DensityParam symbolic() { return DensityParam(); }
  /// Accepts "symbolic" or a rational literal.
  static DensityParam parse(const std::string& text) {
    if (text == "symbolic" || text == "L") return symbolic();
    return DensityParam(parse_rational(text));
  }

  bool is_symbolic() const { return !value_.has_value(); }
  const Rational& value() const {
    if (!value_) throw std::logic_error("symbolic parameter has no value");
    return *value_;
  }
  Polynomial poly() const { return value_ ? Polynomial(*value_) : var(Var::lambda()); }

  /// lambda + c, keeping symbolic status.
  DensityParam shifted(const Rational& c) const {
    if (!value_) throw std::logic_error("cannot shift symbolic parameter into a DensityParam");
    return DensityParam(*value_ + c);
  }

  std::string to_string() const { return value_ ? fmethod::to_string(*value_) : "symbolic"; }

 private:
  std::optional<Rational> value_;
};

}  // namespace fmethod
