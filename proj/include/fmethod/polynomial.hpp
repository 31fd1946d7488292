#pragma once

#include <fmethod/rational.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fmethod {

/// Largest n = p+q-2 supported by the dense exponent layout.
inline constexpr int kMaxDim = 8;

/// A polynomial variable. Lambda and Alpha are the formal parameters; T and S
/// are radial variables; U is the univariate Gegenbauer argument (printed `x`);
/// Xi(i) are Fourier-side coordinates and X(i) the coordinates on n_-.
class Var {
 public:
  enum class Kind : std::uint8_t { Lambda, Alpha, T, S, U, Xi, X };

  static constexpr Var lambda() { return Var(Kind::Lambda, 0); }
  static constexpr Var alpha() { return Var(Kind::Alpha, 0); }
  static constexpr Var t() { return Var(Kind::T, 0); }
  static constexpr Var s() { return Var(Kind::S, 0); }
  static constexpr Var u() { return Var(Kind::U, 0); }
  static Var xi(int i) { return Var(Kind::Xi, checked(i)); }
  static Var x(int i) { return Var(Kind::X, checked(i)); }

  constexpr Kind kind() const { return kind_; }
  constexpr int index() const { return index_; }

  /// Position in the exponent vector; also fixes the lexicographic order.
  constexpr int slot() const {
    switch (kind_) {
      case Kind::Lambda: return 0;
      case Kind::Alpha: return 1;
      case Kind::T: return 2;
      case Kind::S: return 3;
      case Kind::U: return 4;
      case Kind::Xi: return 4 + index_;
      case Kind::X: return 4 + kMaxDim + index_;
    }
    return -1;
  }

  static Var from_slot(int slot) {
    switch (slot) {
      case 0: return lambda();
      case 1: return alpha();
      case 2: return t();
      case 3: return s();
      case 4: return u();
      default: break;
    }
    if (slot <= 4 + kMaxDim) return xi(slot - 4);
    return x(slot - 4 - kMaxDim);
  }

  std::string name() const {
    switch (kind_) {
      case Kind::Lambda: return "L";
      case Kind::Alpha: return "alpha";
      case Kind::T: return "t";
      case Kind::S: return "s";
      case Kind::U: return "x";
      case Kind::Xi: return "xi" + std::to_string(index_);
      case Kind::X: return "x" + std::to_string(index_);
    }
    return "?";
  }

  friend constexpr bool operator==(Var a, Var b) { return a.kind_ == b.kind_ && a.index_ == b.index_; }

 private:
  constexpr Var(Kind k, int i) : kind_(k), index_(static_cast<std::uint8_t>(i)) {}
  static int checked(int i) {
    if (i < 1 || i > kMaxDim)
      throw std::out_of_range("coordinate index " + std::to_string(i) + " outside 1.." +
                              std::to_string(kMaxDim));
    return i;
  }
  Kind kind_;
  std::uint8_t index_;
};

inline constexpr int kNumSlots = 5 + 2 * kMaxDim;

/// Dense exponent vector. Ordered graded-lexicographically: total degree
/// first, then lexicographic on slots.
class Monomial {
 public:
  Monomial() { exps_.fill(0); }

  static Monomial of(Var v, int e = 1) {
    Monomial m;
    m.set(v, e);
    return m;
  }

  int exponent(Var v) const { return exps_[v.slot()]; }
  int exponent_at(int slot) const { return exps_[slot]; }
  int degree() const { return degree_; }

  void set(Var v, int e) {
    if (e < 0 || e > 255) throw std::out_of_range("exponent out of range");
    degree_ += e - exps_[v.slot()];
    exps_[v.slot()] = static_cast<std::uint8_t>(e);
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kNumSlots; ++i) {
      int e = exps_[i] + o.exps_[i];
      if (e > 255) throw std::overflow_error("monomial exponent overflow");
      r.exps_[i] = static_cast<std::uint8_t>(e);
    }
    r.degree_ = degree_ + o.degree_;
    return r;
  }

  /// Degree restricted to a set of variables.
  template <class Pred>
  int degree_if(Pred&& pred) const {
    int d = 0;
    for (int i = 0; i < kNumSlots; ++i)
      if (exps_[i] && pred(Var::from_slot(i))) d += exps_[i];
    return d;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.exps_ < b.exps_;
  }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < kNumSlots; ++i) {
      if (!exps_[i]) continue;
      if (!out.empty()) out += '*';
      out += Var::from_slot(i).name();
      if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
    }
    return out;
  }

 private:
  std::array<std::uint8_t, kNumSlots> exps_;
  int degree_ = 0;
};

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored and iteration follows ascending graded-lex order.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT: scalars embed implicitly
    if (sgn(c) != 0) terms_.emplace(Monomial(), c).first->second.canonicalize();
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  Polynomial(int c) : Polynomial(Rational(c)) {}   // NOLINT

  static Polynomial variable(Var v) { return term(Monomial::of(v), Rational(1)); }
  static Polynomial term(const Monomial& m, const Rational& c) {
    Polynomial p;
    if (sgn(c) != 0) p.terms_.emplace(m, c).first->second.canonicalize();
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coefficient(Monomial()); }

  /// Largest term in graded-lex order.
  const std::pair<const Monomial, Rational>& leading() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return *terms_.rbegin();
  }

  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
  int degree_in(Var v) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
    return d;
  }
  template <class Pred>
  int degree_if(Pred&& pred) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_if(pred));
    return d;
  }
  bool involves(Var v) const {
    for (const auto& [m, c] : terms_)
      if (m.exponent(v)) return true;
    return false;
  }

  /// Univariate view: exponent of v -> coefficient polynomial (free of v).
  std::map<int, Polynomial> coefficients_in(Var v) const {
    std::map<int, Polynomial> out;
    for (const auto& [m, c] : terms_) {
      Monomial rest = m;
      int e = m.exponent(v);
      rest.set(v, 0);
      out[e].add_term(rest, c);
    }
    return out;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (inserted) {
      it->second.canonicalize();
    } else {
      Rational v = c;
      v.canonicalize();
      it->second += v;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    Rational v = s;
    v.canonicalize();
    for (auto& [m, c] : terms_) c *= v;
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.is_constant()) return a * b.constant_term();
    if (a.is_constant()) return b * a.constant_term();
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(int e) const {
    if (e < 0) throw std::domain_error("negative polynomial power");
    Polynomial r(1), base = *this;
    while (e) {
      if (e & 1) r *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return r;
  }

  /// Canonical text: ascending graded-lex, e.g. `-1*xi3^2 + 1*xi1^2`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational mag = abs(c);
      std::string body = fmethod::to_string(mag);
      if (m.degree() > 0) body += "*" + m.to_string();
      if (first)
        out += (sgn(c) < 0 ? "-" : "") + body;
      else
        out += (sgn(c) < 0 ? " - " : " + ") + body;
      first = false;
    }
    return out;
  }

 private:
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

inline Polynomial var(Var v) { return Polynomial::variable(v); }

inline Polynomial derivative(const Polynomial& f, Var v) {
  Polynomial out;
  for (const auto& [m, c] : f.terms()) {
    int e = m.exponent(v);
    if (!e) continue;
    Monomial d = m;
    d.set(v, e - 1);
    out.add_term(d, c * e);
  }
  return out;
}

inline Polynomial derivative(const Polynomial& f, Var v, int order) {
  Polynomial out = f;
  for (int i = 0; i < order && !out.is_zero(); ++i) out = derivative(out, v);
  return out;
}

/// Replaces every occurrence of v by g.
inline Polynomial substitute(const Polynomial& f, Var v, const Polynomial& g) {
  std::vector<Polynomial> powers{Polynomial(1)};
  Polynomial out;
  for (const auto& [m, c] : f.terms()) {
    int e = m.exponent(v);
    while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * g);
    Monomial rest = m;
    rest.set(v, 0);
    out += Polynomial::term(rest, c) * powers[e];
  }
  return out;
}

inline Polynomial substitute(const Polynomial& f, Var v, const Rational& value) {
  return substitute(f, v, Polynomial(value));
}

/// Scales p so that its graded-lex leading coefficient is +1.
inline Polynomial normalize_leading(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / p.leading().second);
}

/// Parses the canonical text form (and slightly more: spaces anywhere, any
/// term order, omitted unit coefficients).
inline Polynomial parse_polynomial(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) {
    return std::invalid_argument("polynomial parse error at " + std::to_string(pos) + ": " + what);
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_uint = [&]() -> std::string {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw fail("expected digits");
    return std::string(text.substr(start, pos - start));
  };
  auto read_var = [&]() -> Var {
    std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string name(text.substr(start, pos - start));
    std::string digits;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) digits += text[pos++];
    if (name == "L" && digits.empty()) return Var::lambda();
    if (name == "alpha" && digits.empty()) return Var::alpha();
    if (name == "t" && digits.empty()) return Var::t();
    if (name == "s" && digits.empty()) return Var::s();
    if (name == "x" && digits.empty()) return Var::u();
    if (name == "xi" && !digits.empty()) return Var::xi(std::stoi(digits));
    if (name == "x" && !digits.empty()) return Var::x(std::stoi(digits));
    throw fail("unknown variable '" + name + digits + "'");
  };

  Polynomial out;
  skip();
  if (text.substr(pos) == "0") return out;
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;
    Rational coeff(sign);
    Monomial mono;
    bool need_factor = true;
    while (need_factor) {
      skip();
      if (pos >= text.size()) throw fail("dangling operator");
      if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
        std::string num = read_uint();
        std::string den = "1";
        skip();
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          skip();
          den = read_uint();
        }
        coeff *= parse_rational(num + "/" + den);
      } else if (std::isalpha(static_cast<unsigned char>(text[pos]))) {
        Var v = read_var();
        int e = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip();
          e = std::stoi(read_uint());
        }
        mono.set(v, mono.exponent(v) + e);
      } else {
        throw fail(std::string("unexpected character '") + text[pos] + "'");
      }
      skip();
      need_factor = pos < text.size() && text[pos] == '*';
      if (need_factor) ++pos;
    }
    out.add_term(mono, coeff);
  }
  return out;
}

/// All monomials of total degree d in the given variables, ascending graded-lex.
inline std::vector<Monomial> monomials_of_degree(const std::vector<Var>& vars, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (vars.empty()) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == vars.size()) {
      cur.set(vars[i], left);
      out.push_back(cur);
      cur.set(vars[i], 0);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur.set(vars[i], e);
      self(self, i + 1, left - e);
    }
    cur.set(vars[i], 0);
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fmethod
