#pragma once

#include <fmethod/polynomial.hpp>
#include <fmethod/signature.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fmethod {

/// Basis blade e_{i1}...e_{ik}, i1 < ... < ik, stored as a bitmask (bit i-1
/// for e_i). Ordered by grade, then lexicographically on the index list.
class Blade {
 public:
  Blade() = default;
  explicit Blade(std::uint32_t mask) : mask_(mask) {}
  static Blade scalar() { return Blade(0); }
  static Blade e(int i) {
    if (i < 1 || i > kMaxDim) throw std::out_of_range("blade index out of range");
    return Blade(1u << (i - 1));
  }
  static Blade of(const std::vector<int>& indices) {
    std::uint32_t m = 0;
    for (int i : indices) {
      std::uint32_t bit = e(i).mask_;
      if (m & bit) throw std::invalid_argument("repeated blade index");
      m |= bit;
    }
    return Blade(m);
  }

  std::uint32_t mask() const { return mask_; }
  int grade() const { return std::popcount(mask_); }
  bool contains(int i) const { return mask_ & (1u << (i - 1)); }
  std::vector<int> indices() const {
    std::vector<int> out;
    for (int i = 1; i <= kMaxDim; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  std::string to_string() const {
    if (!mask_) return "1";
    std::string s = "e";
    for (int i : indices()) s += std::to_string(i);
    return s;
  }

  friend bool operator==(Blade a, Blade b) { return a.mask_ == b.mask_; }
  friend bool operator<(Blade a, Blade b) {
    if (a.grade() != b.grade()) return a.grade() < b.grade();
    return a.indices() < b.indices();
  }

 private:
  std::uint32_t mask_ = 0;
};

/// All 2^n blades in canonical order.
inline std::vector<Blade> all_blades(int n) {
  std::vector<Blade> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) out.emplace_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

/// Sign of e_A e_B = sign * e_{A xor B}, using e_i^2 = -eps_i.
inline int blade_product_sign(Blade a, Blade b, const Signature& sig) {
  int swaps = 0;
  for (int i : b.indices()) {
    std::uint32_t higher = a.mask() & ~((1u << i) - 1);  // bits of indices > i
    swaps += std::popcount(higher);
  }
  int sign = swaps % 2 ? -1 : 1;
  for (int i : Blade(a.mask() & b.mask()).indices()) sign *= -sig.eps(i);
  return sign;
}

/// Clifford-valued polynomial: blade -> polynomial coefficient.
class CliffordPolynomial {
 public:
  using Components = std::map<Blade, Polynomial>;

  CliffordPolynomial() = default;
  CliffordPolynomial(const Polynomial& p) { add(Blade::scalar(), p); }  // NOLINT
  CliffordPolynomial(Blade b, const Polynomial& p) { add(b, p); }

  static CliffordPolynomial basis_vector(int i) { return CliffordPolynomial(Blade::e(i), Polynomial(1)); }

  const Components& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }
  Polynomial component(Blade b) const {
    auto it = comps_.find(b);
    return it == comps_.end() ? Polynomial() : it->second;
  }

  void add(Blade b, const Polynomial& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = comps_.emplace(b, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  CliffordPolynomial& operator+=(const CliffordPolynomial& o) {
    for (const auto& [b, p] : o.comps_) add(b, p);
    return *this;
  }
  CliffordPolynomial& operator-=(const CliffordPolynomial& o) {
    for (const auto& [b, p] : o.comps_) add(b, -p);
    return *this;
  }
  friend CliffordPolynomial operator+(CliffordPolynomial a, const CliffordPolynomial& b) { return a += b; }
  friend CliffordPolynomial operator-(CliffordPolynomial a, const CliffordPolynomial& b) { return a -= b; }
  friend CliffordPolynomial operator-(CliffordPolynomial a) {
    for (auto& [b, p] : a.comps_) p = -p;
    return a;
  }

  /// Multiplication by a scalar-valued polynomial (central).
  friend CliffordPolynomial operator*(const Polynomial& s, const CliffordPolynomial& a) {
    CliffordPolynomial out;
    for (const auto& [b, p] : a.comps_) out.add(b, s * p);
    return out;
  }
  friend CliffordPolynomial operator*(const CliffordPolynomial& a, const Polynomial& s) { return s * a; }

  friend bool operator==(const CliffordPolynomial& a, const CliffordPolynomial& b) { return a.comps_ == b.comps_; }
  friend bool operator!=(const CliffordPolynomial& a, const CliffordPolynomial& b) { return !(a == b); }

  /// Largest degree over all components restricted to a variable predicate.
  template <class Pred>
  int degree_if(Pred&& pred) const {
    int d = -1;
    for (const auto& [b, p] : comps_) d = std::max(d, p.degree_if(pred));
    return d;
  }

  /// Blade-tagged canonical text: `(poly)*e12 + ...`, blades in canonical order.
  std::string to_string() const {
    if (comps_.empty()) return "0";
    std::string out;
    for (const auto& [b, p] : comps_) {
      if (!out.empty()) out += " + ";
      out += "(" + p.to_string() + ")*" + b.to_string();
    }
    return out;
  }

 private:
  Components comps_;
};

inline std::ostream& operator<<(std::ostream& os, const CliffordPolynomial& c) { return os << c.to_string(); }

inline CliffordPolynomial clifford_mul(const CliffordPolynomial& a, const CliffordPolynomial& b, const Signature& sig) {
  CliffordPolynomial out;
  for (const auto& [ba, pa] : a.components())
    for (const auto& [bb, pb] : b.components()) {
      int s = blade_product_sign(ba, bb, sig);
      Polynomial prod = pa * pb;
      out.add(Blade(ba.mask() ^ bb.mask()), s > 0 ? prod : -prod);
    }
  return out;
}

/// Left multiplication by the basis vector e_k.
inline CliffordPolynomial left_e(int k, const CliffordPolynomial& f, const Signature& sig) {
  sig.check(k);
  CliffordPolynomial out;
  Blade ek = Blade::e(k);
  for (const auto& [b, p] : f.components()) {
    int s = blade_product_sign(ek, b, sig);
    out.add(Blade(ek.mask() ^ b.mask()), s > 0 ? p : -p);
  }
  return out;
}

/// Right multiplication by a constant blade.
inline CliffordPolynomial right_blade(const CliffordPolynomial& f, Blade r, const Signature& sig) {
  CliffordPolynomial out;
  for (const auto& [b, p] : f.components()) {
    int s = blade_product_sign(b, r, sig);
    out.add(Blade(b.mask() ^ r.mask()), s > 0 ? p : -p);
  }
  return out;
}

inline CliffordPolynomial derivative(const CliffordPolynomial& f, Var v, int order = 1) {
  CliffordPolynomial out;
  for (const auto& [b, p] : f.components()) out.add(b, derivative(p, v, order));
  return out;
}

inline CliffordPolynomial substitute(const CliffordPolynomial& f, Var v, const Polynomial& g) {
  CliffordPolynomial out;
  for (const auto& [b, p] : f.components()) out.add(b, substitute(p, v, g));
  return out;
}

inline CliffordPolynomial box(const CliffordPolynomial& f, const Signature& sig, Var::Kind kind, int m = -1) {
  CliffordPolynomial out;
  for (const auto& [b, p] : f.components()) out.add(b, box(p, sig, kind, m));
  return out;
}

inline CliffordPolynomial euler(const CliffordPolynomial& f, const Signature& sig, Var::Kind kind, int m = -1) {
  CliffordPolynomial out;
  for (const auto& [b, p] : f.components()) out.add(b, euler(p, sig, kind, m));
  return out;
}

/// Dirac operator sum_k e_k d_k over xi (or x) coordinates; k <= n-1 when primed.
inline CliffordPolynomial dirac(const CliffordPolynomial& f, const Signature& sig, bool primed,
                                Var::Kind kind = Var::Kind::Xi) {
  CliffordPolynomial out;
  int top = primed ? sig.n() - 1 : sig.n();
  for (int k = 1; k <= top; ++k) {
    Var v = kind == Var::Kind::Xi ? Var::xi(k) : Var::x(k);
    out += left_e(k, derivative(f, v), sig);
  }
  return out;
}

/// xi' underlined = sum_{j<n} eps_j e_j xi_j.
inline CliffordPolynomial xi_prime_vector(const Signature& sig) {
  CliffordPolynomial out;
  for (int j = 1; j < sig.n(); ++j) out.add(Blade::e(j), Rational(sig.eps(j)) * var(Var::xi(j)));
  return out;
}

/// xi_n underlined = eps_n e_n xi_n.
inline CliffordPolynomial xi_n_vector(const Signature& sig) {
  return CliffordPolynomial(Blade::e(sig.n()), Rational(sig.eps(sig.n())) * var(Var::xi(sig.n())));
}

/// x underlined = sum_{i<=dim} x_i e_i.
inline CliffordPolynomial x_vector(const Signature& sig, int dim = -1) {
  CliffordPolynomial out;
  for (int i = 1; i <= (dim < 0 ? sig.n() : dim); ++i) out.add(Blade::e(i), var(Var::x(i)));
  return out;
}

/// Components split by blade parity: returns (even part, odd part).
inline std::pair<CliffordPolynomial, CliffordPolynomial> split_parity(const CliffordPolynomial& f) {
  CliffordPolynomial even, odd;
  for (const auto& [b, p] : f.components()) (b.grade() % 2 ? odd : even).add(b, p);
  return {even, odd};
}

}  // namespace fmethod
