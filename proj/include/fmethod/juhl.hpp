#pragma once

#include <fmethod/clifford.hpp>
#include <fmethod/parallel.hpp>
#include <fmethod/polynomial.hpp>
#include <fmethod/scalar.hpp>
#include <fmethod/signature.hpp>
#include <fmethod/spinor.hpp>

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fmethod {

/// a_j^{N,n}(lambda) = (-2)^{N-j} N! / (j! (2N-2j)!) prod_{k=j}^{N-1} (2 lambda - 4N + 2k + n + 1),
/// a_N = 1.
inline Polynomial coeff_a(int j, int N, int n, const Polynomial& lambda) {
  if (j < 0 || N < 0 || j > N) throw std::out_of_range("coeff_a requires 0 <= j <= N");
  Polynomial out(pow(Rational(-2), N - j) * factorial(N) / (factorial(j) * factorial(2 * N - 2 * j)));
  for (int k = j; k < N; ++k) out = out * (Rational(2) * lambda + Polynomial(Rational(-4 * N + 2 * k + n + 1)));
  return out;
}

/// b_j^{N,n}(lambda): as a_j with (2N-2j+1)! and the factors shifted by -2.
inline Polynomial coeff_b(int j, int N, int n, const Polynomial& lambda) {
  if (j < 0 || N < 0 || j > N) throw std::out_of_range("coeff_b requires 0 <= j <= N");
  Polynomial out(pow(Rational(-2), N - j) * factorial(N) / (factorial(j) * factorial(2 * N - 2 * j + 1)));
  for (int k = j; k < N; ++k) out = out * (Rational(2) * lambda + Polynomial(Rational(-4 * N + 2 * k + n - 1)));
  return out;
}

inline Polynomial coeff_a(int j, int N, int n, const DensityParam& lambda) { return coeff_a(j, N, n, lambda.poly()); }
inline Polynomial coeff_b(int j, int N, int n, const DensityParam& lambda) { return coeff_b(j, N, n, lambda.poly()); }

enum class StencilKind { ScalarEven, ScalarOdd, SpinorEven, SpinorOdd, AmbientPowerLaplacian, HarmonicContraction };

inline std::string to_string(StencilKind k) {
  switch (k) {
    case StencilKind::ScalarEven: return "scalar_even";
    case StencilKind::ScalarOdd: return "scalar_odd";
    case StencilKind::SpinorEven: return "spinor_even";
    case StencilKind::SpinorOdd: return "spinor_odd";
    case StencilKind::AmbientPowerLaplacian: return "ambient_power_laplacian";
    case StencilKind::HarmonicContraction: break;
  }
  return "harmonic_contraction";
}

enum class CliffordFactor { None, Dprime, DnUnderline, DprimeThenDnUnderline };

inline std::string to_string(CliffordFactor c) {
  switch (c) {
    case CliffordFactor::Dprime: return "Dprime";
    case CliffordFactor::DnUnderline: return "dn_underline";
    case CliffordFactor::DprimeThenDnUnderline: return "Dprime_then_dn_underline";
    case CliffordFactor::None: break;
  }
  return "";
}

inline int clifford_order(CliffordFactor c) {
  switch (c) {
    case CliffordFactor::None: return 0;
    case CliffordFactor::DprimeThenDnUnderline: return 2;
    default: return 1;
  }
}

/// coeff * (box_sign Box')^boxprime_power d_n^dn_power [clifford factor].
struct StencilTerm {
  Polynomial coeff;
  int boxprime_power = 0;
  int dn_power = 0;
  CliffordFactor clifford = CliffordFactor::None;
};

/// Formal constant-coefficient operator. `box_sign` is -1 when the powers
/// are of -Box' (the scalar tables) and +1 for plain Box'. Harmonic
/// contractions carry their symbol in `symbol` instead of terms.
struct OperatorStencil {
  int K = 0;
  StencilKind kind = StencilKind::ScalarEven;
  std::vector<StencilTerm> terms;
  int box_sign = -1;
  Signature sig{2, 3};
  bool restrict_to_hyperplane = true;
  Polynomial symbol;  // harmonic contraction only, in xi

  bool spinor() const { return kind == StencilKind::SpinorEven || kind == StencilKind::SpinorOdd; }

  /// Every term has total order K.
  bool homogeneous() const {
    for (const auto& t : terms)
      if (2 * t.boxprime_power + t.dn_power + clifford_order(t.clifford) != K) return false;
    return true;
  }
};

namespace detail {

/// Sign choices for the spinor stencil: `box_sign` multiplies Box' inside the
/// powers, and the odd-order prefactor is
/// (prefactor_lambda * lambda + prefactor_const * (2N + 2 - n)).
struct SpinorConvention {
  int box_sign = -1;
  int prefactor_lambda = -2;
  int prefactor_const = -1;
  /// b^{N-1}_j in the even bivector sum (true) or b^N_j as printed (false).
  bool even_b_lowered = true;
};

/// The variant printed with the theorem: plain Box' and prefactor
/// (-2 lambda - n + 2N + 2). Kept for the regression test showing it fails.
inline constexpr SpinorConvention kPrintedSpinorConvention{1, -2, 1, false};

inline OperatorStencil spinor_stencil(int K, const Polynomial& lambda, const Signature& sig, SpinorConvention conv) {
  int n = sig.n(), N = K / 2;
  Polynomial mu = -lambda - Polynomial(make_rational(1, 2));
  OperatorStencil st;
  st.K = K;
  st.sig = sig;
  st.box_sign = conv.box_sign;
  if (K % 2 == 0) {
    st.kind = StencilKind::SpinorEven;
    for (int j = 0; j <= N; ++j) st.terms.push_back({coeff_a(j, N, n, mu), j, 2 * N - 2 * j, CliffordFactor::None});
    for (int j = 0; j < N; ++j)
      st.terms.push_back({Rational(2 * N) * coeff_b(j, conv.even_b_lowered ? N - 1 : N, n, mu), j, 2 * N - 2 * j - 2,
                          CliffordFactor::DprimeThenDnUnderline});
  } else {
    st.kind = StencilKind::SpinorOdd;
    Polynomial pre = Rational(conv.prefactor_lambda) * lambda + Polynomial(Rational(conv.prefactor_const * (2 * N + 2 - n)));
    for (int j = 0; j <= N; ++j) st.terms.push_back({coeff_a(j, N, n, mu), j, 2 * N - 2 * j, CliffordFactor::Dprime});
    for (int j = 0; j <= N; ++j)
      st.terms.push_back({pre * coeff_b(j, N, n, mu), j, 2 * N - 2 * j, CliffordFactor::DnUnderline});
  }
  std::erase_if(st.terms, [](const StencilTerm& t) { return t.coeff.is_zero(); });
  return st;
}

}  // namespace detail

/// Scalar: D_{2N} = sum a_j(-lambda) (-Box')^j d_n^{2N-2j},
///         D_{2N+1} = sum b_j(-lambda) (-Box')^j d_n^{2N-2j+1}.
/// Spinor, with D' = sum_{i<n} eps_i e_i d_i and dn_ = e_n d_n:
///   D_{2N} = sum a_j(-lambda-1/2) (-Box')^j d_n^{2N-2j}
///          + 2N sum b^{N-1}_j(-lambda-1/2) (-Box')^j d_n^{2N-2j-2} D' dn_,
///   D_{2N+1} = sum a_j(-lambda-1/2) (-Box')^j d_n^{2N-2j} D'
///          + (-2 lambda + n - 2N - 2) sum b_j(-lambda-1/2) (-Box')^j d_n^{2N-2j} dn_.
/// These come from N! Ftilde_K(-lambda) under xi_k -> d_k with Clifford
/// products reversed, and intertwine the spinor actions (see the tests).
inline OperatorStencil build_operator(int K, const DensityParam& lambda, const Signature& sig, bool spinor) {
  if (K < 0) throw std::invalid_argument("K must be non-negative");
  Polynomial lam = lambda.poly();
  if (spinor) return detail::spinor_stencil(K, lam, sig, {});
  int n = sig.n(), N = K / 2;
  OperatorStencil st;
  st.K = K;
  st.sig = sig;
  st.kind = K % 2 ? StencilKind::ScalarOdd : StencilKind::ScalarEven;
  for (int j = 0; j <= N; ++j) {
    Polynomial c = K % 2 ? coeff_b(j, N, n, -lam) : coeff_a(j, N, n, -lam);
    if (!c.is_zero()) st.terms.push_back({c, j, K - 2 * j, CliffordFactor::None});
  }
  return st;
}

/// Box^m = (Box' - d_n^2)^m on the full space, no restriction.
inline OperatorStencil power_laplacian(int m, const Signature& sig) {
  if (m < 1) throw std::invalid_argument("power Laplacian needs m >= 1");
  OperatorStencil st;
  st.K = 2 * m;
  st.kind = StencilKind::AmbientPowerLaplacian;
  st.sig = sig;
  st.box_sign = 1;
  st.restrict_to_hyperplane = false;
  Rational binom(1);
  for (int i = m; i >= 0; --i) {
    // coefficient of Box'^i d_n^{2(m-i)}: C(m,i) (-1)^{m-i}
    Rational c = (m - i) % 2 ? Rational(-binom) : binom;
    st.terms.push_back({Polynomial(c), i, 2 * (m - i), CliffordFactor::None});
    binom = binom * i / (m - i + 1);
  }
  return st;
}

/// h(d/dx_1, ..., d/dx_n) for a harmonic h in xi, no restriction.
inline OperatorStencil harmonic_contraction(const Polynomial& h, const Signature& sig) {
  if (!box(h, sig, Var::Kind::Xi).is_zero()) throw std::invalid_argument("contraction symbol is not harmonic");
  if (h.is_zero()) throw std::invalid_argument("contraction symbol is zero");
  int deg = -1;
  for (const auto& [m, c] : h.terms()) {
    if (m.degree_if([](Var v) { return v.kind() != Var::Kind::Xi; }) > 0)
      throw std::invalid_argument("contraction symbol must be a polynomial in xi only");
    int d = m.degree_if([](Var v) { return v.kind() == Var::Kind::Xi; });
    if (deg >= 0 && d != deg) throw std::invalid_argument("contraction symbol must be homogeneous");
    deg = d;
  }
  OperatorStencil st;
  st.K = deg;
  st.kind = StencilKind::HarmonicContraction;
  st.sig = sig;
  st.box_sign = 1;
  st.restrict_to_hyperplane = false;
  st.symbol = h;
  return st;
}

struct AmbientKind {
  enum class Type { PowerLaplacian, HarmonicContraction } type = Type::PowerLaplacian;
  int m = 1;
  Polynomial h;
};

inline OperatorStencil build_ambient_operator(const AmbientKind& kind, const Signature& sig) {
  return kind.type == AmbientKind::Type::PowerLaplacian ? power_laplacian(kind.m, sig)
                                                         : harmonic_contraction(kind.h, sig);
}

namespace detail {

inline void check_x_only(const Polynomial& u, const Signature& sig) {
  for (const auto& [m, c] : u.terms())
    for (int s = 0; s < kNumSlots; ++s) {
      if (!m.exponent_at(s)) continue;
      Var v = Var::from_slot(s);
      if (v.kind() == Var::Kind::Lambda) continue;
      if (v.kind() != Var::Kind::X || v.index() > sig.n())
        throw std::invalid_argument("operand must be a polynomial in x1..x" + std::to_string(sig.n()) + ", found " +
                                    v.name());
    }
}

/// D' = sum_{i<n} eps_i e_i d/dx_i, the Dirac operator of the hyperplane metric.
inline CliffordPolynomial dirac_prime(const CliffordPolynomial& u, const Signature& sig) {
  CliffordPolynomial out;
  for (int i = 1; i < sig.n(); ++i) {
    CliffordPolynomial d = left_e(i, derivative(u, Var::x(i)), sig);
    out += sig.eps(i) > 0 ? d : -d;
  }
  return out;
}

template <class F>
F apply_powers(const StencilTerm& t, F u, const OperatorStencil& st) {
  int n = st.sig.n();
  u = derivative(u, Var::x(n), t.dn_power);
  for (int i = 0; i < t.boxprime_power; ++i) u = box(u, st.sig, Var::Kind::X, n - 1);
  if (st.box_sign < 0 && t.boxprime_power % 2) u = -u;
  return u;
}

inline Polynomial contract(const Polynomial& h, const Polynomial& u) {
  Polynomial out;
  for (const auto& [m, c] : h.terms()) {
    Polynomial d = u;
    for (int s = 0; s < kNumSlots; ++s)
      if (int e = m.exponent_at(s)) d = derivative(d, Var::x(Var::from_slot(s).index()), e);
    out += c * d;
  }
  return out;
}

}  // namespace detail

/// Applies the stencil and, for the hyperplane families, restricts to x_n = 0.
inline Polynomial apply_and_restrict(const OperatorStencil& st, const Polynomial& u) {
  if (st.spinor()) throw std::invalid_argument("spinor stencil needs a Clifford-valued operand");
  detail::check_x_only(u, st.sig);
  Polynomial out;
  if (st.kind == StencilKind::HarmonicContraction) {
    out = detail::contract(st.symbol, u);
  } else {
    for (const auto& t : st.terms) out += t.coeff * detail::apply_powers(t, u, st);
  }
  if (st.restrict_to_hyperplane) out = substitute(out, Var::x(st.sig.n()), Rational(0));
  return out;
}

inline CliffordPolynomial apply_and_restrict(const OperatorStencil& st, const CliffordPolynomial& u) {
  for (const auto& [b, p] : u.components()) {
    detail::check_x_only(p, st.sig);
    if (b.mask() >> st.sig.n()) throw std::invalid_argument("blade outside the Clifford algebra of the signature");
  }
  int n = st.sig.n();
  CliffordPolynomial out;
  if (st.kind == StencilKind::HarmonicContraction) {
    for (const auto& [b, p] : u.components()) out.add(b, detail::contract(st.symbol, p));
  } else {
    for (const auto& t : st.terms) {
      CliffordPolynomial v = detail::apply_powers(t, u, st);
      switch (t.clifford) {
        case CliffordFactor::None: break;
        case CliffordFactor::Dprime: v = detail::dirac_prime(v, st.sig); break;
        case CliffordFactor::DnUnderline: v = left_e(n, derivative(v, Var::x(n)), st.sig); break;
        case CliffordFactor::DprimeThenDnUnderline:
          v = detail::dirac_prime(left_e(n, derivative(v, Var::x(n)), st.sig), st.sig);
          break;
      }
      out += t.coeff * v;
    }
  }
  if (st.restrict_to_hyperplane) out = substitute(out, Var::x(n), Polynomial(Rational(0)));
  return out;
}

/// Fourier symbol of a hyperplane stencil under d_k -> xi_k, with Clifford
/// factors reversed: Box' -> |xi'|^2, D' -> xi', dn_ -> eps_n xi_n (underlined),
/// D' dn_ -> eps_n xi_n xi'.
inline CliffordPolynomial fourier_symbol(const OperatorStencil& st) {
  const Signature& sig = st.sig;
  int n = sig.n();
  Polynomial xin = var(Var::xi(n));
  Polynomial epsn(Rational(sig.eps(n)));
  CliffordPolynomial out;
  for (const auto& t : st.terms) {
    Polynomial scal = t.coeff * (Rational(st.box_sign) * sig.xi_prime_sq()).pow(t.boxprime_power) * xin.pow(t.dn_power);
    CliffordPolynomial term(scal);
    switch (t.clifford) {
      case CliffordFactor::None: break;
      case CliffordFactor::Dprime: term = clifford_mul(term, xi_prime_vector(sig), sig); break;
      case CliffordFactor::DnUnderline: term = epsn * clifford_mul(term, xi_n_vector(sig), sig); break;
      case CliffordFactor::DprimeThenDnUnderline:
        term = epsn * clifford_mul(term, clifford_mul(xi_n_vector(sig), xi_prime_vector(sig), sig), sig);
        break;
    }
    out += term;
  }
  return out;
}

/// The Fourier-side singular vector the stencil should reproduce: w_K(-lambda)
/// for scalar families, N! Ftilde_K(-lambda) for spinor ones.
inline CliffordPolynomial expected_symbol(int K, const DensityParam& lambda, const Signature& sig, bool spinor) {
  Polynomial mu = -lambda.poly();
  if (!spinor) return closed_form_w(K, mu, sig);
  return factorial(K / 2) * spinor_singular_F(K, mu, sig);
}

/// Composition (box_sign Box')^m after st, i.e. m extra powers.
inline OperatorStencil compose_boxprime(const OperatorStencil& st, int m) {
  OperatorStencil out = st;
  out.K += 2 * m;
  for (auto& t : out.terms) t.boxprime_power += m;
  return out;
}

/// Whether two stencils define the same formal operator (same terms after
/// merging equal monomials and dropping zeros).
inline bool same_operator(const OperatorStencil& a, const OperatorStencil& b) {
  using Key = std::tuple<int, int, int>;
  auto collect = [](const OperatorStencil& s) {
    std::map<Key, Polynomial> m;
    for (const auto& t : s.terms) {
      Polynomial c = t.coeff;
      if (s.box_sign < 0 && t.boxprime_power % 2) c = -c;  // normalize to plain Box'
      auto& slot = m[Key{t.boxprime_power, t.dn_power, static_cast<int>(t.clifford)}];
      slot += c;
    }
    std::erase_if(m, [](const auto& kv) { return kv.second.is_zero(); });
    return m;
  };
  return a.sig == b.sig && a.restrict_to_hyperplane == b.restrict_to_hyperplane && collect(a) == collect(b);
}

// ---------------------------------------------------------------- intertwining

struct Generator {
  enum class Type { NPlus, NMinus, Scaling, Rotation } type = Type::NPlus;
  int i = 1, j = 0;

  static Generator nplus(int j) { return {Type::NPlus, j, 0}; }
  static Generator nminus(int j) { return {Type::NMinus, j, 0}; }
  static Generator scaling() { return {Type::Scaling, 0, 0}; }
  static Generator rotation(int i, int j) { return {Type::Rotation, i, j}; }

  /// Actions other than n_+ and n_- are the standard vector fields, not
  /// formulas quoted from the source.
  bool derived_plumbing() const { return type == Type::Scaling || type == Type::Rotation; }

  std::string to_string() const {
    switch (type) {
      case Type::NPlus: return "nplus(" + std::to_string(i) + ")";
      case Type::NMinus: return "nminus(" + std::to_string(i) + ")";
      case Type::Scaling: return "scaling";
      case Type::Rotation: break;
    }
    return "rotation(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
};

struct IntertwiningReport {
  bool ok = true;
  std::string generator;
  bool derived_plumbing = false;
  std::size_t checked = 0;
  std::string input, lhs, rhs;  // first discrepancy
};

namespace detail {

inline void check_generator(const Generator& g, const Signature& sig) {
  int n = sig.n();
  auto in = [&](int k) { return k >= 1 && k < n; };
  switch (g.type) {
    case Generator::Type::NPlus:
    case Generator::Type::NMinus:
      if (!in(g.i)) throw std::out_of_range("generator index must lie in 1.." + std::to_string(n - 1));
      break;
    case Generator::Type::Rotation:
      if (!in(g.i) || !in(g.j) || g.i == g.j)
        throw std::out_of_range("rotation indices must be distinct and lie in 1.." + std::to_string(n - 1));
      break;
    case Generator::Type::Scaling: break;
  }
}

/// eps_i x_i d_j - eps_j x_j d_i on scalar functions.
inline Polynomial rotation_field(int i, int j, const Polynomial& u, const Signature& sig) {
  return Rational(sig.eps(i)) * var(Var::x(i)) * derivative(u, Var::x(j)) -
         Rational(sig.eps(j)) * var(Var::x(j)) * derivative(u, Var::x(i));
}

inline Polynomial act(const Generator& g, const Polynomial& lambda, const Polynomial& u, const Signature& sig,
                      int dim) {
  switch (g.type) {
    case Generator::Type::NPlus: return apply_Q(g.i, lambda, u, sig, dim);
    case Generator::Type::NMinus: return derivative(u, Var::x(g.i));
    case Generator::Type::Scaling: return euler(u, sig, Var::Kind::X, dim) + lambda * u;
    case Generator::Type::Rotation: break;
  }
  return rotation_field(g.i, g.j, u, sig);
}

inline CliffordPolynomial act(const Generator& g, const Polynomial& lambda, const CliffordPolynomial& u,
                              const Signature& sig, int dim) {
  switch (g.type) {
    case Generator::Type::NPlus: return apply_spinor_Q(g.i, lambda, u, sig, dim);
    case Generator::Type::NMinus: return derivative(u, Var::x(g.i));
    case Generator::Type::Scaling: return euler(u, sig, Var::Kind::X, dim) + lambda * u;
    case Generator::Type::Rotation: break;
  }
  // -1/2 e_i e_j makes the field commute with D' = sum eps_k e_k d_k.
  CliffordPolynomial out;
  for (const auto& [b, p] : u.components()) out.add(b, rotation_field(g.i, g.j, p, sig));
  out -= Polynomial(make_rational(1, 2)) * left_e(g.i, left_e(g.j, u, sig), sig);
  return out;
}

inline std::vector<Monomial> test_monomials(const Signature& sig, int d_max) {
  std::vector<Monomial> out;
  for (int d = 0; d <= d_max; ++d)
    for (auto& m : monomials_of_degree(sig.x_vars(), d)) out.push_back(m);
  return out;
}

}  // namespace detail

/// Checks restrict(D (dpi_lambda(X) u)) == dpi'_{lambda+K}(X) restrict(D u) on
/// every monomial of degree <= d_max (times every blade in the spinor case).
inline IntertwiningReport verify_intertwining(const OperatorStencil& st, const Rational& lambda, const Generator& g,
                                              int d_max) {
  const Signature& sig = st.sig;
  detail::check_generator(g, sig);
  int n = sig.n();
  Polynomial src(lambda), dst(lambda + st.K);
  auto monos = detail::test_monomials(sig, d_max);
  std::vector<Blade> blades = st.spinor() ? all_blades(n) : std::vector<Blade>{Blade::scalar()};
  std::size_t per = blades.size();

  struct Outcome {
    bool ok = true;
    std::string input, lhs, rhs;
  };
  auto results = parallel_map(monos.size() * per, [&](std::size_t idx) {
    Outcome o;
    Polynomial mono = Polynomial::term(monos[idx / per], Rational(1));
    if (st.spinor()) {
      CliffordPolynomial u(blades[idx % per], mono);
      auto lhs = apply_and_restrict(st, detail::act(g, src, u, sig, n));
      auto rhs = detail::act(g, dst, apply_and_restrict(st, u), sig, n - 1);
      if (lhs != rhs) o = {false, u.to_string(), lhs.to_string(), rhs.to_string()};
    } else {
      auto lhs = apply_and_restrict(st, detail::act(g, src, mono, sig, n));
      auto rhs = detail::act(g, dst, apply_and_restrict(st, mono), sig, n - 1);
      if (lhs != rhs) o = {false, mono.to_string(), lhs.to_string(), rhs.to_string()};
    }
    return o;
  });

  IntertwiningReport rep;
  rep.generator = g.to_string();
  rep.derived_plumbing = g.derived_plumbing();
  for (const auto& o : results) {
    ++rep.checked;
    if (!o.ok) {
      rep.ok = false;
      rep.input = o.input;
      rep.lhs = o.lhs;
      rep.rhs = o.rhs;
      break;
    }
  }
  return rep;
}

inline IntertwiningReport verify_intertwining(int K, const Rational& lambda, const Generator& g, int d_max,
                                              const Signature& sig, bool spinor) {
  return verify_intertwining(build_operator(K, DensityParam(lambda), sig, spinor), lambda, g, d_max);
}

// ---------------------------------------------------------------- symmetries

/// Parity covariance: D_K(u(x', -x_n)) restricted equals (-1)^K D_K u restricted.
inline bool parity_covariant(const OperatorStencil& st, int d_max) {
  if (st.spinor()) throw std::invalid_argument("parity covariance is a scalar statement");
  int n = st.sig.n();
  Polynomial flip = -var(Var::x(n));
  for (const auto& m : detail::test_monomials(st.sig, d_max)) {
    Polynomial u = Polynomial::term(m, Rational(1));
    Polynomial a = apply_and_restrict(st, substitute(u, Var::x(n), flip));
    Polynomial b = apply_and_restrict(st, u);
    if (st.K % 2) b = -b;
    if (a != b) return false;
  }
  return true;
}

/// Blade parity: on blade-pure even inputs, every output blade has parity (-1)^K.
inline bool blade_parity_respected(const OperatorStencil& st, int d_max) {
  if (!st.spinor()) throw std::invalid_argument("blade parity is a spinor statement");
  for (const auto& b : all_blades(st.sig.n())) {
    if (b.grade() % 2) continue;
    for (const auto& m : detail::test_monomials(st.sig, d_max)) {
      auto out = apply_and_restrict(st, CliffordPolynomial(b, Polynomial::term(m, Rational(1))));
      for (const auto& [ob, p] : out.components())
        if (ob.grade() % 2 != st.K % 2) return false;
    }
  }
  return true;
}

/// Stencil form of the factorization identity at the dual exceptional value
/// -lambda_{2k} = (n-1-2k)/2: D_{2k-a} = (-Box')^{k-a} D_a for a <= k.
inline bool factorization_stencil_holds(int k, int a, const Signature& sig) {
  if (a < 0 || a > k) throw std::out_of_range("factorization requires 0 <= a <= k");
  DensityParam mu(make_rational(sig.n() - 1 - 2 * k, 2));
  auto big = build_operator(2 * k - a, mu, sig, false);
  auto small = compose_boxprime(build_operator(a, mu, sig, false), k - a);
  return same_operator(big, small);
}

// ---------------------------------------------------------------- emission

inline std::string operator_basis_text(const StencilTerm& t, int box_sign) {
  std::string s;
  auto add = [&](const std::string& f) { s += (s.empty() ? "" : "*") + f; };
  if (t.boxprime_power) add(std::string(box_sign < 0 ? "(-Box')" : "Box'") + "^" + std::to_string(t.boxprime_power));
  if (t.dn_power) add("dn^" + std::to_string(t.dn_power));
  if (t.clifford == CliffordFactor::Dprime) add("D'");
  if (t.clifford == CliffordFactor::DnUnderline) add("dn_");
  if (t.clifford == CliffordFactor::DprimeThenDnUnderline) add("D'*dn_");
  return s.empty() ? "1" : s;
}

inline nlohmann::ordered_json to_json(const OperatorStencil& st) {
  nlohmann::ordered_json j;
  j["K"] = st.K;
  j["kind"] = to_string(st.kind);
  j["signature"] = {st.sig.p(), st.sig.q()};
  j["box_sign"] = st.box_sign;
  j["restrict"] = st.restrict_to_hyperplane;
  if (st.kind == StencilKind::HarmonicContraction) j["symbol"] = st.symbol.to_string();
  auto terms = nlohmann::ordered_json::array();
  for (const auto& t : st.terms)
    terms.push_back({{"j", t.boxprime_power},
                     {"boxprime_power", t.boxprime_power},
                     {"dn_power", t.dn_power},
                     {"clifford_factor", to_string(t.clifford)},
                     {"coefficient", t.coeff.to_string()},
                     {"operator", operator_basis_text(t, st.box_sign)}});
  j["terms"] = terms;
  return j;
}

inline std::string to_csv(const OperatorStencil& st) {
  std::ostringstream os;
  os << "j,boxprime_power,dn_power,clifford_factor,coefficient\n";
  for (const auto& t : st.terms)
    os << t.boxprime_power << ',' << t.boxprime_power << ',' << t.dn_power << ',' << to_string(t.clifford) << ",\""
       << t.coeff.to_string() << "\"\n";
  return os.str();
}

namespace detail {

inline std::string latex_poly(const Polynomial& p) {
  std::string s = p.to_string(), out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '*') continue;
    if (s[i] == 'L') {
      out += "\\lambda ";
      continue;
    }
    out += s[i];
  }
  return out;
}

}  // namespace detail

inline std::string to_latex(const OperatorStencil& st) {
  std::ostringstream os;
  os << "D_{" << st.K << "} = ";
  if (st.kind == StencilKind::HarmonicContraction) {
    os << "h(\\partial),\\quad h = " << detail::latex_poly(st.symbol) << "\n";
    return os.str();
  }
  bool first = true;
  for (const auto& t : st.terms) {
    if (!first) os << "\n  + ";
    first = false;
    os << "\\left(" << detail::latex_poly(t.coeff) << "\\right)";
    if (t.boxprime_power)
      os << (st.box_sign < 0 ? "(-\\square')^{" : "(\\square')^{") << t.boxprime_power << "}";
    if (t.dn_power) os << "\\partial_{x_" << st.sig.n() << "}^{" << t.dn_power << "}";
    if (t.clifford == CliffordFactor::Dprime) os << "D'";
    if (t.clifford == CliffordFactor::DnUnderline) os << "\\underline{\\partial}_" << st.sig.n();
    if (t.clifford == CliffordFactor::DprimeThenDnUnderline) os << "D'\\underline{\\partial}_" << st.sig.n();
  }
  if (first) os << "0";
  os << "\n";
  return os.str();
}

}  // namespace fmethod
