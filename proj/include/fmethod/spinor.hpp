#pragma once

#include <fmethod/clifford.hpp>
#include <fmethod/gegenbauer.hpp>
#include <fmethod/linalg.hpp>
#include <fmethod/parallel.hpp>
#include <fmethod/scalar.hpp>

#include <string>
#include <tuple>
#include <vector>

namespace fmethod {

/// Spinor P_j(lambda) F = 1/2 eps_j xi_j Box F + (lambda - E - 1/2) d_j F
/// - 1/2 eps_j e_j D F. The overall factor i is dropped.
inline CliffordPolynomial apply_spinor_P(int j, const Polynomial& lambda, const CliffordPolynomial& F,
                                         const Signature& sig) {
  sig.check(j);
  CliffordPolynomial dj = derivative(F, Var::xi(j));
  CliffordPolynomial out = (make_rational(sig.eps(j), 2) * var(Var::xi(j))) * box(F, sig, Var::Kind::Xi);
  out += (lambda - Polynomial(make_rational(1, 2))) * dj;
  out -= euler(dj, sig, Var::Kind::Xi);
  out -= Polynomial(make_rational(sig.eps(j), 2)) * left_e(j, dirac(F, sig, false), sig);
  return out;
}

/// Spinor Q_j(lambda) F = -1/2 eps_j |X|^2 d_j F + x_j (lambda + E + 1/2) F
/// + 1/2 eps_j x e_j F on the first `dim` coordinates. The Clifford factor is
/// x e_j, not e_j x: only that order is the x-side counterpart of
/// apply_spinor_P under the symbol map used by the spinor stencils.
inline CliffordPolynomial apply_spinor_Q(int j, const Polynomial& lambda, const CliffordPolynomial& F,
                                         const Signature& sig, int dim = -1) {
  if (dim < 0) dim = sig.n();
  if (j < 1 || j > dim) throw std::out_of_range("Q_j index outside 1.." + std::to_string(dim));
  Polynomial xj = var(Var::x(j));
  CliffordPolynomial out =
      (make_rational(-sig.eps(j), 2) * sig.quadratic(Var::Kind::X, dim)) * derivative(F, Var::x(j));
  out += (xj * (lambda + Polynomial(make_rational(1, 2)))) * F;
  out += xj * euler(F, sig, Var::Kind::X, dim);
  out += Polynomial(make_rational(sig.eps(j), 2)) * clifford_mul(x_vector(sig, dim), left_e(j, F, sig), sig);
  return out;
}

/// alpha = -lambda - n/2 + 1, the Gegenbauer parameter of the spinor family.
inline Polynomial spinor_alpha(const Polynomial& lambda, int n) {
  return -lambda - Polynomial(make_rational(n - 2, 2));
}

/// Ftilde_K: for K = 2N,
///   xi_n^{2N} CscriptTilde_{2N}(s) + xi_n^{2N-2} CscriptTilde_{2N-1}(s) xi' xi_n,
/// for K = 2N+1,
///   xi_n^{2N} (CscriptTilde_{2N}(s) xi' + (alpha+N) CscriptTilde_{2N+1}(s) xi_n),
/// with s = |xi'|^2 / xi_n^2 and the vectors underlined (Clifford-valued).
inline CliffordPolynomial spinor_singular_F(int K, const Polynomial& lambda, const Signature& sig) {
  if (K < 0) throw std::invalid_argument("K must be non-negative");
  int N = K / 2;
  Polynomial alpha = spinor_alpha(lambda, sig.n());
  auto radial = [&](int l, int deg) {
    return clear_radial(inflated_Cscript(l, true, alpha, Var::s()), Var::s(), deg, sig, 1);
  };
  CliffordPolynomial xp = xi_prime_vector(sig), xn = xi_n_vector(sig);
  if (K % 2 == 0) {
    CliffordPolynomial out = radial(2 * N, 2 * N);
    if (N > 0) out += radial(2 * N - 1, 2 * N - 2) * clifford_mul(xp, xn, sig);
    return out;
  }
  return radial(2 * N, 2 * N) * xp + ((alpha + Polynomial(N)) * radial(2 * N + 1, 2 * N)) * xn;
}

enum class Parity { Even, Odd };

/// Residuals of the four coupled equations for F = xi_n^{2N} P + xi_n^{2N-2} Q xi' xi_n
/// (even) or xi_n^{2N} (P xi' + Q xi_n) (odd); P, Q polynomials in t.
inline std::vector<Polynomial> spinor_ode_residuals(const Polynomial& P, const Polynomial& Q, int N,
                                                    const Polynomial& lambda, int n, Parity parity) {
  Var t = Var::t();
  Polynomial tv = var(t);
  Polynomial alpha = spinor_alpha(lambda, n);
  Polynomial dP = derivative(P, t), dQ = derivative(Q, t);
  Polynomial nn(n);
  if (parity == Parity::Even) {
    return {ode_residual_R(2 * N, P, alpha), ode_residual_R(2 * N - 1, Q, alpha),
            Rational(-2 * N) * P + Rational(2) * tv * dP + (Polynomial(4 * N) - Rational(2) * lambda - nn) * Q -
                Rational(2) * tv * dQ,
            Rational(2) * dP - Rational(2 * N - 1) * Q + Rational(2) * tv * dQ};
  }
  return {ode_residual_R(2 * N, P, alpha), ode_residual_R(2 * N + 1, Q, alpha),
          (Polynomial(4 * N + 2) - Rational(2) * lambda - nn) * P - Rational(2) * tv * dP -
              Rational(2 * N + 1) * Q + Rational(2) * tv * dQ,
          Rational(2 * N) * P - Rational(2) * tv * dP - Rational(2) * dQ};
}

/// The Gegenbauer pair (P, Q) of Ftilde_K in the variable t = -s.
inline std::pair<Polynomial, Polynomial> spinor_gegenbauer_pair(int K, const Polynomial& lambda, int n) {
  int N = K / 2;
  Polynomial alpha = spinor_alpha(lambda, n);
  auto refl = [&](int l) { return substitute(inflated_Cscript(l, true, alpha), Var::t(), -var(Var::t())); };
  if (K % 2 == 0) return {refl(2 * N), refl(2 * N - 1)};
  return {refl(2 * N), (alpha + Polynomial(N)) * refl(2 * N + 1)};
}

/// The first two equations as combinations of the last two (E3, E4) and their
/// t-derivatives. Returns the two discrepancies, zero for every P, Q.
inline std::vector<Polynomial> spinor_ode_implication(const Polynomial& P, const Polynomial& Q, int N,
                                                      const Polynomial& lambda, int n, Parity parity) {
  Var t = Var::t();
  Polynomial tv = var(t);
  auto r = spinor_ode_residuals(P, Q, N, lambda, n, parity);
  const Polynomial &E3 = r[2], &E4 = r[3];
  Polynomial dE3 = derivative(E3, t), dE4 = derivative(E4, t);
  Polynomial nn(n);
  Polynomial twoT = Rational(2) * tv;
  if (parity == Parity::Even) {
    Polynomial forP = Rational(1 - 2 * N) * E3 + twoT * dE3 + (Rational(2) * lambda + nn - Polynomial(4 * N)) * E4 +
                      twoT * dE4;
    Polynomial forQ = Rational(-2) * dE3 + Rational(2 - 2 * N) * E4 + twoT * dE4;
    return {r[0] - forP, r[1] - forQ};
  }
  Polynomial forP = Rational(-2) * dE3 + Rational(2 * N - 1) * E4 - twoT * dE4;
  Polynomial forQ = Rational(-2 * N) * E3 + twoT * dE3 + (Polynomial(4 * N + 2) - Rational(2) * lambda - nn) * E4 -
                    twoT * dE4;
  return {r[0] - forP, r[1] - forQ};
}

/// Kernel of a family of maps on blade-valued monomials, one blade parity at a time.
template <class Image>
std::vector<CliffordPolynomial> clifford_joint_kernel(const std::vector<std::pair<Blade, Monomial>>& domain, int ops,
                                                      Image&& image) {
  using Key = std::tuple<int, std::uint32_t, Monomial>;
  auto columns = parallel_map(domain.size(), [&](std::size_t c) {
    std::map<Key, Rational> col;
    CliffordPolynomial unit(domain[c].first, Polynomial::term(domain[c].second, 1));
    for (int op = 0; op < ops; ++op) {
      CliffordPolynomial img = image(op, unit);
      for (const auto& [b, p] : img.components())
        for (const auto& [m, v] : p.terms()) col.emplace(Key{op, b.mask(), m}, v);
    }
    return col;
  });
  auto basis = nullspace(assemble_columns(columns), domain.size());
  std::vector<CliffordPolynomial> out;
  for (const auto& v : basis) {
    CliffordPolynomial f;
    for (std::size_t c = 0; c < domain.size(); ++c)
      if (sgn(v[c]) != 0) f.add(domain[c].first, Polynomial::term(domain[c].second, v[c]));
    out.push_back(std::move(f));
  }
  return out;
}

/// Blade-valued monomials of degree K with blades of the given parity.
inline std::vector<std::pair<Blade, Monomial>> clifford_domain(int K, const Signature& sig, Parity parity) {
  std::vector<std::pair<Blade, Monomial>> out;
  auto monos = monomials_of_degree(sig.xi_vars(), K);
  for (Blade b : all_blades(sig.n())) {
    if ((b.grade() % 2 == 1) != (parity == Parity::Odd)) continue;
    for (const auto& m : monos) out.emplace_back(b, m);
  }
  return out;
}

struct SpinorSol {
  std::vector<CliffordPolynomial> basis;  // even block first, then odd
  std::size_t even_dimension = 0;
  std::size_t odd_dimension = 0;
  /// dim Cl / dim S: Clifford-valued kernel dimensions are this multiple of
  /// the spinor-valued ones.
  std::size_t multiplier = 1;
  std::size_t dimension() const { return basis.size(); }
};

inline std::size_t spinor_multiplier(int n) { return std::size_t{1} << (n - n / 2); }

/// Common kernel of the spinor P_j, j <= n-1 (j <= n when ambient), on
/// degree-K Clifford-valued polynomials.
inline SpinorSol brute_force_spinor_sol(int K, const Rational& lambda, const Signature& sig, bool ambient = false) {
  SpinorSol out;
  out.multiplier = spinor_multiplier(sig.n());
  Polynomial lam(lambda);
  int ops = ambient ? sig.n() : sig.n() - 1;
  for (Parity par : {Parity::Even, Parity::Odd}) {
    auto ker = clifford_joint_kernel(clifford_domain(K, sig, par), ops, [&](int op, const CliffordPolynomial& F) {
      return apply_spinor_P(op + 1, lam, F, sig);
    });
    (par == Parity::Even ? out.even_dimension : out.odd_dimension) = ker.size();
    for (auto& f : ker) out.basis.push_back(std::move(f));
  }
  return out;
}

/// Monogenic polynomials: ker D on homogeneous degree-j Clifford-valued polynomials.
inline std::vector<CliffordPolynomial> monogenic_basis(int j, const Signature& sig) {
  if (j < 0) throw std::invalid_argument("degree must be non-negative");
  std::vector<CliffordPolynomial> out;
  for (Parity par : {Parity::Even, Parity::Odd}) {
    auto ker = clifford_joint_kernel(clifford_domain(j, sig, par), 1,
                                     [&](int, const CliffordPolynomial& F) { return dirac(F, sig, false); });
    for (auto& f : ker) out.push_back(std::move(f));
  }
  return out;
}

/// Rank of a family of Clifford polynomials as vectors over Q.
inline std::size_t clifford_span_dimension(const std::vector<CliffordPolynomial>& fs) {
  if (fs.empty()) return 0;
  using Key = std::pair<std::uint32_t, Monomial>;
  std::vector<std::map<Key, Rational>> cols;
  for (const auto& f : fs) {
    std::map<Key, Rational> c;
    for (const auto& [b, p] : f.components())
      for (const auto& [m, v] : p.terms()) c.emplace(Key{b.mask(), m}, v);
    cols.push_back(std::move(c));
  }
  return rank(assemble_columns(cols));
}

inline bool clifford_in_span(const std::vector<CliffordPolynomial>& span, const std::vector<CliffordPolynomial>& cand) {
  auto all = span;
  all.insert(all.end(), cand.begin(), cand.end());
  return clifford_span_dimension(span) == clifford_span_dimension(all);
}

}  // namespace fmethod
