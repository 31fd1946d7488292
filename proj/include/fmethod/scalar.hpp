#pragma once

#include <fmethod/gegenbauer.hpp>
#include <fmethod/linalg.hpp>
#include <fmethod/parallel.hpp>
#include <fmethod/polynomial.hpp>
#include <fmethod/signature.hpp>

#include <string>
#include <utility>
#include <vector>

namespace fmethod {

/// P_j(lambda) f = 1/2 eps_j xi_j Box f + (lambda - E) d_j f, on the Fourier
/// side. The overall factor -i is dropped.
inline Polynomial apply_P(int j, const Polynomial& lambda, const Polynomial& f, const Signature& sig) {
  sig.check(j);
  Polynomial dj = derivative(f, Var::xi(j));
  Polynomial out = make_rational(sig.eps(j), 2) * var(Var::xi(j)) * box(f, sig, Var::Kind::Xi);
  out += lambda * dj;
  out -= euler(dj, sig, Var::Kind::Xi);
  return out;
}

/// Q_j(lambda) u = -1/2 eps_j |X|^2 d_j u + x_j (lambda + E) u on the first
/// `dim` coordinates (dim = n for the ambient action, n-1 for the hyperplane).
inline Polynomial apply_Q(int j, const Polynomial& lambda, const Polynomial& u, const Signature& sig,
                          int dim = -1) {
  if (dim < 0) dim = sig.n();
  if (j < 1 || j > dim) throw std::out_of_range("Q_j index outside 1.." + std::to_string(dim));
  Polynomial xj = var(Var::x(j));
  Polynomial out = make_rational(-sig.eps(j), 2) * sig.quadratic(Var::Kind::X, dim) * derivative(u, Var::x(j));
  out += xj * (lambda * u + euler(u, sig, Var::Kind::X, dim));
  return out;
}

/// alpha = -lambda - (n-1)/2, the Gegenbauer parameter of the scalar family.
inline Polynomial scalar_alpha(const Polynomial& lambda, const Signature& sig) {
  return -lambda - Polynomial(make_rational(sig.n() - 1, 2));
}

/// xi_n^K h with v^i read as (sign |xi'|^2 / xi_n^2)^i; denominators cleared.
/// Requires deg_v h <= K/2.
inline Polynomial clear_radial(const Polynomial& h, Var v, int K, const Signature& sig, int sign) {
  Polynomial r = Rational(sign) * sig.xi_prime_sq();
  Polynomial xin = var(Var::xi(sig.n()));
  Polynomial out;
  for (const auto& [i, c] : h.coefficients_in(v)) {
    if (2 * i > K) throw std::domain_error("radial degree exceeds K/2");
    out += c * r.pow(i) * xin.pow(K - 2 * i);
  }
  return out;
}

/// f_K = xi_n^K Cscript_K^alpha(|xi'|^2/xi_n^2), unnormalized.
inline Polynomial f_K(int K, const Polynomial& lambda, const Signature& sig) {
  if (K < 0) throw std::invalid_argument("K must be non-negative");
  return clear_radial(inflated_Cscript(K, false, scalar_alpha(lambda, sig), Var::s()), Var::s(), K, sig, 1);
}

/// Renormalized singular vector w_K: N! xi_n^{2N} CscriptTilde_{2N}(s) for
/// K = 2N, and N!/2 xi_n^{2N+1} CscriptTilde_{2N+1}(s) for K = 2N+1. The
/// coefficient of |xi'|^{2N} is 1.
inline Polynomial closed_form_w(int K, const Polynomial& lambda, const Signature& sig) {
  if (K < 0) throw std::invalid_argument("K must be non-negative");
  int N = K / 2;
  Rational scale = factorial(N);
  if (K % 2) scale /= 2;
  Polynomial h = inflated_Cscript(K, true, scalar_alpha(lambda, sig), Var::s());
  return scale * clear_radial(h, Var::s(), K, sig, 1);
}

enum class SolKind { Kernel, Gegenbauer, Harmonic };

struct SolEntry {
  Polynomial vector;
  int degree = 0;
  SolKind kind = SolKind::Kernel;
  int component = -1;  // j of H'_j for harmonic entries
  std::string label() const {
    switch (kind) {
      case SolKind::Gegenbauer: return "gegenbauer(" + std::to_string(degree) + ")";
      case SolKind::Harmonic:
        return "harmonic(" + std::to_string(degree) + "," + std::to_string(component) + ")";
      case SolKind::Kernel: break;
    }
    return "kernel(" + std::to_string(degree) + ")";
  }
};

using SolBasis = std::vector<SolEntry>;

/// Kernel basis of a family of linear maps on the span of `domain`, with the
/// images of each monomial supplied by `image(op, monomial)`.
template <class Image>
std::vector<Polynomial> joint_kernel(const std::vector<Monomial>& domain, int ops, Image&& image) {
  using Key = std::pair<int, Monomial>;
  auto columns = parallel_map(domain.size(), [&](std::size_t c) {
    std::map<Key, Rational> col;
    for (int op = 0; op < ops; ++op) {
      Polynomial img = image(op, domain[c]);
      for (const auto& [m, v] : img.terms()) col.emplace(Key{op, m}, v);
    }
    return col;
  });
  auto basis = nullspace(assemble_columns(columns), domain.size());
  std::vector<Polynomial> out;
  for (const auto& v : basis) {
    Polynomial p;
    for (std::size_t c = 0; c < domain.size(); ++c) p.add_term(domain[c], v[c]);
    out.push_back(std::move(p));
  }
  return out;
}

/// Common kernel of P_1..P_{n-1} (P_1..P_n when ambient) on degree-K polynomials.
inline SolBasis brute_force_sol(int K, const Rational& lambda, const Signature& sig, bool ambient) {
  int ops = ambient ? sig.n() : sig.n() - 1;
  auto domain = monomials_of_degree(sig.xi_vars(), K);
  Polynomial lam(lambda);
  auto kernel = joint_kernel(domain, ops, [&](int op, const Monomial& m) {
    return apply_P(op + 1, lam, Polynomial::term(m, 1), sig);
  });
  SolBasis out;
  for (auto& p : kernel) out.push_back({std::move(p), K, SolKind::Kernel, -1});
  return out;
}

/// Basis of ker Box on degree-k polynomials in the first m xi-coordinates.
inline std::vector<Polynomial> harmonic_polynomials(int k, const Signature& sig, int m) {
  auto domain = monomials_of_degree(sig.xi_vars(m), k);
  return joint_kernel(domain, 1, [&](int, const Monomial& mono) {
    return box(Polynomial::term(mono, 1), sig, Var::Kind::Xi, m);
  });
}

/// Harmonic extension in xi_n: the unique F = sum_i h_i xi_n^i with Box F = 0
/// whose xi_n^0 and xi_n^1 parts are seed0 and seed1.
inline Polynomial harmonic_extension(const Polynomial& seed0, const Polynomial& seed1, const Signature& sig) {
  int n = sig.n();
  Polynomial xin = var(Var::xi(n));
  Polynomial out;
  for (int parity = 0; parity < 2; ++parity) {
    Polynomial h = parity ? seed1 : seed0;
    for (int i = parity; !h.is_zero(); i += 2) {
      out += h * xin.pow(i);
      // Box' h_i + eps_n (i+2)(i+1) h_{i+2} = 0
      h = make_rational(-sig.eps(n), (i + 2) * (i + 1)) * box(h, sig, Var::Kind::Xi, n - 1);
    }
  }
  return out;
}

/// H'_j inside H^k(n variables): harmonic extensions of |xi'|^{k-j} H^j(xi')
/// (k-j even) or of |xi'|^{k-j-1} H^j(xi') xi_n (k-j odd).
inline std::vector<Polynomial> harmonic_component(int k, int j, const Signature& sig) {
  if (j < 0 || j > k) throw std::out_of_range("component index outside 0..k");
  Polynomial r = sig.xi_prime_sq();
  std::vector<Polynomial> out;
  for (const auto& h : harmonic_polynomials(j, sig, sig.n() - 1)) {
    if ((k - j) % 2 == 0)
      out.push_back(harmonic_extension(r.pow((k - j) / 2) * h, Polynomial(), sig));
    else
      out.push_back(harmonic_extension(Polynomial(), r.pow((k - j - 1) / 2) * h, sig));
  }
  return out;
}

/// Basis of H^k(R^{p-1,q-1}). With the filtration flag set the basis is the
/// concatenation of the H'_j components for j = 0..k.
inline std::vector<Polynomial> harmonic_space(int k, const Signature& sig, bool restrict_to_subgroup) {
  if (k < 0) throw std::invalid_argument("degree must be non-negative");
  if (!restrict_to_subgroup) return harmonic_polynomials(k, sig, sig.n());
  std::vector<Polynomial> out;
  for (int j = 0; j <= k; ++j)
    for (auto& p : harmonic_component(k, j, sig)) out.push_back(std::move(p));
  return out;
}

inline std::vector<std::map<Monomial, Rational>> as_vectors(const std::vector<Polynomial>& ps) {
  std::vector<std::map<Monomial, Rational>> out;
  for (const auto& p : ps) out.push_back(p.terms());
  return out;
}

inline bool in_span(const std::vector<Polynomial>& span, const std::vector<Polynomial>& candidates) {
  return span_contains(as_vectors(span), as_vectors(candidates));
}

inline std::size_t span_dimension(const std::vector<Polynomial>& ps) {
  if (ps.empty()) return 0;
  auto m = assemble_columns(as_vectors(ps));
  return rank(m);
}

/// Relabels a brute-force kernel: w_K first when it lies in the kernel, then
/// H'_j components (j >= 1) that lie in it, then any leftover kernel vectors.
inline SolBasis label_sol(int K, const Rational& lambda, const Signature& sig, const SolBasis& kernel) {
  std::vector<Polynomial> raw;
  for (const auto& e : kernel) raw.push_back(e.vector);
  SolBasis out;
  std::vector<Polynomial> chosen;
  auto try_add = [&](const Polynomial& p, SolKind kind, int comp) {
    if (!in_span(raw, {p})) return;
    auto next = chosen;
    next.push_back(p);
    if (span_dimension(next) != next.size()) return;
    chosen = std::move(next);
    out.push_back({p, K, kind, comp});
  };
  try_add(closed_form_w(K, Polynomial(lambda), sig), SolKind::Gegenbauer, -1);
  if (chosen.size() < raw.size())
    for (int j = 1; j <= K && chosen.size() < raw.size(); ++j)
      for (const auto& h : harmonic_component(K, j, sig)) try_add(h, SolKind::Harmonic, j);
  for (const auto& p : raw)
    if (chosen.size() < raw.size()) try_add(p, SolKind::Kernel, -1);
  return out;
}

/// Predicted structure of Sol for the pair (g, g') or, when ambient, (g, g).
struct SolPrediction {
  bool ambient = false;
  bool harmonic_extras = false;     // H^{lambda+1} at degree lambda+1
  int harmonic_degree = -1;
  bool power_laplacian = false;     // |xi|^{2m} at degree 2lambda+n
  int power_degree = -1;
  std::string description;

  /// Predicted dim Sol at degree K.
  std::size_t dimension(int K, const Signature& sig) const {
    std::size_t d = 0;
    if (!ambient) d = 1;
    if (ambient && K == 0) d = 1;
    if (ambient && power_laplacian && K == power_degree) d += 1;
    if (harmonic_extras && K == harmonic_degree) {
      std::size_t h = harmonic_polynomials(K, sig, sig.n()).size();
      // w_K itself lies in H^{lambda+1} for the pair (g,g')
      d = ambient ? d + h : h;
    }
    return d;
  }
};

inline SolPrediction classify_sol(const Rational& lambda, const Signature& sig, bool ambient) {
  SolPrediction pr;
  pr.ambient = ambient;
  int n = sig.n();
  if (is_natural(lambda)) {
    pr.harmonic_extras = true;
    pr.harmonic_degree = static_cast<int>(to_long(lambda)) + 1;
  }
  Rational m = lambda + make_rational(n, 2);
  if (ambient && is_positive_natural(m)) {
    pr.power_laplacian = true;
    pr.power_degree = static_cast<int>(2 * to_long(m));
  }
  if (!ambient) {
    pr.description = "w_K for every K";
    if (pr.harmonic_extras)
      pr.description += "; degree " + std::to_string(pr.harmonic_degree) + " enlarged to H^" +
                        std::to_string(pr.harmonic_degree) + " = sum of H'_j, j=0.." +
                        std::to_string(pr.harmonic_degree);
  } else {
    pr.description = "w_0";
    if (pr.power_laplacian) pr.description += "; w_" + std::to_string(pr.power_degree) + " = |xi|^" + std::to_string(pr.power_degree);
    if (pr.harmonic_extras) pr.description += "; H^" + std::to_string(pr.harmonic_degree);
    if (!pr.power_laplacian && !pr.harmonic_extras) pr.description += " only (irreducible)";
  }
  return pr;
}

struct RadialCase {
  int j;
  int m;  // h = t^m
  Polynomial discrepancy;
};

struct RadialReport {
  bool ok = true;
  std::vector<RadialCase> cases;
};

/// xi_n^2 P_j(xi_n^K h) - 1/2 eps_n eps_j xi_j xi_n^K (R(K,alpha)h), both
/// cleared of xi_n denominators with t = eps_n |xi'|^2 / xi_n^2.
inline Polynomial radial_discrepancy(int K, const Polynomial& h, int j, const Polynomial& lambda,
                                     const Signature& sig) {
  int n = sig.n();
  Polynomial alpha = scalar_alpha(lambda, sig);
  Polynomial lhs = var(Var::xi(n)).pow(2) * apply_P(j, lambda, clear_radial(h, Var::t(), K, sig, sig.eps(n)), sig);
  Polynomial rhs = make_rational(sig.eps(n) * sig.eps(j), 2) * var(Var::xi(j)) *
                   clear_radial(ode_residual_R(K, h, alpha), Var::t(), K, sig, sig.eps(n));
  return lhs - rhs;
}

/// Checks the radial reduction on the basis h = t^m, m <= K/2, for j < n.
inline RadialReport radial_reduction_check(int K, const Polynomial& lambda, const Signature& sig) {
  if (K < 0) throw std::invalid_argument("K must be non-negative");
  RadialReport rep;
  for (int j = 1; j < sig.n(); ++j)
    for (int m = 0; 2 * m <= K; ++m) {
      Polynomial d = radial_discrepancy(K, var(Var::t()).pow(m), j, lambda, sig);
      if (!d.is_zero()) rep.ok = false;
      rep.cases.push_back({j, m, d});
    }
  return rep;
}

/// Pol^{d}[xi] inside sum_{i<=d} Pol^i[xi']·w_{d-i}.
inline bool polw_spans(int d, const Rational& lambda, const Signature& sig) {
  std::vector<Polynomial> gens;
  for (int i = 0; i <= d; ++i) {
    Polynomial w = closed_form_w(d - i, Polynomial(lambda), sig);
    for (const auto& m : monomials_of_degree(sig.xi_vars(sig.n() - 1), i))
      gens.push_back(Polynomial::term(m, 1) * w);
  }
  std::vector<Polynomial> all;
  for (const auto& m : monomials_of_degree(sig.xi_vars(), d)) all.push_back(Polynomial::term(m, 1));
  return in_span(gens, all);
}

}  // namespace fmethod
