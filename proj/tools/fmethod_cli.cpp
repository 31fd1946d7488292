// Command-line front end. Data goes to stdout, progress and errors to stderr.
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <fmethod/fmethod.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace fmethod;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<int> p, q;
  std::string lambda;
  std::string emit = "text";

  Signature signature() const {
    if (!p || !q) throw UsageError("--p and --q are required");
    return checked_signature(*p, *q);
  }

  static Signature checked_signature(int p, int q) {
    if (p < 1) throw UsageError("--p must be >= 1");
    if (q < 2) throw UsageError("--q must be >= 2");
    if (p + q - 2 < 3) throw UsageError("--p/--q: n = p+q-2 must be >= 3");
    try {
      return Signature(p, q);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--p/--q: ") + e.what());
    }
  }

  DensityParam density() const {
    if (lambda.empty()) throw UsageError("--lambda is required");
    try {
      return DensityParam::parse(lambda);
    } catch (const std::exception&) {
      throw UsageError("--lambda: expected num/den or 'symbolic', got '" + lambda + "'");
    }
  }

  Rational rational_lambda() const {
    DensityParam d = density();
    if (d.is_symbolic()) throw UsageError("--lambda must be a rational here");
    return d.value();
  }
};

void add_signature(CLI::App* app, Common& c) {
  app->add_option("--p", c.p, "number of positive directions (p >= 1)");
  app->add_option("--q", c.q, "number of negative directions (q >= 2)");
}

void require_emit(const std::string& emit, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (emit == a) return;
  throw UsageError("--emit: unsupported format '" + emit + "'");
}

int cmd_gegenbauer(int l, const std::string& variant_name, const std::string& alpha_text, const std::string& emit) {
  require_emit(emit, {"text", "json"});
  GegenbauerVariant variant;
  try {
    variant = parse_variant(variant_name);
  } catch (const std::exception&) {
    throw UsageError("--variant: expected C, Ctilde, Cscript or CscriptTilde");
  }
  Polynomial alpha = var(Var::alpha());
  if (alpha_text != "symbolic") {
    try {
      alpha = Polynomial(parse_rational(alpha_text));
    } catch (const std::exception&) {
      throw UsageError("--alpha: expected num/den or 'symbolic'");
    }
  }
  GegenbauerPoly g;
  try {
    g = gegenbauer(l, variant, alpha);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--l: ") + e.what());
  }
  if (emit == "text") {
    std::cout << g.body.to_string() << '\n';
    return 0;
  }
  json out;
  out["l"] = l;
  out["variant"] = to_string(variant);
  out["alpha"] = alpha_text;
  out["polynomial"] = g.body.to_string();
  // coefficient of the k-th term: x^{l-2k} for C/Ctilde, v^k when inflated
  auto coeffs = json::array();
  if (l >= 0)
    for (const auto& c : detail::gegenbauer_coefficients(l, is_renormalized(variant), alpha))
      coeffs.push_back(c.to_string());
  out["coefficients"] = coeffs;
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_singular(const Common& c, int K, bool spinor) {
  if (K < 0) throw UsageError("--K must be >= 0");
  Signature sig = c.signature();
  Polynomial lam = c.density().poly();
  if (spinor)
    std::cout << spinor_singular_F(K, lam, sig).to_string() << '\n';
  else
    std::cout << closed_form_w(K, lam, sig).to_string() << '\n';
  return 0;
}

int cmd_solve(const Common& c, int degree, bool ambient, bool spinor) {
  if (degree < 0) throw UsageError("--degree must be >= 0");
  Signature sig = c.signature();
  Rational lam = c.rational_lambda();
  json out;
  if (spinor) {
    auto sol = brute_force_spinor_sol(degree, lam, sig, ambient);
    out["dimension"] = sol.dimension();
    out["even_dimension"] = sol.even_dimension;
    out["odd_dimension"] = sol.odd_dimension;
    out["multiplier"] = sol.multiplier;
    auto blades = json::array();
    for (Blade b : all_blades(sig.n())) blades.push_back(b.to_string());
    out["blades"] = blades;
    auto basis = json::array();
    for (const auto& f : sol.basis) basis.push_back(f.to_string());
    out["basis"] = basis;
  } else {
    auto kernel = brute_force_sol(degree, lam, sig, ambient);
    SolBasis labelled = ambient ? kernel : label_sol(degree, lam, sig, kernel);
    out["dimension"] = labelled.size();
    auto basis = json::array(), kinds = json::array();
    for (const auto& e : labelled) {
      basis.push_back(e.vector.to_string());
      kinds.push_back(e.label());
    }
    out["basis"] = basis;
    out["kinds"] = kinds;
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_branch(const Common& c, bool spinor, std::optional<int> bmax) {
  require_emit(c.emit, {"text", "json"});
  if (bmax && *bmax < 0) throw UsageError("--bmax must be >= 0");
  int n = c.signature().n();
  Rational lam = c.rational_lambda();
  BranchReport rep = spinor ? spinor_branch_report(lam, n, bmax) : scalar_branch_report(lam, n, bmax);
  if (c.emit == "json") {
    std::cout << rep.to_json().dump(2) << '\n';
    return 0;
  }
  std::cout << (spinor ? "spinor" : "scalar") << " lambda=" << to_string(rep.lambda) << " n=" << rep.n
            << " verdict=" << to_string(rep.verdict) << '\n';
  for (const auto& s : rep.summands) {
    std::cout << "  b=" << s.b;
    if (s.epsilon) std::cout << (s.epsilon > 0 ? " (+)" : " (-)");
    std::cout << " character=(";
    auto ch = s.character.to_strings();
    for (std::size_t i = 0; i < ch.size(); ++i) std::cout << (i ? "," : "") << ch[i];
    std::cout << ")";
    if (s.partner) std::cout << " partner=" << *s.partner;
    std::cout << '\n';
  }
  for (auto [a, b] : rep.collisions)
    std::cout << "  collision b=" << rep.summands[a].b << " ~ b=" << rep.summands[b].b << '\n';
  std::cout << "  truncated at b=" << rep.truncated_at << '\n';
  return 0;
}

int cmd_juhl(const Common& c, int K, bool spinor) {
  require_emit(c.emit, {"json", "csv", "latex", "text"});
  if (K < 0) throw UsageError("--K must be >= 0");
  auto st = build_operator(K, c.density(), c.signature(), spinor);
  if (c.emit == "csv")
    std::cout << to_csv(st);
  else if (c.emit == "latex")
    std::cout << to_latex(st) << '\n';
  else
    std::cout << to_json(st).dump(2) << '\n';
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::optional<int> Kmax, K, dmax;
  std::uint64_t seed = 1;
};

int cmd_verify(const Common& c, const VerifyArgs& v) {
  SuiteOptions o;
  if (c.p || c.q) o.sig = c.signature();
  if (!c.lambda.empty()) o.lambda = c.rational_lambda();
  if (v.Kmax && *v.Kmax < 0) throw UsageError("--Kmax must be >= 0");
  if (v.K && *v.K < 0) throw UsageError("--K must be >= 0");
  if (v.dmax && *v.dmax < 0) throw UsageError("--dmax must be >= 0");
  o.Kmax = v.Kmax;
  o.K = v.K;
  o.dmax = v.dmax;
  o.seed = v.seed;
  o.progress = [](const std::string& m) { std::cerr << "[verify] " << m << '\n'; };

  std::vector<const Suite*> chosen;
  if (v.suite == "all") {
    for (const auto& s : suite_registry()) chosen.push_back(&s);
  } else {
    try {
      chosen.push_back(&find_suite(v.suite));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--suite: ") + e.what());
    }
  }
  bool all_ok = true;
  auto results = json::array();
  for (const Suite* s : chosen) {
    SuiteResult r;
    try {
      r = s->run(o);
    } catch (const std::invalid_argument& e) {
      throw UsageError(s->name + ": " + e.what());
    }
    json j;
    j["suite"] = r.name;
    j["ok"] = r.ok;
    j["cases"] = r.cases;
    if (!r.ok) {
      j["counterexample"] = r.failure;
      std::cerr << "FAIL " << r.name << ": " << r.failure << '\n';
    }
    if (!r.notes.empty()) j["notes"] = r.notes;
    results.push_back(j);
    all_ok = all_ok && r.ok;
  }
  std::cout << (results.size() == 1 ? results[0] : results).dump(2) << '\n';
  return all_ok ? 0 : 1;
}

/// CLI11 treats "-1/2" as an unknown flag; glue a negative value onto the
/// preceding option so "--lambda -1/2" works.
std::vector<std::string> glue_negative_values(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && i + 1 < argc) {
      std::string next = argv[i + 1];
      if (next.size() > 1 && next[0] == '-' && (std::isdigit(static_cast<unsigned char>(next[1])) != 0)) {
        out.push_back(a + "=" + next);
        ++i;
        continue;
      }
    }
    out.push_back(a);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact F-method toolkit: singular vectors, symmetry breaking operators and branching reports"};
  app.require_subcommand(1);
  Common c;

  int l = 0;
  std::string variant = "C", alpha = "symbolic";
  auto* geg = app.add_subcommand("gegenbauer", "print a Gegenbauer polynomial");
  geg->add_option("--l", l, "degree")->required();
  geg->add_option("--variant", variant, "C, Ctilde, Cscript or CscriptTilde");
  geg->add_option("--alpha", alpha, "parameter: num/den or 'symbolic'");
  geg->add_option("--emit", c.emit, "text or json");

  int K = 0;
  bool spinor = false, ambient = false;
  auto* sing = app.add_subcommand("singular", "closed-form singular vector of degree K");
  add_signature(sing, c);
  sing->add_option("--lambda", c.lambda, "num/den or 'symbolic'")->required();
  sing->add_option("--K", K, "degree")->required();
  sing->add_flag("--spinor", spinor, "Clifford-valued vector");

  int degree = 0;
  auto* solve = app.add_subcommand("solve", "brute-force kernel of the Fourier-side system");
  add_signature(solve, c);
  solve->add_option("--lambda", c.lambda, "num/den")->required();
  solve->add_option("--degree", degree, "homogeneous degree")->required();
  solve->add_flag("--ambient", ambient, "include the n-th equation");
  solve->add_flag("--spinor", spinor, "spinor system");

  std::optional<int> bmax;
  auto* branch = app.add_subcommand("branch", "branching report");
  add_signature(branch, c);
  branch->add_option("--lambda", c.lambda, "num/den")->required();
  branch->add_option("--bmax", bmax, "largest summand index");
  branch->add_flag("--spinor", spinor, "spinor bundle");
  branch->add_option("--emit", c.emit, "text or json");

  auto* juhl = app.add_subcommand("juhl", "symmetry breaking operator stencil");
  add_signature(juhl, c);
  juhl->add_option("--lambda", c.lambda, "num/den or 'symbolic'")->required();
  juhl->add_option("--K", K, "order")->required();
  juhl->add_flag("--spinor", spinor, "spinor operator");
  juhl->add_option("--emit", c.emit, "json, csv or latex");

  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "run a named verification suite ('all' runs every suite)");
  add_signature(verify, c);
  verify->add_option("--suite", v.suite, "suite name")->required();
  verify->add_option("--lambda", c.lambda, "fix lambda (num/den)");
  verify->add_option("--Kmax", v.Kmax, "largest order");
  verify->add_option("--K", v.K, "single order");
  verify->add_option("--dmax", v.dmax, "test monomial degree");
  verify->add_option("--seed", v.seed, "seed for random lambda");

  auto args = glue_negative_values(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (geg->parsed()) return cmd_gegenbauer(l, variant, alpha, c.emit);
    if (sing->parsed()) return cmd_singular(c, K, spinor);
    if (solve->parsed()) return cmd_solve(c, degree, ambient, spinor);
    if (branch->parsed()) return cmd_branch(c, spinor, bmax);
    if (juhl->parsed()) {
      if (c.emit == "text") c.emit = "json";
      return cmd_juhl(c, K, spinor);
    }
    if (verify->parsed()) return cmd_verify(c, v);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
