#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "spinor/harness.hpp"

namespace spinor::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string poly_string(std::span<const Elt::Coeff> cs, const char* var) {
  std::string s;
  for (std::size_t k = cs.size(); k-- > 0;) {
    if (cs[k] == 0) continue;
    if (!s.empty()) s += " + ";
    if (k == 0 || cs[k] != 1) s += std::to_string(cs[k]);
    if (k >= 1) s += var;
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

std::string modulus_string(const std::vector<std::uint32_t>& m, const char* var) {
  std::vector<Elt::Coeff> cs(m.begin(), m.end());
  return poly_string(cs, var);
}

const char* var_of(Level level) { return level == Level::E0 ? "y" : "x"; }

std::string pretty(const Elt& x) { return poly_string(x.coeffs(), var_of(x.level())); }

struct TowerFlags {
  std::uint32_t p = 3;
  int m0 = 1;
  std::uint32_t c0_index = 0;
  CLI::Option* p_opt = nullptr;
  CLI::Option* m0_opt = nullptr;
  CLI::Option* c0_opt = nullptr;

  void add_to(CLI::App& app) {
    p_opt = app.add_option("--p", p, "Odd prime characteristic")->capture_default_str();
    m0_opt = app.add_option("--m0", m0, "Degree of E0 over F_p")->capture_default_str();
    c0_opt = app.add_option("--c0-index", c0_index, "Index of the twist c0 among nonzero elements of E0")
                 ->capture_default_str();
  }
  bool given() const { return p_opt->count() + m0_opt->count() + c0_opt->count() > 0; }
  std::shared_ptr<const FieldTower> make() const { return make_tower(p, m0, c0_index); }

  static std::shared_ptr<const FieldTower> make_tower(std::uint32_t p, int m0, std::uint32_t c0) {
    try {
      return FieldTower::make(p, m0, c0);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

// ---------------------------------------------------------------------------
// tower

json tower_summary(const FieldTower& t) {
  const auto elt_json = [](const Elt& x) { return json{{"digits", to_json(x)}, {"poly", pretty(x)}}; };
  return {{"p", t.p()},
          {"m0", t.m0()},
          {"c0_index", t.c0_index()},
          {"degrees", {{"F", 1}, {"E0", t.degree(Level::E0)}, {"E", t.degree(Level::E)}}},
          {"orders", {{"F", t.order(Level::F)}, {"E0", t.order(Level::E0)}, {"E", t.order(Level::E)}}},
          {"moduli", {{"E0", t.modulus(Level::E0)}, {"E", t.modulus(Level::E)}}},
          {"theta", elt_json(t.theta())},
          {"delta", elt_json(t.delta())},
          {"c0", elt_json(t.c0())},
          {"zeta", zeta(t).to_string()},
          {"nonsquare", {{"F", elt_json(t.nonsquare(Level::F))}, {"E0", elt_json(t.nonsquare(Level::E0))}}}};
}

int cmd_tower(const TowerFlags& flags, bool as_json, std::ostream& out) {
  const auto tw = flags.make();
  const FieldTower& t = *tw;
  if (as_json) {
    out << tower_summary(t).dump(2) << '\n';
    return kExitOk;
  }
  out << "p        = " << t.p() << '\n';
  out << "m0       = " << t.m0() << "  (c0_index " << t.c0_index() << ")\n";
  if (t.m0() == 1)
    out << "E0       = F\n";
  else
    out << "E0       = F_" << t.p() << "[y]/(" << modulus_string(t.modulus(Level::E0), "y") << ")\n";
  out << "E        = F_" << t.p() << "[x]/(" << modulus_string(t.modulus(Level::E), "x") << ")\n";
  if (t.m0() > 1) out << "theta    = " << pretty(t.theta()) << "  (image of y in E)\n";
  out << "delta    = " << pretty(t.delta()) << '\n';
  out << "c0       = " << pretty(t.c0()) << '\n';
  out << "zeta     = " << zeta(t).to_string() << '\n';
  out << "nonsquare F  = " << pretty(t.nonsquare(Level::F)) << '\n';
  out << "nonsquare E0 = " << pretty(t.nonsquare(Level::E0)) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sn

json load_payload(const std::string& arg, const char* what) {
  std::size_t i = 0;
  while (i < arg.size() && std::isspace(static_cast<unsigned char>(arg[i]))) ++i;
  try {
    if (i < arg.size() && (arg[i] == '{' || arg[i] == '[')) return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw UsageError(std::string("cannot open ") + what + " file '" + arg + "'");
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

std::optional<json> embedded_tower(const json& j) {
  if (j.is_object() && j.contains("tower")) return j.at("tower");
  return std::nullopt;
}

std::shared_ptr<const FieldTower> resolve_tower(const TowerFlags& flags, const json& form, const json& matrix,
                                                std::ostream& err) {
  auto ft = embedded_tower(form);
  auto mt = embedded_tower(matrix);
  if (ft && mt && *ft != *mt && !flags.given()) throw UsageError("form and matrix embed different towers");
  const auto file_tower = ft ? ft : mt;
  if (!file_tower) return flags.make();
  if (flags.given()) {
    err << "warning: tower flags override the tower embedded in the input\n";
    return flags.make();
  }
  try {
    return tower_from_json(*file_tower);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad embedded tower: ") + e.what());
  }
}

Form load_form(const FieldTower& t, const json& j) {
  if (!j.is_object() || !j.contains("gram")) throw UsageError("form must be an object with a gram");
  json body = j;
  if (!body.contains("kind")) body["kind"] = "hermitian";
  const FormKind kind = form_kind_from_string(body.at("kind").get<std::string>());
  if (kind != FormKind::hermitian && kind != FormKind::symmetric)
    throw UsageError("form kind must be hermitian or symmetric");
  const Level level =
      level_from_string(body.value("level", std::string(kind == FormKind::hermitian ? "E" : "F")));
  const Mat gram = mat_from_json(t, {{"level", std::string(to_string(level))}, {"entries", body.at("gram")}});
  if (gram.rows() != gram.cols()) throw UsageError("Gram matrix is not square");
  if (det(gram).is_zero()) throw MathError("degenerate form");
  return form_from_json(t, body);
}

Mat load_matrix(const FieldTower& t, const json& j, Level default_level) {
  if (j.is_array()) return mat_from_json(t, {{"level", std::string(to_string(default_level))}, {"entries", j}});
  if (!j.is_object() || !j.contains("entries")) throw UsageError("matrix must be an array of rows or an object");
  json body = j;
  if (!body.contains("level")) body["level"] = std::string(to_string(default_level));
  return mat_from_json(t, body);
}

json coset_json(const Coset& c) {
  const Elt rep = c.canonical();
  return {{"canonical", to_json(rep)}, {"poly", pretty(rep)}, {"trivial", c.is_trivial()}};
}

int sn_unitary(const Form& h, const Mat& m, bool as_json, std::ostream& out) {
  if (h.kind() != FormKind::hermitian) throw UsageError("unitary mode needs a hermitian form");
  if (m.level() != Level::E) throw UsageError("unitary mode needs a matrix over E");
  if (m.rows() != h.dim() || m.cols() != h.dim()) throw UsageError("matrix and form dimensions differ");
  const Form hp = make_anti_hermitian_from(h);
  if (!is_isometry(m, hp)) throw MathError("not an isometry of the hermitian form");
  const UnitaryElement sigma(m, hp);
  const Coset via_det = sn_via_det(sigma);
  const SnCayleyResult cay = sn_cayley(sigma, hp);
  const Coset* via_cayley = std::get_if<Coset>(&cay);
  const bool agree = !via_cayley || *via_cayley == via_det;
  const SquareClass induced = norm_induced(via_det);
  if (as_json) {
    json j = {{"mode", "unitary"},
              {"dim_moved", sigma.dimension()},
              {"sn_via_det", coset_json(via_det)},
              {"norm_induced", induced.to_string()},
              {"agree", agree}};
    if (via_cayley)
      j["cayley"] = coset_json(*via_cayley);
    else
      j["cayley"] = {{"not_decomposed_here", std::get<NotDecomposedHere>(cay).step}};
    out << j.dump(2) << '\n';
  } else {
    out << "dim V_sigma      = " << sigma.dimension() << '\n';
    out << "sn_E (via det)   = " << pretty(via_det.canonical()) << " E0^x"
        << (via_det.is_trivial() ? "  (trivial)" : "") << '\n';
    if (via_cayley)
      out << "sn_E (Cayley)    = " << pretty(via_cayley->canonical()) << " E0^x\n";
    else
      out << "sn_E (Cayley)    = not decomposed here (step " << std::get<NotDecomposedHere>(cay).step << ")\n";
    out << "Norm_E/F class   = " << induced.to_string() << '\n';
    out << "agreement        = " << (agree ? "yes" : "NO") << '\n';
  }
  return agree ? kExitOk : kExitFailure;
}

int sn_orthogonal(const Form& h, const Mat& m, Level target, bool as_json, std::ostream& out) {
  std::optional<OrthogonalElement> t;
  if (h.kind() == FormKind::hermitian) {
    if (m.rows() != h.dim() && m.level() == Level::E) throw UsageError("matrix and form dimensions differ");
    if (m.level() == Level::E) {
      const Form hp = make_anti_hermitian_from(h);
      if (m.rows() != m.cols()) throw UsageError("matrix is not square");
      if (!is_isometry(m, hp)) throw MathError("not an isometry of the hermitian form");
      t.emplace(scalar_restrict(UnitaryElement(m, hp), h, target));
    } else {
      if (m.level() != target) throw UsageError("matrix level does not match the mode");
      const Form b = target == Level::F ? trace_form_F(h) : trace_form_E0(h);
      if (m.rows() != b.dim() || m.cols() != b.dim()) throw UsageError("matrix and form dimensions differ");
      if (!is_isometry(m, b)) throw MathError("not an isometry of the restricted form");
      t.emplace(m, b);
    }
  } else {
    if (h.level() != target || m.level() != target) throw UsageError("form and matrix levels must match the mode");
    if (m.rows() != h.dim() || m.cols() != h.dim()) throw UsageError("matrix and form dimensions differ");
    if (!is_isometry(m, h)) throw MathError("not an isometry of the symmetric form");
    t.emplace(m, h);
  }
  const SquareClass z = sn_zassenhaus(*t);
  const SquareClass o = sn_reflection_oracle(*t);
  const SquareClass d = disc(t->form());
  const bool agree = z == o;
  if (as_json) {
    out << json{{"mode", target == Level::F ? "orthogonal-F" : "orthogonal-E0"},
                {"dim", t->form().dim()},
                {"zassenhaus", z.to_string()},
                {"oracle", o.to_string()},
                {"discriminant", d.to_string()},
                {"agree", agree}}
               .dump(2)
        << '\n';
  } else {
    out << "dim              = " << t->form().dim() << '\n';
    out << "sn (Zassenhaus)  = " << z.to_string() << '\n';
    out << "sn (reflections) = " << o.to_string() << '\n';
    out << "disc(b)          = " << d.to_string() << '\n';
    out << "agreement        = " << (agree ? "yes" : "NO") << '\n';
  }
  return agree ? kExitOk : kExitFailure;
}

int cmd_sn(const TowerFlags& flags, const std::string& form_arg, const std::string& matrix_arg, const std::string& mode,
           bool as_json, std::ostream& out, std::ostream& err) {
  const json form_j = load_payload(form_arg, "form");
  const json matrix_j = load_payload(matrix_arg, "matrix");
  const auto tw = resolve_tower(flags, form_j, matrix_j, err);
  const FieldTower& t = *tw;
  const Form h = load_form(t, form_j);
  const Level default_level = h.kind() == FormKind::hermitian ? Level::E : h.level();
  const Mat m = load_matrix(t, matrix_j, default_level);
  if (mode == "unitary") return sn_unitary(h, m, as_json, out);
  return sn_orthogonal(h, m, mode == "orthogonal-F" ? Level::F : Level::E0, as_json, out);
}

// ---------------------------------------------------------------------------
// verify

std::vector<std::size_t> parse_dims(const std::string& s) {
  const auto to_n = [&](const std::string& part) -> std::size_t {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("bad --dim value '" + s + "'");
    return std::stoul(part);
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) return {to_n(s)};
  const std::size_t a = to_n(s.substr(0, dots)), b = to_n(s.substr(dots + 2));
  if (a > b) throw UsageError("empty --dim range '" + s + "'");
  std::vector<std::size_t> out;
  for (std::size_t n = a; n <= b; ++n) out.push_back(n);
  return out;
}

int cmd_verify(const TowerFlags& flags, const std::string& dims, std::size_t trials, std::uint64_t seed,
               bool exhaustive, const std::vector<std::string>& only, bool as_json, std::ostream& out) {
  SuiteConfig cfg;
  cfg.p = flags.p;
  cfg.m0 = flags.m0;
  cfg.c0_index = flags.c0_index;
  cfg.dims = parse_dims(dims);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.exhaustive = exhaustive;
  cfg.only = only;
  flags.make();
  Report rep;
  try {
    rep = run_suite(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (as_json) {
    out << rep.to_json().dump(2) << '\n';
  } else {
    for (const auto& c : rep.checks)
      out << std::left << std::setw(30) << c.name << std::right << std::setw(8) << c.trials << " trials  "
          << c.failures.size() << " failures\n";
    out << "cayley decomposed " << rep.decomposed_count << ", not decomposed here " << rep.not_decomposed_count
        << '\n';
    out << (rep.failure_count() == 0 ? "PASS" : "FAIL") << " (" << rep.failure_count() << " failures, "
        << std::fixed << std::setprecision(1) << rep.elapsed_ms << " ms)\n";
  }
  return rep.failure_count() == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spinor norms on orthogonal and unitary groups over finite fields"};
  app.require_subcommand(1);

  TowerFlags tower_flags, sn_flags, verify_flags;
  bool tower_json = false, sn_json = false, verify_json = false;

  auto* tower = app.add_subcommand("tower", "Describe the field tower");
  tower_flags.add_to(*tower);
  tower->add_flag("--json", tower_json, "Print JSON");

  std::string form_arg, matrix_arg, mode = "unitary";
  auto* sn = app.add_subcommand("sn", "Spinor norm of a given isometry");
  sn_flags.add_to(*sn);
  sn->add_option("--form", form_arg, "Hermitian or symmetric form (file or inline JSON)")->required();
  sn->add_option("--matrix", matrix_arg, "Matrix (file or inline JSON)")->required();
  sn->add_option("--mode", mode, "unitary, orthogonal-F or orthogonal-E0")
      ->check(CLI::IsMember({"unitary", "orthogonal-F", "orthogonal-E0"}))
      ->capture_default_str();
  sn->add_flag("--json", sn_json, "Print JSON");

  std::string dims = "1..2";
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  std::vector<std::string> only;
  auto* verify = app.add_subcommand("verify", "Run the randomized and exhaustive identity checks");
  verify_flags.add_to(*verify);
  verify->add_option("--dim", dims, "Dimension N or range A..B")->capture_default_str();
  verify->add_option("--trials", trials, "Random trials per check and dimension")->capture_default_str();
  verify->add_option("--seed", seed, "Seed")->capture_default_str();
  verify->add_flag("--exhaustive", exhaustive, "Add the exhaustive sweeps");
  verify->add_option("--only", only, "Run only these checks");
  verify->add_flag("--json", verify_json, "Print the report as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (auto* sub : {tower, sn, verify})
      if (sub->parsed()) {
        err << sub->help();
        return kExitUsage;
      }
    err << app.help();
    return kExitUsage;
  }

  try {
    if (tower->parsed()) return cmd_tower(tower_flags, tower_json, out);
    if (sn->parsed()) return cmd_sn(sn_flags, form_arg, matrix_arg, mode, sn_json, out, err);
    return cmd_verify(verify_flags, dims, trials, seed, exhaustive, only, verify_json, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MathError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace spinor::cli
