#include "spinor/harness.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <stdexcept>

namespace spinor {

namespace {

std::string describe(const SquareClass& a, const SquareClass& b) { return a.to_string() + " vs " + b.to_string(); }

std::string describe(const Coset& a, const Coset& b) {
  return a.canonical().to_string() + " vs " + b.canonical().to_string();
}

template <class Fn>
CheckOutcome guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

Mat one_plus_half(const Mat& m) {
  const FieldTower& t = m.tower();
  return (Mat::identity(t, m.level(), m.rows()) + m) * t.from_int(m.level(), 2).inverse();
}

}  // namespace

// ---------------------------------------------------------------------------
// Individual checks

CheckOutcome check_proposition(const Form& hp, const OneDimElement& s) {
  return guarded([&]() -> CheckOutcome {
    const auto [u, w] = fitting_minus_one(s.matrix);
    const Coset disc_part = disc_coset(restrict_form(hp, u));
    const Elt det_part = det(restrict(one_plus_half(s.matrix), w));
    const Coset lhs = disc_part * Coset(det_part);
    const Coset rhs(s.phi);
    if (lhs == rhs) return {};
    return {false, "dim U = " + std::to_string(u.dim()) + ", " + describe(lhs, rhs)};
  });
}

CheckOutcome check_theorem(const Form& h, const UnitaryElement& sigma, const SuiteHooks& hooks) {
  return guarded([&]() -> CheckOutcome {
    const SquareClass lhs = hooks.orthogonal_norm(scalar_restrict(sigma, h, Level::F));
    const SquareClass rhs = norm_induced(sn_via_det(sigma));
    if (lhs == rhs) return {};
    return {false, describe(lhs, rhs)};
  });
}

CheckOutcome check_quadratic(const Form& h, const UnitaryElement& sigma, const SuiteHooks& hooks) {
  if (h.tower().m0() != 1) throw std::invalid_argument("check_quadratic requires E0 = F");
  return check_theorem(h, sigma, hooks);
}

CheckOutcome check_intermediate(const Form& h, const UnitaryElement& sigma, const SuiteHooks& hooks) {
  return guarded([&]() -> CheckOutcome {
    const FieldTower& t = h.tower();
    const SquareClass lhs = hooks.orthogonal_norm(scalar_restrict(sigma, h, Level::E0));
    const Coset sn = sn_via_det(sigma);
    const SquareClass rhs(t.norm_E_E0(sn.representative()));
    if (lhs == rhs) return {};
    return {false, describe(lhs, rhs)};
  });
}

CheckOutcome check_transfer(const Form& phi) {
  return guarded([&]() -> CheckOutcome {
    const FieldTower& t = phi.tower();
    const SquareClass lhs = disc(transfer_to_F(phi));
    const SquareClass rhs = zeta(t).pow(phi.dim()) * SquareClass(t.norm_E0_F(det(phi.gram())));
    if (lhs == rhs) return {};
    return {false, describe(lhs, rhs)};
  });
}

CheckOutcome check_oracle(const OrthogonalElement& t, const SuiteHooks& hooks) {
  return guarded([&]() -> CheckOutcome {
    const SquareClass direct = hooks.orthogonal_norm(t);
    const SquareClass oracle = sn_reflection_oracle(t);
    std::vector<std::size_t> reversed(t.form().dim());
    for (std::size_t i = 0; i < reversed.size(); ++i) reversed[i] = reversed.size() - 1 - i;
    const SquareClass oracle_rev = sn_reflection_oracle(t, reversed);
    if (!(oracle == oracle_rev)) return {false, "oracle depends on basis order: " + describe(oracle, oracle_rev)};
    if (!(direct == oracle)) return {false, describe(direct, oracle)};
    return {};
  });
}

CheckOutcome check_cayley(const Form& hp, const UnitaryElement& sigma, bool* decomposed) {
  if (decomposed) *decomposed = false;
  return guarded([&]() -> CheckOutcome {
    const Coset via_det = sn_via_det(sigma);
    if (sigma.dimension() == 0) {
      if (decomposed) *decomposed = true;
      return via_det.is_trivial() ? CheckOutcome{} : CheckOutcome{false, "identity has nontrivial sn_E"};
    }
    const auto dec = cayley_decompose(sigma, hp);
    if (std::holds_alternative<NotDecomposedHere>(dec)) return {};
    if (decomposed) *decomposed = true;
    const auto& factors = std::get<std::vector<OneDimElement>>(dec);
    Mat product = Mat::identity(hp.tower(), Level::E, hp.dim());
    Elt phis = hp.tower().one(Level::E);
    for (const auto& s : factors) {
      product = product * s.matrix;
      phis *= s.phi;
    }
    if (!(product == sigma.matrix())) return {false, "factor product differs from sigma"};
    if (factors.size() != sigma.dimension()) return {false, "factor count differs from dim V_sigma"};
    const Coset via_cayley(phis);
    if (!(via_cayley == via_det)) return {false, describe(via_cayley, via_det)};
    return {};
  });
}

CheckOutcome check_hom_sn_E(const UnitaryElement& sigma, const UnitaryElement& tau) {
  return guarded([&]() -> CheckOutcome {
    const Coset lhs = hil(det(sigma.matrix() * tau.matrix()));
    const Coset rhs = sn_via_det(sigma) * sn_via_det(tau);
    if (lhs == rhs) return {};
    return {false, describe(lhs, rhs)};
  });
}

CheckOutcome check_hom_orthogonal(const OrthogonalElement& a, const OrthogonalElement& b, const SuiteHooks& hooks) {
  return guarded([&]() -> CheckOutcome {
    const OrthogonalElement ab(a.matrix() * b.matrix(), a.form());
    const SquareClass lhs = hooks.orthogonal_norm(ab);
    const SquareClass rhs = hooks.orthogonal_norm(a) * hooks.orthogonal_norm(b);
    if (lhs == rhs) return {};
    return {false, describe(lhs, rhs)};
  });
}

CheckOutcome check_norm_induced(const Elt& beta, const Elt& t) {
  return guarded([&]() -> CheckOutcome {
    const FieldTower& tw = beta.tower();
    const Elt te = tw.embed(t, Level::E);
    const SquareClass base = norm_induced(Coset(beta));
    const SquareClass shifted = norm_induced(Coset(beta * te));
    if (!(base == shifted)) return {false, "not constant on the coset: " + describe(base, shifted)};
    if (!norm_induced(Coset(te)).is_square()) return {false, "E0 element has nontrivial induced norm"};
    return {};
  });
}

CheckOutcome check_hil(const Elt& alpha, std::size_t witnesses) {
  return guarded([&]() -> CheckOutcome {
    const FieldTower& t = alpha.tower();
    const Coset reference = hil(alpha);
    std::size_t found = 0;
    const auto q = static_cast<std::uint32_t>(t.order(Level::E));
    for (std::uint32_t idx = 1; idx < q && found < witnesses; ++idx) {
      const auto beta = hilbert90_candidate(alpha, t.from_index(Level::E, idx));
      if (!beta) continue;
      ++found;
      if (!(alpha * t.involution(*beta) == *beta)) return {false, "witness does not satisfy alpha = beta/conj(beta)"};
      if (!(Coset(*beta) == reference)) return {false, "witnesses disagree: " + describe(Coset(*beta), reference)};
    }
    return {};
  });
}

CheckOutcome check_wall_form(const Form& hp, const UnitaryElement& sigma, const std::vector<Vec>& shifts) {
  return guarded([&]() -> CheckOutcome {
    if (sigma.dimension() == 0) return {};
    auto pre = wall_preimages(sigma);
    if (shifts.size() != pre.size()) return {false, "wrong number of shifts"};
    for (std::size_t j = 0; j < pre.size(); ++j) {
      if (!(sigma.matrix() * shifts[j] == shifts[j])) return {false, "shift is not fixed by sigma"};
      for (std::size_t k = 0; k < pre[j].size(); ++k) pre[j][k] += shifts[j][k];
    }
    if (wall_form(sigma, hp) == wall_form(sigma, hp, pre)) return {};
    return {false, "f_sigma depends on the choice of preimage"};
  });
}

// ---------------------------------------------------------------------------
// Sampling helpers

Form random_hermitian(const FieldTower& t, std::size_t n, Rng& rng) {
  for (;;) {
    Mat g(t, Level::E, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      g(i, i) = t.embed(random_elt(t, Level::E0, rng), Level::E);
      for (std::size_t j = i + 1; j < n; ++j) {
        g(i, j) = random_elt(t, Level::E, rng);
        g(j, i) = t.involution(g(i, j));
      }
    }
    if (!det(g).is_zero()) return make_hermitian(std::move(g));
  }
}

Form random_symmetric(const FieldTower& t, Level level, std::size_t n, Rng& rng) {
  for (;;) {
    Mat g(t, level, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        g(i, j) = random_elt(t, level, rng);
        g(j, i) = g(i, j);
      }
    if (!det(g).is_zero()) return make_symmetric(std::move(g));
  }
}

std::vector<Vec> projective_points(const FieldTower& t, std::size_t n) {
  std::vector<Vec> out;
  const std::uint64_t q = t.order(Level::E);
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::uint64_t tail = 1;
    for (std::size_t k = lead + 1; k < n; ++k) tail *= q;
    for (std::uint64_t code = 0; code < tail; ++code) {
      Vec v(n, t.zero(Level::E));
      v[lead] = t.one(Level::E);
      std::uint64_t c = code;
      for (std::size_t k = lead + 1; k < n; ++k) {
        v[k] = t.from_index(Level::E, static_cast<std::uint32_t>(c % q));
        c /= q;
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suite

json to_json(const SuiteConfig& cfg) {
  json j = {{"p", cfg.p},       {"m0", cfg.m0},     {"c0_index", cfg.c0_index}, {"dims", cfg.dims},
            {"trials", cfg.trials}, {"seed", cfg.seed}, {"exhaustive", cfg.exhaustive}};
  if (!cfg.only.empty()) j["only"] = cfg.only;
  return j;
}

std::size_t Report::failure_count() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.failures.size();
  return n;
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

json Report::to_json(bool include_timing) const {
  json checks_json = json::array();
  for (const auto& c : checks)
    checks_json.push_back({{"name", c.name}, {"trials", c.trials}, {"failures", c.failures}});
  json j = {{"config", spinor::to_json(config)},
            {"checks", std::move(checks_json)},
            {"decomposed_count", decomposed_count},
            {"not_decomposed_count", not_decomposed_count},
            {"failure_count", failure_count()}};
  if (include_timing) j["timing"] = {{"elapsed_ms", elapsed_ms}};
  return j;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "proposition", "proposition_exhaustive", "theorem", "quadratic", "intermediate",
      "transfer",    "transfer_diagonal_exhaustive", "oracle_F", "oracle_E0", "cayley",
      "hom_sn_E",    "hom_orthogonal", "norm_induced", "hil", "wall_form"};
  return names;
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Rng trial_rng(std::uint64_t seed, std::string_view check, std::size_t dim, std::size_t trial) {
  const std::uint64_t h = fnv1a(check);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h),    static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(dim),  static_cast<std::uint32_t>(trial)};
  return Rng(seq);
}

constexpr std::size_t kMaxSuiteDim = 6;
constexpr std::size_t kMaxRestrictedDim = 24;
constexpr std::uint64_t kMaxExhaustiveCases = 200000;
constexpr std::size_t kMaxOrthogonalLength = 6;

void validate(const SuiteConfig& cfg) {
  if (cfg.dims.empty()) throw std::invalid_argument("at least one dimension is required");
  for (auto d : cfg.dims) {
    if (d < 1 || d > kMaxSuiteDim) throw std::invalid_argument("dimensions must lie in [1, 6]");
    if (2 * static_cast<std::size_t>(cfg.m0) * d > kMaxRestrictedDim)
      throw std::invalid_argument("2·m0·dim must not exceed 24");
  }
  if (cfg.trials < 1) throw std::invalid_argument("trials must be positive");
  for (const auto& name : cfg.only)
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
      throw std::invalid_argument("unknown check '" + name + "'");
}

class SuiteRun {
 public:
  SuiteRun(const SuiteConfig& cfg, const SuiteHooks& hooks, const FieldTower& tower)
      : cfg_(cfg), hooks_(hooks), t_(tower) {
    for (const auto& name : check_names()) results_[name].name = name;
  }

  bool enabled(const std::string& name) const {
    return cfg_.only.empty() || std::find(cfg_.only.begin(), cfg_.only.end(), name) != cfg_.only.end();
  }

  void record(const std::string& name, const CheckOutcome& out, json inputs, std::size_t dim, std::size_t trial) {
    auto& r = results_[name];
    ++r.trials;
    touched_.insert(name);
    if (out.pass) return;
    inputs["dim"] = dim;
    inputs["trial"] = trial;
    inputs["tower"] = tower_to_json(t_);
    inputs["detail"] = out.detail;
    r.failures.push_back(std::move(inputs));
  }

  std::size_t random_factor_count(std::size_t n, Rng& rng) const {
    return std::uniform_int_distribution<std::size_t>(0, 2 * n + 2)(rng);
  }

  void run_dim(std::size_t n) {
    const std::uint64_t seed = cfg_.seed;
    for (std::size_t trial = 0; trial < cfg_.trials; ++trial) {
      if (enabled("proposition")) {
        Rng rng = trial_rng(seed, "proposition", n, trial);
        const Form h = random_hermitian(t_, n, rng);
        const Form hp = make_anti_hermitian_from(h);
        const OneDimElement s = random_one_dim(hp, rng);
        const Elt tpar = t_.project(s.phi.inverse() - evaluate(hp, s.v, s.v) / t_.from_int(Level::E, 2), Level::E0);
        record("proposition", check_proposition(hp, s),
               {{"check", "proposition"}, {"h", to_json(h)}, {"v", to_json(s.v)}, {"t", to_json(tpar)}}, n, trial);
      }
      for (const char* name : {"theorem", "quadratic", "intermediate", "cayley"}) {
        if (!enabled(name)) continue;
        if (std::string(name) == "quadratic" && t_.m0() != 1) continue;
        Rng rng = trial_rng(seed, name, n, trial);
        const Form h = random_hermitian(t_, n, rng);
        const Form hp = make_anti_hermitian_from(h);
        const UnitaryElement sigma = random_unitary(hp, random_factor_count(n, rng), rng);
        CheckOutcome out;
        const std::string nm = name;
        if (nm == "theorem") out = check_theorem(h, sigma, hooks_);
        else if (nm == "quadratic") out = check_quadratic(h, sigma, hooks_);
        else if (nm == "intermediate") out = check_intermediate(h, sigma, hooks_);
        else {
          bool decomposed = false;
          out = check_cayley(hp, sigma, &decomposed);
          if (sigma.dimension() > 0) ++(decomposed ? decomposed_ : not_decomposed_);
        }
        record(nm, out, {{"check", nm}, {"h", to_json(h)}, {"sigma", to_json(sigma.matrix())}}, n, trial);
      }
      if (enabled("transfer")) {
        Rng rng = trial_rng(seed, "transfer", n, trial);
        const Form phi = random_symmetric(t_, Level::E0, n, rng);
        record("transfer", check_transfer(phi), {{"check", "transfer"}, {"phi", to_json(phi)}}, n, trial);
      }
      for (Level lv : {Level::F, Level::E0}) {
        const std::string nm = lv == Level::F ? "oracle_F" : "oracle_E0";
        if (!enabled(nm)) continue;
        Rng rng = trial_rng(seed, nm, n, trial);
        const Form h = random_hermitian(t_, n, rng);
        const Form b = lv == Level::F ? trace_form_F(h) : trace_form_E0(h);
        const std::size_t len = std::uniform_int_distribution<std::size_t>(0, kMaxOrthogonalLength)(rng);
        const OrthogonalElement tr = random_orthogonal(b, len, rng);
        record(nm, check_oracle(tr, hooks_), {{"check", "oracle"}, {"form", to_json(b)}, {"matrix", to_json(tr.matrix())}},
               n, trial);
      }
      if (enabled("hom_sn_E") || enabled("hom_orthogonal")) {
        for (const char* name : {"hom_sn_E", "hom_orthogonal"}) {
          if (!enabled(name)) continue;
          Rng rng = trial_rng(seed, name, n, trial);
          const Form h = random_hermitian(t_, n, rng);
          const Form hp = make_anti_hermitian_from(h);
          const UnitaryElement a = random_unitary(hp, random_factor_count(n, rng), rng);
          const UnitaryElement b = random_unitary(hp, random_factor_count(n, rng), rng);
          const std::string nm = name;
          const CheckOutcome out =
              nm == "hom_sn_E"
                  ? check_hom_sn_E(a, b)
                  : check_hom_orthogonal(scalar_restrict(a, h, Level::F), scalar_restrict(b, h, Level::F), hooks_);
          record(nm, out,
                 {{"check", nm}, {"h", to_json(h)}, {"sigma", to_json(a.matrix())}, {"tau", to_json(b.matrix())}}, n,
                 trial);
        }
      }
      if (enabled("norm_induced")) {
        Rng rng = trial_rng(seed, "norm_induced", n, trial);
        Elt beta = random_elt(t_, Level::E, rng);
        while (beta.is_zero()) beta = random_elt(t_, Level::E, rng);
        Elt tt = random_elt(t_, Level::E0, rng);
        while (tt.is_zero()) tt = random_elt(t_, Level::E0, rng);
        record("norm_induced", check_norm_induced(beta, tt),
               {{"check", "norm_induced"}, {"beta", to_json(beta)}, {"t", to_json(tt)}}, n, trial);
      }
      if (enabled("hil")) {
        Rng rng = trial_rng(seed, "hil", n, trial);
        Elt beta = random_elt(t_, Level::E, rng);
        while (beta.is_zero()) beta = random_elt(t_, Level::E, rng);
        const Elt alpha = beta / t_.involution(beta);
        record("hil", check_hil(alpha), {{"check", "hil"}, {"alpha", to_json(alpha)}}, n, trial);
      }
      if (enabled("wall_form")) {
        Rng rng = trial_rng(seed, "wall_form", n, trial);
        const Form h = random_hermitian(t_, n, rng);
        const Form hp = make_anti_hermitian_from(h);
        const UnitaryElement sigma = random_unitary(hp, random_factor_count(n, rng), rng);
        const Subspace fixed = kernel(Mat::identity(t_, Level::E, n) - sigma.matrix());
        std::vector<Vec> shifts;
        for (std::size_t j = 0; j < sigma.dimension(); ++j) {
          Vec coeffs = random_vector(t_, Level::E, fixed.dim(), rng);
          Vec shift(n, t_.zero(Level::E));
          for (std::size_t k = 0; k < fixed.dim(); ++k)
            for (std::size_t i = 0; i < n; ++i) shift[i] += coeffs[k] * fixed.basis()(i, k);
          shifts.push_back(std::move(shift));
        }
        json sj = json::array();
        for (const auto& s : shifts) sj.push_back(to_json(s));
        record("wall_form", check_wall_form(hp, sigma, shifts),
               {{"check", "wall_form"}, {"h", to_json(h)}, {"sigma", to_json(sigma.matrix())}, {"shifts", sj}}, n,
               trial);
      }
    }
    if (cfg_.exhaustive && enabled("proposition_exhaustive")) exhaustive_proposition(n);
  }

  // Every line of E^n and every valid t, for a small family of hermitian forms.
  void exhaustive_proposition(std::size_t n) {
    const std::uint64_t q = t_.order(Level::E);
    const std::uint64_t q0 = t_.order(Level::E0);
    std::uint64_t lines = 0, qn = 1;
    for (std::size_t k = 0; k < n; ++k) qn *= q;
    lines = (qn - 1) / (q - 1);
    std::vector<Form> family;
    if (n == 1) {
      for (std::uint32_t a = 1; a < q0; ++a) {
        Mat g(t_, Level::E, 1, 1);
        g(0, 0) = t_.embed(t_.from_index(Level::E0, a), Level::E);
        family.push_back(make_hermitian(std::move(g)));
      }
    } else {
      family.push_back(make_hermitian(Mat::identity(t_, Level::E, n)));
      Mat hyp = Mat::identity(t_, Level::E, n);
      hyp(0, 0) = hyp(1, 1) = t_.zero(Level::E);
      hyp(0, 1) = hyp(1, 0) = t_.one(Level::E);
      family.push_back(make_hermitian(std::move(hyp)));
    }
    if (lines * q0 * family.size() > kMaxExhaustiveCases) return;
    const auto points = projective_points(t_, n);
    std::size_t idx = 0;
    for (const Form& h : family) {
      const Form hp = make_anti_hermitian_from(h);
      for (const Vec& v : points) {
        const Elt half_hvv = evaluate(hp, v, v) / t_.from_int(Level::E, 2);
        for (std::uint32_t ti = 0; ti < q0; ++ti) {
          const Elt tt = t_.from_index(Level::E0, ti);
          if ((half_hvv + t_.embed(tt, Level::E)).is_zero()) continue;
          const OneDimElement s = one_dim(hp, v, tt);
          record("proposition_exhaustive", check_proposition(hp, s),
                 {{"check", "proposition"}, {"h", to_json(h)}, {"v", to_json(v)}, {"t", to_json(tt)}}, n, idx++);
        }
      }
    }
  }

  void exhaustive_transfer() {
    const auto q0 = static_cast<std::uint32_t>(t_.order(Level::E0));
    std::size_t idx = 0;
    for (std::uint32_t a = 1; a < q0; ++a) {
      Mat g(t_, Level::E0, 1, 1);
      g(0, 0) = t_.from_index(Level::E0, a);
      const Form phi = make_symmetric(std::move(g));
      record("transfer_diagonal_exhaustive", check_transfer(phi), {{"check", "transfer"}, {"phi", to_json(phi)}}, 1,
             idx++);
    }
    for (std::uint32_t a = 1; a < q0; ++a)
      for (std::uint32_t b = 1; b < q0; ++b) {
        Mat g(t_, Level::E0, 2, 2);
        g(0, 0) = t_.from_index(Level::E0, a);
        g(1, 1) = t_.from_index(Level::E0, b);
        const Form phi = make_symmetric(std::move(g));
        record("transfer_diagonal_exhaustive", check_transfer(phi), {{"check", "transfer"}, {"phi", to_json(phi)}}, 2,
               idx++);
      }
  }

  Report finish(double elapsed_ms) {
    Report rep;
    rep.config = cfg_;
    for (const auto& name : check_names())
      if (touched_.count(name)) rep.checks.push_back(std::move(results_[name]));
    rep.decomposed_count = decomposed_;
    rep.not_decomposed_count = not_decomposed_;
    rep.elapsed_ms = elapsed_ms;
    return rep;
  }

 private:
  const SuiteConfig& cfg_;
  const SuiteHooks& hooks_;
  const FieldTower& t_;
  std::map<std::string, CheckResult> results_;
  std::set<std::string> touched_;
  std::size_t decomposed_ = 0;
  std::size_t not_decomposed_ = 0;
};

}  // namespace

Report run_suite(const SuiteConfig& cfg, const SuiteHooks& hooks) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const auto tower = FieldTower::make(cfg.p, cfg.m0, cfg.c0_index);
  SuiteRun run(cfg, hooks, *tower);
  for (std::size_t n : cfg.dims) run.run_dim(n);
  if (cfg.exhaustive && run.enabled("transfer_diagonal_exhaustive")) run.exhaustive_transfer();
  const auto stop = std::chrono::steady_clock::now();
  return run.finish(std::chrono::duration<double, std::milli>(stop - start).count());
}

CheckOutcome replay(const json& record, const SuiteHooks& hooks) {
  return guarded([&]() -> CheckOutcome {
    const auto tower = tower_from_json(record.at("tower"));
    const FieldTower& t = *tower;
    const std::string check = record.at("check").get<std::string>();
    auto unitary_inputs = [&](const char* key) {
      const Form h = form_from_json(t, record.at("h"));
      const Form hp = make_anti_hermitian_from(h);
      return std::tuple{h, hp, UnitaryElement(mat_from_json(t, record.at(key)), hp)};
    };
    if (check == "proposition") {
      const Form h = form_from_json(t, record.at("h"));
      const Form hp = make_anti_hermitian_from(h);
      const Vec v = vec_from_json(t, Level::E, record.at("v"));
      return check_proposition(hp, one_dim(hp, v, elt_from_json(t, Level::E0, record.at("t"))));
    }
    if (check == "theorem" || check == "quadratic" || check == "intermediate" || check == "cayley") {
      const auto [h, hp, sigma] = unitary_inputs("sigma");
      if (check == "theorem") return check_theorem(h, sigma, hooks);
      if (check == "quadratic") return check_quadratic(h, sigma, hooks);
      if (check == "intermediate") return check_intermediate(h, sigma, hooks);
      return check_cayley(hp, sigma);
    }
    if (check == "transfer") return check_transfer(form_from_json(t, record.at("phi")));
    if (check == "oracle") {
      const Form b = form_from_json(t, record.at("form"));
      return check_oracle(OrthogonalElement(mat_from_json(t, record.at("matrix")), b), hooks);
    }
    if (check == "hom_sn_E" || check == "hom_orthogonal") {
      const auto [h, hp, a] = unitary_inputs("sigma");
      const UnitaryElement b(mat_from_json(t, record.at("tau")), hp);
      if (check == "hom_sn_E") return check_hom_sn_E(a, b);
      return check_hom_orthogonal(scalar_restrict(a, h, Level::F), scalar_restrict(b, h, Level::F), hooks);
    }
    if (check == "norm_induced")
      return check_norm_induced(elt_from_json(t, Level::E, record.at("beta")),
                                elt_from_json(t, Level::E0, record.at("t")));
    if (check == "hil") return check_hil(elt_from_json(t, Level::E, record.at("alpha")));
    if (check == "wall_form") {
      const auto [h, hp, sigma] = unitary_inputs("sigma");
      std::vector<Vec> shifts;
      for (const auto& s : record.at("shifts")) shifts.push_back(vec_from_json(t, Level::E, s));
      return check_wall_form(hp, sigma, shifts);
    }
    throw std::invalid_argument("unknown check '" + check + "'");
  });
}

}  // namespace spinor
