#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "spinor/harness.hpp"

using namespace spinor;

namespace {

SuiteConfig small_config(std::uint32_t p, int m0, std::uint32_t c0 = 0) {
  SuiteConfig cfg;
  cfg.p = p;
  cfg.m0 = m0;
  cfg.c0_index = c0;
  cfg.dims = {1, 2};
  cfg.trials = 60;
  cfg.seed = 17;
  return cfg;
}

// Wrong by a nonsquare whenever the −1 Fitting part is nonzero.
SuiteHooks flipped_hooks() {
  SuiteHooks hooks;
  hooks.orthogonal_norm = [](const OrthogonalElement& t) {
    const SquareClass s = sn_zassenhaus(t);
    const auto [u, w] = fitting_minus_one(t.matrix());
    if (u.dim() == 0) return s;
    return s * SquareClass(t.form().tower().nonsquare(t.form().level()));
  };
  return hooks;
}

// Forgets the discriminant factor.
SuiteHooks dropped_disc_hooks() {
  SuiteHooks hooks;
  hooks.orthogonal_norm = [](const OrthogonalElement& t) {
    const auto [u, w] = fitting_minus_one(t.matrix());
    const FieldTower& tw = t.form().tower();
    const Mat half = (Mat::identity(tw, t.matrix().level(), t.matrix().rows()) + t.matrix()) *
                     tw.from_int(t.matrix().level(), 2).inverse();
    return SquareClass(det(restrict(half, w)));
  };
  return hooks;
}

}  // namespace

TEST(Suite, PassesOnSeveralTowers) {
  for (auto [p, m0, c0] : std::vector<std::tuple<std::uint32_t, int, std::uint32_t>>{
           {3, 1, 0}, {3, 1, 1}, {5, 1, 2}, {3, 2, 0}, {3, 2, 5}}) {
    const Report rep = run_suite(small_config(p, m0, c0));
    EXPECT_EQ(rep.failure_count(), 0u) << rep.to_json(false).dump(1);
    EXPECT_GT(rep.decomposed_count, 0u);
    for (const auto& c : rep.checks) EXPECT_GT(c.trials, 0u) << c.name;
    EXPECT_EQ(rep.find("quadratic") != nullptr, m0 == 1);
  }
}

TEST(Suite, ReportIsDeterministic) {
  SuiteConfig cfg = small_config(3, 2);
  cfg.trials = 30;
  const std::string a = run_suite(cfg).to_json(false).dump();
  const std::string b = run_suite(cfg).to_json(false).dump();
  EXPECT_EQ(a, b);
  cfg.seed = 18;
  EXPECT_NE(run_suite(cfg).to_json(false).dump(), a);
  const json full = run_suite(cfg).to_json();
  EXPECT_TRUE(full.contains("timing"));
  EXPECT_TRUE(full.contains("not_decomposed_count"));
}

TEST(Suite, OnlyRestrictsChecks) {
  SuiteConfig cfg = small_config(5, 1);
  cfg.only = {"theorem", "hil"};
  const Report rep = run_suite(cfg);
  ASSERT_EQ(rep.checks.size(), 2u);
  EXPECT_EQ(rep.checks[0].name, "theorem");
  EXPECT_EQ(rep.checks[0].trials, 2 * cfg.trials);
}

TEST(Suite, RejectsBadConfigs) {
  SuiteConfig cfg = small_config(3, 1);
  cfg.dims = {};
  EXPECT_THROW(run_suite(cfg), std::invalid_argument);
  cfg.dims = {0};
  EXPECT_THROW(run_suite(cfg), std::invalid_argument);
  cfg.dims = {7};
  EXPECT_THROW(run_suite(cfg), std::invalid_argument);
  cfg = small_config(3, 1);
  cfg.trials = 0;
  EXPECT_THROW(run_suite(cfg), std::invalid_argument);
  cfg = small_config(3, 1);
  cfg.only = {"nonsense"};
  EXPECT_THROW(run_suite(cfg), std::invalid_argument);
  cfg = small_config(2, 1);
  EXPECT_THROW(run_suite(cfg), std::invalid_argument);
}

TEST(Mutation, FlippedNormIsCaughtAndReplayed) {
  for (const SuiteHooks& hooks : {flipped_hooks(), dropped_disc_hooks()}) {
    SuiteConfig cfg = small_config(5, 1);
    cfg.exhaustive = false;
    const Report rep = run_suite(cfg, hooks);
    EXPECT_GT(rep.failure_count(), 0u);
    std::size_t replayed = 0;
    for (const auto& c : rep.checks)
      for (const json& rec : c.failures) {
        EXPECT_FALSE(replay(rec, hooks).pass) << rec.dump();
        if (++replayed > 20) break;
      }
    EXPECT_GT(replayed, 0u);
    const CheckResult* theorem = rep.find("theorem");
    ASSERT_NE(theorem, nullptr);
    ASSERT_FALSE(theorem->failures.empty());
    EXPECT_TRUE(replay(theorem->failures.front()).pass);
  }
}

TEST(Replay, RejectsUnknownRecords) {
  const json bad = {{"check", "nope"}, {"tower", {{"p", 3}, {"m0", 1}}}};
  EXPECT_FALSE(replay(bad).pass);
}

TEST(Checks, SpotValues) {
  const auto t = FieldTower::make(3, 1);
  const Form h = make_hermitian(Mat::identity(*t, Level::E, 1));
  const Form hp = make_anti_hermitian_from(h);
  const UnitaryElement minus(-Mat::identity(*t, Level::E, 1), hp);
  EXPECT_TRUE(check_theorem(h, minus).pass);
  EXPECT_TRUE(check_quadratic(h, minus).pass);
  EXPECT_TRUE(norm_induced(sn_via_det(minus)).is_square());
  EXPECT_TRUE(sn_zassenhaus(scalar_restrict(minus, h, Level::F)).is_square());
  const auto t2 = FieldTower::make(3, 2);
  const Form h2 = make_hermitian(Mat::identity(*t2, Level::E, 1));
  const UnitaryElement id2(Mat::identity(*t2, Level::E, 1), make_anti_hermitian_from(h2));
  EXPECT_THROW(check_quadratic(h2, id2), std::invalid_argument);
  EXPECT_TRUE(check_intermediate(h2, id2).pass);
}

TEST(Checks, PropositionCaseSplit) {
  const auto t = FieldTower::make(3, 1);
  Mat hyp(*t, Level::E, 2, 2);
  hyp(0, 1) = hyp(1, 0) = t->one(Level::E);
  const Form hp = make_anti_hermitian_from(make_hermitian(hyp));
  const Vec iso{t->one(Level::E), t->zero(Level::E)};
  EXPECT_TRUE(check_proposition(hp, one_dim(hp, iso, t->one(Level::E0))).pass);
  const Vec an{t->one(Level::E), t->one(Level::E)};
  EXPECT_TRUE(check_proposition(hp, reflection(hp, an)).pass);
  EXPECT_TRUE(check_proposition(hp, one_dim(hp, an, t->one(Level::E0))).pass);
  OneDimElement bogus = reflection(hp, an);
  bogus.phi = t->one(Level::E);
  EXPECT_FALSE(check_proposition(hp, bogus).pass);
}

TEST(Checks, TransferSpotValues) {
  const auto t = FieldTower::make(3, 1);
  for (int a : {1, 2}) {
    Mat g(*t, Level::E0, 1, 1);
    g(0, 0) = t->from_int(Level::E0, a);
    const Form phi = make_symmetric(g);
    EXPECT_EQ(disc(transfer_to_F(phi)).is_square(), disc(phi).is_square());
    EXPECT_TRUE(check_transfer(phi).pass);
  }
  const auto t2 = FieldTower::make(5, 2, 3);
  Rng rng(1);
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_TRUE(check_transfer(random_symmetric(*t2, Level::E0, n, rng)).pass);
}

TEST(Checks, HilAndNormInduced) {
  const auto t = FieldTower::make(5, 2);
  EXPECT_TRUE(check_hil(t->from_int(Level::E, -1), 30).pass);
  Rng rng(2);
  for (int k = 0; k < 30; ++k) {
    Elt beta = random_elt(*t, Level::E, rng);
    if (beta.is_zero()) continue;
    EXPECT_TRUE(check_norm_induced(beta, t->nonsquare(Level::E0)).pass);
    EXPECT_TRUE(check_hil(beta / t->involution(beta)).pass);
  }
  EXPECT_FALSE(check_hil(t->delta() + t->one(Level::E)).pass);
}

TEST(ProjectivePoints, OneRepresentativePerLine) {
  const auto t = FieldTower::make(3, 1);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto pts = projective_points(*t, n);
    std::uint64_t qn = 1;
    for (std::size_t k = 0; k < n; ++k) qn *= 9;
    EXPECT_EQ(pts.size(), (qn - 1) / 8);
    std::set<Subspace, bool (*)(const Subspace&, const Subspace&)> lines(
        [](const Subspace& a, const Subspace& b) { return oracle::key(a.basis()) < oracle::key(b.basis()); });
    for (const Vec& v : pts) lines.insert(Subspace::span(Mat::column(v)));
    EXPECT_EQ(lines.size(), pts.size());
  }
}

TEST(RandomForms, AreNonDegenerateAndDeterministic) {
  const auto t = FieldTower::make(7, 1);
  Rng a(5), b(5);
  for (std::size_t n = 1; n <= 4; ++n) {
    const Form h1 = random_hermitian(*t, n, a), h2 = random_hermitian(*t, n, b);
    EXPECT_EQ(h1.gram(), h2.gram());
    EXPECT_EQ(h1.gram().conj_transpose(), h1.gram());
    const Form s = random_symmetric(*t, Level::F, n, a);
    EXPECT_FALSE(det(s.gram()).is_zero());
    random_symmetric(*t, Level::F, n, b);
  }
}
