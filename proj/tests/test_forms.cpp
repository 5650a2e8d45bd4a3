#include <gtest/gtest.h>

#include "oracle.hpp"
#include "spinor/harness.hpp"

using namespace spinor;

namespace {

Mat scalar_gram(const FieldTower& t, const Elt& a) {
  Mat g(t, Level::E, 1, 1);
  g(0, 0) = a;
  return g;
}

// μ(x) = tr_{E/F}(c0 x), summed over the Frobenius orbit.
Elt mu_by_orbit(const FieldTower& t, const Elt& x) {
  const Elt y = x * t.embed(t.c0(), Level::E);
  Elt s = t.zero(Level::E);
  for (int k = 0; k < 2 * t.m0(); ++k) s += oracle::frobenius(y, k);
  return t.project(s, Level::F);
}

Elt hermitian_value(const Mat& g, const Vec& x, const Vec& y) {
  const FieldTower& t = g.tower();
  Elt s = t.zero(Level::E);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += oracle::frobenius(x[i], t.m0()) * g(i, j) * y[j];
  return s;
}

Vec unit(const FieldTower& t, Level lv, std::size_t n, std::size_t i) {
  Vec v(n, t.zero(lv));
  v[i] = t.one(lv);
  return v;
}

bool disc_by_squares(const Mat& g) {
  const Elt d = oracle::leibniz_det(g);
  return oracle::is_square(d);
}

}  // namespace

TEST(Forms, HermitianValidation) {
  const auto t = FieldTower::make(3, 1);
  const Form h = make_hermitian(Mat::identity(*t, Level::E, 1));
  const Form hp = make_anti_hermitian_from(h);
  EXPECT_EQ(hp.kind(), FormKind::anti_hermitian);
  EXPECT_EQ(hp.gram()(0, 0), t->delta());
  Mat hyp(*t, Level::E, 2, 2);
  hyp(0, 1) = hyp(1, 0) = t->one(Level::E);
  EXPECT_NO_THROW(make_hermitian(hyp));
  EXPECT_THROW(make_hermitian(scalar_gram(*t, t->delta())), std::invalid_argument);
  EXPECT_THROW(make_hermitian(Mat(*t, Level::E, 2, 2)), std::invalid_argument);
  EXPECT_THROW(make_symmetric(Mat::identity(*t, Level::E, 2)), std::invalid_argument);
}

TEST(Forms, Evaluate) {
  const auto t = FieldTower::make(5, 1);
  const Elt a = t->from_int(Level::E, 3);
  const Form h = make_hermitian(scalar_gram(*t, a));
  EXPECT_EQ(evaluate(h, unit(*t, Level::E, 1, 0), unit(*t, Level::E, 1, 0)), a);
  Mat hyp(*t, Level::E, 2, 2);
  hyp(0, 1) = hyp(1, 0) = t->one(Level::E);
  const Form hh = make_hermitian(hyp);
  EXPECT_TRUE(evaluate(hh, unit(*t, Level::E, 2, 0), unit(*t, Level::E, 2, 1)).is_one());
  const Form hp = make_anti_hermitian_from(hh);
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    const Vec v = random_vector(*t, Level::E, 2, rng), w = random_vector(*t, Level::E, 2, rng);
    const Elt val = evaluate(hp, v, v);
    EXPECT_EQ(t->involution(val), -val);
    EXPECT_EQ(evaluate(hh, w, v), t->involution(evaluate(hh, v, w)));
    EXPECT_EQ(evaluate(hh, v, w), hermitian_value(hyp, v, w));
  }
}

TEST(Forms, TraceFormE0SpotValues) {
  const auto t = FieldTower::make(3, 1);
  const Form h0 = trace_form_E0(make_hermitian(Mat::identity(*t, Level::E, 1)));
  EXPECT_EQ(h0.level(), Level::E0);
  Mat expect(*t, Level::E0, 2, 2);
  expect(0, 0) = expect(1, 1) = t->from_int(Level::E0, 2);
  EXPECT_EQ(h0.gram(), expect);
  EXPECT_EQ(trace_form_E0(make_hermitian(Mat::identity(*t, Level::E, 2))).dim(), 4u);
}

TEST(Forms, QuadraticCaseGram) {
  const auto t = FieldTower::make(3, 1);
  const Elt d = t->delta();
  for (int a_int : {1, 2}) {
    const Elt a = t->from_int(Level::E, a_int);
    const Form h = make_hermitian(scalar_gram(*t, a));
    const Form bh = trace_form_F(h);
    EXPECT_EQ(oracle::key(bh.gram()), oracle::key(trace_form_E0(h).gram()));
    Mat expect(*t, Level::F, 2, 2);
    expect(0, 0) = t->project(a * t->from_int(Level::E, 2), Level::F);
    expect(1, 1) = t->project(-(a * t->from_int(Level::E, 2) * d * d), Level::F);
    EXPECT_EQ(bh.gram(), expect);
    EXPECT_EQ(disc(bh), SquareClass(t->norm_E_F(a * d)));
  }
  const Form bh = trace_form_F(make_hermitian(Mat::identity(*t, Level::E, 1)));
  EXPECT_TRUE(disc(bh).is_square());
}

TEST(Forms, NormOfADeltaGivesDiscriminantForAllOneDimForms) {
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    const auto t = FieldTower::make(p, 1);
    for (std::uint32_t ai = 1; ai < p; ++ai) {
      const Elt a = t->from_index(Level::E, ai);
      const Form bh = trace_form_F(make_hermitian(scalar_gram(*t, a)));
      EXPECT_EQ(disc(bh).is_square(), oracle::is_square(t->norm_E_F(a * t->delta()))) << p << " a=" << ai;
    }
  }
}

TEST(Forms, TraceFormFMatchesDirectEvaluation) {
  for (auto [p, m0, c0] : std::vector<std::tuple<std::uint32_t, int, std::uint32_t>>{{3, 1, 0}, {3, 1, 1}, {5, 1, 2},
                                                                                      {3, 2, 0}, {3, 2, 4}, {5, 2, 7}}) {
    const auto t = FieldTower::make(p, m0, c0);
    Rng rng(p * 100 + m0 * 10 + c0);
    for (std::size_t n = 1; n <= 2; ++n) {
      const Form h = random_hermitian(*t, n, rng);
      const Form bh = trace_form_F(h);
      const std::size_t N = 2 * m0 * n;
      ASSERT_EQ(bh.dim(), N);
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
          const Vec x = extend_vector(*t, unit(*t, Level::F, N, a), Level::F);
          const Vec y = extend_vector(*t, unit(*t, Level::F, N, b), Level::F);
          ASSERT_EQ(bh.gram()(a, b), mu_by_orbit(*t, hermitian_value(h.gram(), x, y)));
        }
      EXPECT_EQ(bh.gram(), transfer_to_F(trace_form_E0(h)).gram());
      EXPECT_EQ(bh.gram(), bh.gram().transpose());
      EXPECT_FALSE(bh.degenerate());
    }
  }
}

TEST(Forms, RestrictAndDiscriminant) {
  const auto t = FieldTower::make(5, 1);
  const Mat id = Mat::identity(*t, Level::F, 3);
  EXPECT_TRUE(disc(make_symmetric(id)).is_square());
  Mat hyp(*t, Level::F, 2, 2);
  hyp(0, 1) = hyp(1, 0) = t->one(Level::F);
  const Form b = make_symmetric(hyp);
  const Form line = restrict_form(b, Subspace::span(Mat::column(unit(*t, Level::F, 2, 0))));
  EXPECT_TRUE(line.degenerate());
  EXPECT_THROW(disc(line), std::domain_error);
  const Form empty = restrict_form(b, Subspace::zero(*t, Level::F, 2));
  EXPECT_EQ(empty.dim(), 0u);
  EXPECT_TRUE(disc(empty).is_square());
  const Form full = restrict_form(b, Subspace::full(*t, Level::F, 2));
  EXPECT_EQ(disc(full), disc(b));
  EXPECT_EQ(disc(b).is_square(), disc_by_squares(hyp));
}

TEST(Forms, DiscCosetOfAntiHermitian) {
  const auto t = FieldTower::make(3, 1);
  const Form hp = make_anti_hermitian_from(make_hermitian(Mat::identity(*t, Level::E, 1)));
  EXPECT_EQ(disc_coset(hp), Coset(t->delta()));
  EXPECT_FALSE(disc_coset(hp).is_trivial());
}

TEST(Forms, ZetaSpotValues) {
  EXPECT_TRUE(zeta(*FieldTower::make(3, 1)).is_square());
  const auto t5 = FieldTower::make(5, 1, 1);
  EXPECT_EQ(t5->c0(), t5->from_int(Level::E0, 2));
  EXPECT_FALSE(zeta(*t5).is_square());
}

TEST(Forms, ZetaByBruteForce) {
  for (std::uint32_t p : {3u, 5u, 7u})
    for (std::uint32_t c0 = 0; c0 + 1 < p * p; c0 += 3) {
      const auto t = FieldTower::make(p, 2, c0);
      // Gram of (x, y) ↦ tr_{E0/F}(c0 x y) on the basis 1, y.
      Mat g(*t, Level::F, 2, 2);
      const Elt basis[2] = {t->one(Level::E0), t->from_index(Level::E0, p)};
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const Elt z = t->c0() * basis[k] * basis[l];
          g(k, l) = t->project(t->embed(z + oracle::frobenius(z, 1), Level::E), Level::F);
        }
      EXPECT_EQ(zeta(*t).is_square(), disc_by_squares(g)) << p << " c0_index " << c0;
    }
}

TEST(Forms, RestrictionRoundTrip) {
  const auto t = FieldTower::make(5, 2);
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const Vec v = random_vector(*t, Level::E, 3, rng);
    EXPECT_EQ(extend_vector(*t, restrict_vector(v, Level::E0), Level::E0), v);
    EXPECT_EQ(extend_vector(*t, restrict_vector(v, Level::F), Level::F), v);
    const Elt s = random_elt(*t, Level::E, rng);
    Mat m(*t, Level::E, 3, 3);
    for (std::size_t i = 0; i < 3; ++i) m(i, (i + 1) % 3) = s;
    Vec mv = m * v;
    EXPECT_EQ(restrict_matrix(m, Level::F) * restrict_vector(v, Level::F), restrict_vector(mv, Level::F));
    EXPECT_EQ(restrict_matrix(m, Level::E0) * restrict_vector(v, Level::E0), restrict_vector(mv, Level::E0));
  }
}
