#include "spinor/unitary.hpp"

#include <stdexcept>
#include <string>

namespace spinor {

bool is_isometry(const Mat& m, const Form& f) {
  if (!m.is_square() || m.rows() != f.dim() || m.level() != f.level() || &m.tower() != &f.tower())
    return false;
  const Mat left = f.level() == Level::E ? m.conj_transpose() : m.transpose();
  return left * f.gram() * m == f.gram();
}

UnitaryElement::UnitaryElement(Mat matrix, const Form& hp)
    : matrix_(std::move(matrix)), moved_(Subspace::zero(hp.tower(), Level::E, 0)) {
  if (hp.level() != Level::E) throw std::invalid_argument("UnitaryElement: form must be over E");
  if (!is_isometry(matrix_, hp)) throw std::invalid_argument("UnitaryElement: not an isometry of h'");
  moved_ = image(Mat::identity(hp.tower(), Level::E, matrix_.rows()) - matrix_);
}

namespace {

// x ↦ x − φ·h'(v, x)·v.
Mat generator_matrix(const Form& hp, const Vec& v, const Elt& phi) {
  const FieldTower& t = hp.tower();
  const std::size_t n = hp.dim();
  Vec row(n, t.zero(Level::E));
  for (std::size_t i = 0; i < n; ++i) {
    const Elt cv = t.involution(v[i]);
    for (std::size_t j = 0; j < n; ++j) row[j] += cv * hp.gram()(i, j);
  }
  Mat m = Mat::identity(t, Level::E, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Elt pv = phi * v[i];
    for (std::size_t j = 0; j < n; ++j) m(i, j) -= pv * row[j];
  }
  return m;
}

bool is_zero_vector(const Vec& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

OneDimElement make_generator(const Form& hp, const Vec& v, const Elt& phi) {
  const FieldTower& t = hp.tower();
  const Elt lhs = phi.inverse() - t.involution(phi).inverse();
  if (!(lhs == evaluate(hp, v, v))) throw std::logic_error("generator constraint violated");
  return {v, phi, generator_matrix(hp, v, phi)};
}

}  // namespace

OneDimElement one_dim(const Form& hp, const Vec& v, const Elt& t) {
  if (hp.kind() != FormKind::anti_hermitian) throw std::invalid_argument("one_dim: expected the anti-hermitian form");
  if (v.size() != hp.dim()) throw std::invalid_argument("one_dim: dimension mismatch");
  if (is_zero_vector(v)) throw std::invalid_argument("one_dim: v = 0");
  const FieldTower& tw = hp.tower();
  const Elt te = tw.embed(t, Level::E);
  if (!tw.lies_in(te, Level::E0)) throw std::invalid_argument("one_dim: t must lie in E0");
  const Elt hvv = evaluate(hp, v, v);
  const Elt pivot = hvv / tw.from_int(Level::E, 2) + te;
  if (pivot.is_zero()) throw std::invalid_argument("one_dim: zero pivot h'(v,v)/2 + t");
  const Elt phi = pivot.inverse();
  return {v, phi, generator_matrix(hp, v, phi)};
}

OneDimElement reflection(const Form& hp, const Vec& v) {
  if (v.size() != hp.dim()) throw std::invalid_argument("reflection: dimension mismatch");
  if (evaluate(hp, v, v).is_zero()) throw std::invalid_argument("reflection: v is isotropic");
  return one_dim(hp, v, hp.tower().zero(Level::E0));
}

Elt random_elt(const FieldTower& tower, Level level, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, static_cast<std::uint32_t>(tower.order(level) - 1));
  return tower.from_index(level, dist(rng));
}

Vec random_vector(const FieldTower& tower, Level level, std::size_t n, Rng& rng) {
  Vec v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_elt(tower, level, rng));
  return v;
}

OneDimElement random_one_dim(const Form& hp, Rng& rng) {
  const FieldTower& t = hp.tower();
  for (;;) {
    Vec v = random_vector(t, Level::E, hp.dim(), rng);
    if (is_zero_vector(v)) continue;
    const Elt te = random_elt(t, Level::E0, rng);
    const Elt pivot = evaluate(hp, v, v) / t.from_int(Level::E, 2) + t.embed(te, Level::E);
    if (pivot.is_zero()) continue;
    return one_dim(hp, v, te);
  }
}

UnitaryElement random_unitary(const Form& hp, std::size_t n_factors, Rng& rng) {
  Mat m = Mat::identity(hp.tower(), Level::E, hp.dim());
  for (std::size_t k = 0; k < n_factors; ++k) m = m * random_one_dim(hp, rng).matrix;
  return UnitaryElement(std::move(m), hp);
}

std::vector<Vec> wall_preimages(const UnitaryElement& sigma) {
  const Mat& m = sigma.matrix();
  const Mat one_minus = Mat::identity(m.tower(), Level::E, m.rows()) - m;
  std::vector<Vec> out;
  for (std::size_t j = 0; j < sigma.dimension(); ++j) {
    auto x = solve(one_minus, sigma.moved().vector(j));
    if (!x) throw std::logic_error("wall_preimages: basis vector of V_sigma has no preimage");
    out.push_back(std::move(*x));
  }
  return out;
}

Mat wall_form(const UnitaryElement& sigma, const Form& hp, const std::vector<Vec>& preimages) {
  const std::size_t r = sigma.dimension();
  if (r == 0) throw std::invalid_argument("wall_form: sigma is the identity");
  if (preimages.size() != r) throw std::invalid_argument("wall_form: wrong number of preimages");
  const Mat& m = sigma.matrix();
  const Mat one_minus = Mat::identity(m.tower(), Level::E, m.rows()) - m;
  Mat g(hp.tower(), Level::E, r, r);
  for (std::size_t j = 0; j < r; ++j) {
    if (!(one_minus * preimages[j] == sigma.moved().vector(j)))
      throw std::invalid_argument("wall_form: preimage does not map to the basis vector");
    for (std::size_t i = 0; i < r; ++i) g(i, j) = evaluate(hp, sigma.moved().vector(i), preimages[j]);
  }
  return g;
}

Mat wall_form(const UnitaryElement& sigma, const Form& hp) { return wall_form(sigma, hp, wall_preimages(sigma)); }

CayleyResult cayley_decompose(const UnitaryElement& sigma, const Form& hp) {
  const std::size_t r = sigma.dimension();
  if (r == 0) throw std::invalid_argument("cayley_decompose: sigma is the identity");
  std::vector<OneDimElement> factors;
  UnitaryElement rest = sigma;
  for (std::size_t step = 0; step < r; ++step) {
    const Mat f = wall_form(rest, hp);
    std::size_t pick = f.rows();
    for (std::size_t i = 0; i < f.rows(); ++i)
      if (!f(i, i).is_zero()) {
        pick = i;
        break;
      }
    if (pick == f.rows()) return NotDecomposedHere{step};
    OneDimElement s = make_generator(hp, rest.moved().vector(pick), f(pick, pick).inverse());
    const auto s_inv = inverse(s.matrix);
    UnitaryElement next(*s_inv * rest.matrix(), hp);
    if (next.dimension() + 1 != rest.dimension()) throw std::logic_error("cayley_decompose: dimension did not drop");
    factors.push_back(std::move(s));
    rest = std::move(next);
  }
  Mat product = Mat::identity(hp.tower(), Level::E, hp.dim());
  for (const auto& s : factors) product = product * s.matrix;
  if (!(product == sigma.matrix())) throw std::logic_error("cayley_decompose: product does not reproduce sigma");
  if (!(det(product) == det(sigma.matrix()))) throw std::logic_error("cayley_decompose: determinant mismatch");
  return factors;
}

SnCayleyResult sn_cayley(const UnitaryElement& sigma, const Form& hp) {
  if (sigma.dimension() == 0) return Coset::trivial(hp.tower());
  auto dec = cayley_decompose(sigma, hp);
  if (auto* nd = std::get_if<NotDecomposedHere>(&dec)) return *nd;
  Elt prod = hp.tower().one(Level::E);
  for (const auto& s : std::get<std::vector<OneDimElement>>(dec)) prod *= s.phi;
  return Coset(prod);
}

std::optional<Elt> hilbert90_candidate(const Elt& alpha, const Elt& c) {
  const Elt beta = c + alpha * alpha.tower().involution(c);
  if (beta.is_zero()) return std::nullopt;
  return beta;
}

Coset hil(const Elt& alpha) {
  const FieldTower& t = alpha.tower();
  if (alpha.level() != Level::E) throw std::invalid_argument("hil: alpha must lie in E");
  if (alpha.is_zero() || !t.norm_E_E0(alpha).is_one()) throw std::invalid_argument("hil: Norm_{E/E0}(alpha) != 1");
  const auto q = static_cast<std::uint32_t>(t.order(Level::E));
  for (std::uint32_t idx = 1; idx < q; ++idx)
    if (auto beta = hilbert90_candidate(alpha, t.from_index(Level::E, idx))) return Coset(*beta);
  throw std::logic_error("hil: no Hilbert 90 witness found");
}

Coset sn_via_det(const UnitaryElement& sigma) { return hil(det(sigma.matrix())); }

}  // namespace spinor
