#include "spinor/orthogonal.hpp"

#include <numeric>
#include <stdexcept>

namespace spinor {

OrthogonalElement::OrthogonalElement(Mat matrix, Form form) : matrix_(std::move(matrix)), form_(std::move(form)) {
  if (form_.level() == Level::E || form_.kind() != FormKind::symmetric)
    throw std::invalid_argument("OrthogonalElement: form must be symmetric over F or E0");
  if (form_.degenerate()) throw std::invalid_argument("OrthogonalElement: form is degenerate");
  if (!is_isometry(matrix_, form_)) throw std::invalid_argument("OrthogonalElement: not an isometry of the form");
}

OrthogonalElement scalar_restrict(const UnitaryElement& sigma, const Form& h, Level target) {
  if (target == Level::E) throw std::invalid_argument("scalar_restrict: target must be E0 or F");
  Form b = target == Level::E0 ? trace_form_E0(h) : trace_form_F(h);
  return OrthogonalElement(restrict_matrix(sigma.matrix(), target), std::move(b));
}

SquareClass sn_zassenhaus(const OrthogonalElement& t) {
  const Mat& m = t.matrix();
  const FieldTower& tw = m.tower();
  const std::size_t n = m.rows();
  const Mat id = Mat::identity(tw, m.level(), n);
  if (m == -id) return disc(t.form());
  const auto [u, w] = fitting_minus_one(m);
  const Form bu = restrict_form(t.form(), u);
  if (bu.degenerate()) throw std::logic_error("sn_zassenhaus: form degenerate on the -1 Fitting part");
  const Elt half = tw.from_int(m.level(), 2).inverse();
  const Elt d = det(restrict((id + m) * half, w));
  return disc(bu) * SquareClass(d);
}

Mat reflection_matrix(const Form& b, const Vec& u) {
  const Elt buu = evaluate(b, u, u);
  if (buu.is_zero()) throw std::invalid_argument("reflection_matrix: isotropic vector");
  const FieldTower& t = b.tower();
  const std::size_t n = b.dim();
  const Vec bu = b.gram() * u;  // x ↦ b(u, x) = bu · x
  const Elt scale = t.from_int(b.level(), 2) / buu;
  Mat r = Mat::identity(t, b.level(), n);
  for (std::size_t i = 0; i < n; ++i) {
    const Elt su = scale * u[i];
    for (std::size_t j = 0; j < n; ++j) r(i, j) -= su * bu[j];
  }
  return r;
}

namespace {

std::vector<Vec> orthogonal_basis(const Form& b, const std::vector<std::size_t>& order) {
  const FieldTower& t = b.tower();
  const std::size_t n = b.dim();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (!order.empty()) {
    if (order.size() != n) throw std::invalid_argument("reflection_factors: order has the wrong length");
    perm = order;
  }
  std::vector<Vec> work;
  for (std::size_t k : perm) {
    Vec e(n, t.zero(b.level()));
    e.at(k) = t.one(b.level());
    work.push_back(std::move(e));
  }
  std::vector<Vec> out;
  while (!work.empty()) {
    std::size_t pick = work.size();
    for (std::size_t i = 0; i < work.size(); ++i)
      if (!evaluate(b, work[i], work[i]).is_zero()) {
        pick = i;
        break;
      }
    if (pick == work.size()) {
      // Totally isotropic diagonal: some off-diagonal pair gives b(w_i + w_j) = 2 b(w_i, w_j) ≠ 0.
      for (std::size_t i = 0; i < work.size() && pick == work.size(); ++i)
        for (std::size_t j = i + 1; j < work.size(); ++j)
          if (!evaluate(b, work[i], work[j]).is_zero()) {
            for (std::size_t k = 0; k < n; ++k) work[i][k] += work[j][k];
            pick = i;
            break;
          }
      if (pick == work.size()) throw std::logic_error("orthogonal_basis: degenerate form");
    }
    Vec u = work[pick];
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(pick));
    const Elt buu_inv = evaluate(b, u, u).inverse();
    for (auto& w : work) {
      const Elt c = evaluate(b, u, w) * buu_inv;
      for (std::size_t k = 0; k < n; ++k) w[k] -= c * u[k];
    }
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace

std::vector<Vec> reflection_factors(const OrthogonalElement& t, const std::vector<std::size_t>& order) {
  const Form& b = t.form();
  Mat g = t.matrix();
  std::vector<Vec> factors;
  for (const Vec& e : orthogonal_basis(b, order)) {
    const Vec y = g * e;
    if (y == e) continue;
    Vec d = e;
    for (std::size_t k = 0; k < d.size(); ++k) d[k] -= y[k];
    if (!evaluate(b, d, d).is_zero()) {
      g = reflection_matrix(b, d) * g;
      factors.push_back(std::move(d));
    } else {
      // b(e − y) = 0 forces b(e + y) = 4 b(e, e) ≠ 0; τ_e τ_{e+y} sends y to e.
      Vec s = e;
      for (std::size_t k = 0; k < s.size(); ++k) s[k] += y[k];
      g = reflection_matrix(b, e) * reflection_matrix(b, s) * g;
      factors.push_back(std::move(s));
      factors.push_back(e);
    }
  }
  if (!g.is_identity()) throw std::logic_error("reflection_factors: factorization did not terminate at 1");
  return factors;
}

SquareClass sn_reflection_oracle(const OrthogonalElement& t, const std::vector<std::size_t>& order) {
  const Form& b = t.form();
  SquareClass acc = SquareClass::trivial(b.tower(), b.level());
  for (const Vec& u : reflection_factors(t, order)) acc = acc * SquareClass(evaluate(b, u, u));
  return acc;
}

OrthogonalElement random_orthogonal(const Form& b, std::size_t length, Rng& rng) {
  Mat m = Mat::identity(b.tower(), b.level(), b.dim());
  for (std::size_t k = 0; k < length;) {
    Vec u = random_vector(b.tower(), b.level(), b.dim(), rng);
    if (evaluate(b, u, u).is_zero()) continue;
    m = m * reflection_matrix(b, u);
    ++k;
  }
  return OrthogonalElement(std::move(m), b);
}

}  // namespace spinor
