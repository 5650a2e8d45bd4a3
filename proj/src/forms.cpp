#include "spinor/forms.hpp"

#include <stdexcept>
#include <string>

namespace spinor {

std::string_view to_string(FormKind kind) {
  switch (kind) {
    case FormKind::hermitian: return "hermitian";
    case FormKind::anti_hermitian: return "anti_hermitian";
    case FormKind::symmetric: return "symmetric";
    case FormKind::sesquilinear: return "sesquilinear";
  }
  return "?";
}

FormKind form_kind_from_string(std::string_view name) {
  if (name == "hermitian") return FormKind::hermitian;
  if (name == "anti_hermitian") return FormKind::anti_hermitian;
  if (name == "symmetric") return FormKind::symmetric;
  if (name == "sesquilinear") return FormKind::sesquilinear;
  throw std::invalid_argument("unknown form kind '" + std::string(name) + "'");
}

Form make_form_unchecked(FormKind kind, Mat gram) {
  if (!gram.is_square()) throw std::invalid_argument("Gram matrix must be square");
  const bool degenerate = det(gram).is_zero();
  return Form(kind, std::move(gram), degenerate);
}

Form make_hermitian(Mat gram) {
  if (gram.level() != Level::E) throw std::invalid_argument("hermitian Gram must be over E");
  if (!gram.is_square()) throw std::invalid_argument("Gram matrix must be square");
  if (!(gram.conj_transpose() == gram)) throw std::invalid_argument("Gram matrix is not hermitian");
  Form f = make_form_unchecked(FormKind::hermitian, std::move(gram));
  if (f.degenerate()) throw std::invalid_argument("hermitian form is degenerate");
  return f;
}

Form make_anti_hermitian_from(const Form& h) {
  if (h.kind() != FormKind::hermitian) throw std::invalid_argument("expected a hermitian form");
  return make_form_unchecked(FormKind::anti_hermitian, h.gram() * h.tower().delta());
}

Form make_symmetric(Mat gram) {
  if (gram.level() == Level::E) throw std::invalid_argument("symmetric Gram must be over F or E0");
  if (!gram.is_square()) throw std::invalid_argument("Gram matrix must be square");
  if (!(gram.transpose() == gram)) throw std::invalid_argument("Gram matrix is not symmetric");
  Form f = make_form_unchecked(FormKind::symmetric, std::move(gram));
  if (f.degenerate()) throw std::invalid_argument("symmetric form is degenerate");
  return f;
}

Elt evaluate(const Form& f, const Vec& x, const Vec& y) {
  const std::size_t n = f.dim();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("evaluate: dimension mismatch");
  const FieldTower& t = f.tower();
  const Vec gy = f.gram() * y;
  Elt acc = t.zero(f.level());
  for (std::size_t i = 0; i < n; ++i) acc += (f.level() == Level::E ? t.involution(x[i]) : x[i]) * gy[i];
  return acc;
}

Form trace_form_E0(const Form& h) {
  if (h.kind() != FormKind::hermitian) throw std::invalid_argument("trace_form_E0: expected a hermitian form");
  const FieldTower& t = h.tower();
  const std::size_t n = h.dim();
  const Elt one = t.one(Level::E);
  const Elt d = t.delta();
  const Elt dpow[2] = {one, d};
  const Elt dconj[2] = {one, -d};
  Mat g(t, Level::E0, 2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) g(2 * i + a, 2 * j + b) = t.trace_E_E0(dconj[a] * dpow[b] * h.gram()(i, j));
  Form f = make_form_unchecked(FormKind::symmetric, std::move(g));
  if (f.degenerate()) throw std::logic_error("trace_form_E0 produced a degenerate form");
  return f;
}

Form trace_form_F(const Form& h) {
  if (h.kind() != FormKind::hermitian) throw std::invalid_argument("trace_form_F: expected a hermitian form");
  const FieldTower& t = h.tower();
  const std::size_t n = h.dim();
  const std::size_t m0 = static_cast<std::size_t>(t.m0());
  // F-basis vectors of E: θ^k δ^a at position a·m0 + k.
  std::vector<Elt> basis;
  for (int a = 0; a < 2; ++a) {
    Elt th = t.one(Level::E);
    for (std::size_t k = 0; k < m0; ++k) {
      basis.push_back(a == 0 ? th : th * t.delta());
      th *= t.theta();
    }
  }
  const std::size_t w = 2 * m0;
  Mat g(t, Level::F, w * n, w * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t u = 0; u < w; ++u)
        for (std::size_t v = 0; v < w; ++v)
          g(w * i + u, w * j + v) = t.mu(t.involution(basis[u]) * basis[v] * h.gram()(i, j));
  Form f = make_form_unchecked(FormKind::symmetric, std::move(g));
  if (f.degenerate()) throw std::logic_error("trace_form_F produced a degenerate form");
  return f;
}

namespace {

std::vector<Elt> e0_power_basis(const FieldTower& t) {
  std::vector<Elt> out;
  std::uint32_t idx = 1;
  for (int k = 0; k < t.m0(); ++k) {
    out.push_back(t.from_index(Level::E0, idx));
    idx *= t.p();
  }
  return out;
}

}  // namespace

Form transfer_to_F(const Form& phi) {
  if (phi.level() != Level::E0) throw std::invalid_argument("transfer_to_F: expected a form over E0");
  const FieldTower& t = phi.tower();
  const auto pb = e0_power_basis(t);
  const std::size_t m0 = pb.size();
  const std::size_t n = phi.dim();
  Mat g(t, Level::F, n * m0, n * m0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m0; ++k)
        for (std::size_t l = 0; l < m0; ++l) g(i * m0 + k, j * m0 + l) = t.mu0(pb[k] * pb[l] * phi.gram()(i, j));
  return make_form_unchecked(phi.kind(), std::move(g));
}

Form restrict_form(const Form& f, const Subspace& s) {
  if (s.ambient() != f.dim()) throw std::invalid_argument("restrict_form: dimension mismatch");
  const Mat& b = s.basis();
  const Mat left = f.level() == Level::E ? b.conj_transpose() : b.transpose();
  return make_form_unchecked(f.kind(), left * f.gram() * b);
}

SquareClass disc(const Form& f) {
  if (f.level() == Level::E) throw std::invalid_argument("disc: use disc_coset for forms over E");
  if (f.dim() == 0) return SquareClass::trivial(f.tower(), f.level());
  const Elt d = det(f.gram());
  if (d.is_zero()) throw std::domain_error("disc of a degenerate form");
  return SquareClass(d);
}

Coset disc_coset(const Form& f) {
  if (f.level() != Level::E) throw std::invalid_argument("disc_coset: expected a form over E");
  if (f.dim() == 0) return Coset::trivial(f.tower());
  const Elt d = det(f.gram());
  if (d.is_zero()) throw std::domain_error("disc_coset of a degenerate form");
  return Coset(d);
}

SquareClass zeta(const FieldTower& t) {
  const auto pb = e0_power_basis(t);
  Mat g(t, Level::F, pb.size(), pb.size());
  for (std::size_t k = 0; k < pb.size(); ++k)
    for (std::size_t l = 0; l < pb.size(); ++l) g(k, l) = t.mu0(pb[k] * pb[l]);
  return SquareClass(det(g));
}

Vec restrict_vector(const Vec& v, Level target) {
  if (v.empty()) return {};
  const FieldTower& t = v.front().tower();
  const Level source = v.front().level();
  if (static_cast<int>(target) >= static_cast<int>(source))
    throw std::invalid_argument("restrict_vector: target must be a proper subfield");
  if (source == Level::E) {
    const Elt inv2 = t.from_int(Level::E, 2).inverse();
    const Elt inv2d = (t.from_int(Level::E, 2) * t.delta()).inverse();
    Vec out;
    out.reserve(2 * v.size());
    for (const Elt& z : v) {
      const Elt zc = t.involution(z);
      out.push_back(t.project((z + zc) * inv2, Level::E0));
      out.push_back(t.project((z - zc) * inv2d, Level::E0));
    }
    return target == Level::E0 ? out : restrict_vector(out, Level::F);
  }
  // E0 → F
  Vec out;
  out.reserve(v.size() * static_cast<std::size_t>(t.m0()));
  for (const Elt& z : v)
    for (auto c : z.coeffs()) out.push_back(t.from_int(Level::F, c));
  return out;
}

Mat restrict_matrix(const Mat& m, Level target) {
  if (!m.is_square()) throw std::invalid_argument("restrict_matrix: expected a square matrix");
  const FieldTower& t = m.tower();
  const Level source = m.level();
  if (static_cast<int>(target) >= static_cast<int>(source))
    throw std::invalid_argument("restrict_matrix: target must be a proper subfield");
  if (source == Level::E && target == Level::F) return restrict_matrix(restrict_matrix(m, Level::E0), Level::F);
  const std::size_t n = m.rows();
  // Scalars spanning the source over the target.
  std::vector<Elt> scalars;
  if (source == Level::E) {
    scalars = {t.one(Level::E), t.delta()};
  } else {
    std::uint32_t idx = 1;
    for (int k = 0; k < t.m0(); ++k) {
      scalars.push_back(t.from_index(Level::E0, idx));
      idx *= t.p();
    }
  }
  const std::size_t w = scalars.size();
  Mat r(t, target, n * w, n * w);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec colj = m.col(j);
    for (std::size_t b = 0; b < w; ++b) {
      Vec scaled = colj;
      for (auto& e : scaled) e *= scalars[b];
      const Vec rc = restrict_vector(scaled, target);
      for (std::size_t i = 0; i < rc.size(); ++i) r(i, j * w + b) = rc[i];
    }
  }
  return r;
}

Vec extend_vector(const FieldTower& t, const Vec& coords, Level source) {
  if (source == Level::F) {
    const std::size_t m0 = static_cast<std::size_t>(t.m0());
    if (coords.size() % m0 != 0) throw std::invalid_argument("extend_vector: length not a multiple of m0");
    Vec e0;
    std::vector<std::int64_t> cs(m0);
    for (std::size_t i = 0; i < coords.size(); i += m0) {
      for (std::size_t k = 0; k < m0; ++k) cs[k] = coords[i + k].coeffs()[0];
      e0.push_back(t.from_coeffs(Level::E0, cs));
    }
    return extend_vector(t, e0, Level::E0);
  }
  if (source != Level::E0) throw std::invalid_argument("extend_vector: source must be F or E0");
  if (coords.size() % 2 != 0) throw std::invalid_argument("extend_vector: odd number of E0 coordinates");
  Vec out;
  for (std::size_t i = 0; i < coords.size(); i += 2)
    out.push_back(t.embed(coords[i], Level::E) + t.embed(coords[i + 1], Level::E) * t.delta());
  return out;
}

}  // namespace spinor
