#include "spinor/exact_linalg.hpp"

#include <stdexcept>
#include <string>

namespace spinor {

namespace {

void require_dims(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

Mat::Mat(const FieldTower& tower, Level level, std::size_t rows, std::size_t cols)
    : tower_(&tower), level_(level), rows_(rows), cols_(cols), data_(rows * cols, tower.zero(level)) {}

Mat Mat::identity(const FieldTower& tower, Level level, std::size_t n) {
  Mat m(tower, level, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = tower.one(level);
  return m;
}

Mat Mat::column(const Vec& v) {
  if (v.empty()) throw std::invalid_argument("Mat::column: empty vector");
  Mat m(v.front().tower(), v.front().level(), v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Mat Mat::from_columns(const FieldTower& tower, Level level, std::size_t rows, const std::vector<Vec>& cols) {
  Mat m(tower, level, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require_dims(cols[j].size() == rows, "Mat::from_columns");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vec Mat::col(std::size_t c) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, c));
  return v;
}

Vec Mat::row(std::size_t r) const { return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

void Mat::check_same_shape(const Mat& o, const char* what) const {
  require_dims(rows_ == o.rows_ && cols_ == o.cols_, what);
  if (tower_ != o.tower_ || level_ != o.level_) throw std::invalid_argument(std::string(what) + ": level mismatch");
}

Mat Mat::operator+(const Mat& o) const {
  check_same_shape(o, "Mat::operator+");
  Mat r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  check_same_shape(o, "Mat::operator-");
  Mat r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

Mat Mat::operator-() const {
  Mat r = *this;
  for (auto& e : r.data_) e = -e;
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  require_dims(cols_ == o.rows_, "Mat::operator*");
  if (tower_ != o.tower_ || level_ != o.level_) throw std::invalid_argument("Mat::operator*: level mismatch");
  Mat r(*tower_, level_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elt& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

Mat Mat::operator*(const Elt& s) const {
  Mat r = *this;
  for (auto& e : r.data_) e *= s;
  return r;
}

Vec Mat::operator*(const Vec& v) const {
  require_dims(v.size() == cols_, "Mat::operator*(Vec)");
  Vec r(rows_, tower_->zero(level_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) r[i] += (*this)(i, k) * v[k];
  return r;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.tower_ == b.tower_ && a.level_ == b.level_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.data_ == b.data_;
}

Mat Mat::transpose() const {
  Mat r(*tower_, level_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Mat Mat::conj() const {
  Mat r = *this;
  for (auto& e : r.data_) e = tower_->involution(e);
  return r;
}

Mat Mat::pow(std::size_t e) const {
  require_dims(is_square(), "Mat::pow");
  Mat result = identity(*tower_, level_, rows_);
  Mat base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool Mat::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Elt& e = (*this)(i, j);
      if (i == j ? !e.is_one() : !e.is_zero()) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------

RrefResult rref(const Mat& m) {
  Mat a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    const Elt s = a(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= s;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Elt f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

Subspace Subspace::span(const Mat& generators) {
  const RrefResult rr = rref(generators.transpose());
  const std::size_t k = rr.pivots.size();
  Mat basis(generators.tower(), generators.level(), generators.rows(), k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < generators.rows(); ++i) basis(i, j) = rr.reduced(j, i);
  return Subspace(std::move(basis));
}

Subspace Subspace::zero(const FieldTower& tower, Level level, std::size_t ambient) {
  return Subspace(Mat(tower, level, ambient, 0));
}

Subspace Subspace::full(const FieldTower& tower, Level level, std::size_t ambient) {
  return Subspace(Mat::identity(tower, level, ambient));
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  require_dims(v.size() == ambient(), "Subspace::coordinates");
  if (dim() == 0) {
    for (const auto& e : v)
      if (!e.is_zero()) return std::nullopt;
    return Vec{};
  }
  return solve(basis_, v);
}

bool Subspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

Subspace kernel(const Mat& m) {
  const RrefResult rr = rref(m);
  const FieldTower& t = m.tower();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  std::vector<Vec> gens;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols(), t.zero(m.level()));
    v[f] = t.one(m.level());
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.reduced(i, f);
    gens.push_back(std::move(v));
  }
  if (gens.empty()) return Subspace::zero(t, m.level(), m.cols());
  return Subspace::span(Mat::from_columns(t, m.level(), m.cols(), gens));
}

Subspace image(const Mat& m) {
  if (m.cols() == 0) return Subspace::zero(m.tower(), m.level(), m.rows());
  return Subspace::span(m);
}

Elt det(const Mat& m) {
  require_dims(m.is_square(), "det");
  const FieldTower& t = m.tower();
  Mat a = m;
  Elt result = t.one(m.level());
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) return t.zero(m.level());
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      result = -result;
    }
    result *= a(c, c);
    const Elt inv = a(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const Elt f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return result;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  require_dims(b.size() == m.rows(), "solve");
  const FieldTower& t = m.tower();
  Mat aug(t, m.level(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const RrefResult rr = rref(aug);
  if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), t.zero(m.level()));
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) x[rr.pivots[i]] = rr.reduced(i, m.cols());
  return x;
}

std::optional<Mat> inverse(const Mat& m) {
  require_dims(m.is_square(), "inverse");
  const std::size_t n = m.rows();
  const FieldTower& t = m.tower();
  Mat aug(t, m.level(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = t.one(m.level());
  }
  const RrefResult rr = rref(aug);
  if (rr.pivots.size() < n || rr.pivots[n - 1] != n - 1) return std::nullopt;
  Mat inv(t, m.level(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.reduced(i, n + j);
  return inv;
}

std::pair<Subspace, Subspace> fitting_minus_one(const Mat& sigma) {
  require_dims(sigma.is_square(), "fitting_minus_one");
  const std::size_t n = sigma.rows();
  const Mat onep = Mat::identity(sigma.tower(), sigma.level(), n) + sigma;
  const Mat powered = onep.pow(n);
  return {kernel(powered), image(powered)};
}

Mat restrict(const Mat& op, const Subspace& w) {
  require_dims(op.is_square() && op.rows() == w.ambient(), "restrict");
  const std::size_t k = w.dim();
  Mat r(op.tower(), op.level(), k, k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto coords = w.coordinates(op * w.vector(j));
    if (!coords) throw std::invalid_argument("restrict: subspace is not invariant");
    for (std::size_t i = 0; i < k; ++i) r(i, j) = (*coords)[i];
  }
  return r;
}

}  // namespace spinor
