#pragma once

/// \file exact_linalg.hpp
/// Dense exact linear algebra over one level of a FieldTower.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "spinor/field_tower.hpp"

namespace spinor {

using Vec = std::vector<Elt>;

class Mat {
 public:
  Mat(const FieldTower& tower, Level level, std::size_t rows, std::size_t cols);
  static Mat identity(const FieldTower& tower, Level level, std::size_t n);
  /// Column matrix from a vector (vector must be nonempty).
  static Mat column(const Vec& v);
  /// Matrix with the given vectors as columns; all of length `rows`.
  static Mat from_columns(const FieldTower& tower, Level level, std::size_t rows, const std::vector<Vec>& cols);

  const FieldTower& tower() const { return *tower_; }
  Level level() const { return level_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Elt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Elt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec col(std::size_t c) const;
  Vec row(std::size_t r) const;

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat operator*(const Elt& s) const;
  Mat operator-() const;
  Vec operator*(const Vec& v) const;
  friend bool operator==(const Mat& a, const Mat& b);

  Mat transpose() const;
  /// Entrywise involution (level E only).
  Mat conj() const;
  Mat conj_transpose() const { return conj().transpose(); }
  Mat pow(std::size_t e) const;
  bool is_identity() const;

 private:
  void check_same_shape(const Mat& o, const char* what) const;

  const FieldTower* tower_;
  Level level_;
  std::size_t rows_, cols_;
  std::vector<Elt> data_;
};

/// A subspace of L^n given by a basis stored as the columns of an n×k
/// matrix. Bases are canonical (the columns are the rows of a reduced
/// echelon matrix), so equal subspaces compare equal.
class Subspace {
 public:
  /// Canonical basis of the span of the given columns.
  static Subspace span(const Mat& generators);
  static Subspace zero(const FieldTower& tower, Level level, std::size_t ambient);
  static Subspace full(const FieldTower& tower, Level level, std::size_t ambient);

  std::size_t ambient() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const Mat& basis() const { return basis_; }
  Vec vector(std::size_t j) const { return basis_.col(j); }
  bool contains(const Vec& v) const;
  /// Coordinates of v in the stored basis, or nullopt when v is outside.
  std::optional<Vec> coordinates(const Vec& v) const;
  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  explicit Subspace(Mat basis) : basis_(std::move(basis)) {}
  Mat basis_;
};

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);
Subspace kernel(const Mat& m);
Subspace image(const Mat& m);
/// Determinant; the 0×0 determinant is 1. Throws std::invalid_argument on
/// non-square input.
Elt det(const Mat& m);
std::optional<Vec> solve(const Mat& m, const Vec& b);
std::optional<Mat> inverse(const Mat& m);

/// Fitting decomposition at eigenvalue -1: (ker (1+σ)^n, im (1+σ)^n) with n
/// the ambient dimension.
std::pair<Subspace, Subspace> fitting_minus_one(const Mat& sigma);

/// Matrix of op on an op-invariant subspace w, in w's stored basis. Throws
/// std::invalid_argument when w is not invariant.
Mat restrict(const Mat& op, const Subspace& w);

}  // namespace spinor
