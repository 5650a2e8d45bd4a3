#pragma once

/// \file forms.hpp
/// Hermitian, anti-hermitian and symmetric bilinear forms as Gram matrices.
///
/// Sesquilinear forms are conjugate-linear in the first slot:
///   value(x, y) = conj(x)^t · G · y.
///
/// Scalar restriction uses a fixed basis. For V = E^n with standard basis
/// e_i, the E0-basis of V is (e_0, δe_0, e_1, δe_1, ...), i.e. E0-coordinate
/// 2i + j is the δ^j-part of the i-th E-coordinate. The F-basis expands
/// each E0-basis vector b_J by the power basis θ^k of E0, F-coordinate
/// J·m0 + k. Restricting E → F is therefore E → E0 followed by E0 → F.

#include <cstddef>
#include <string_view>

#include "spinor/exact_linalg.hpp"

namespace spinor {

enum class FormKind { hermitian, anti_hermitian, symmetric, sesquilinear };

std::string_view to_string(FormKind kind);
FormKind form_kind_from_string(std::string_view name);

class Form {
 public:
  const FieldTower& tower() const { return gram_.tower(); }
  FormKind kind() const { return kind_; }
  Level level() const { return gram_.level(); }
  const Mat& gram() const { return gram_; }
  std::size_t dim() const { return gram_.rows(); }
  bool degenerate() const { return degenerate_; }

 private:
  friend Form make_form_unchecked(FormKind kind, Mat gram);
  Form(FormKind kind, Mat gram, bool degenerate)
      : kind_(kind), gram_(std::move(gram)), degenerate_(degenerate) {}

  FormKind kind_;
  Mat gram_;
  bool degenerate_;
};

/// Wraps a Gram matrix, recording whether it is degenerate but not checking
/// symmetry. Used for restrictions and for f_σ.
Form make_form_unchecked(FormKind kind, Mat gram);

/// Throws std::invalid_argument unless gram is a non-degenerate hermitian
/// matrix over E.
Form make_hermitian(Mat gram);
/// h' = δ·h.
Form make_anti_hermitian_from(const Form& h);
/// Throws std::invalid_argument unless gram is a non-degenerate symmetric
/// matrix over F or E0.
Form make_symmetric(Mat gram);

Elt evaluate(const Form& f, const Vec& x, const Vec& y);

/// h0(x, y) = tr_{E/E0}(h(x, y)) on V as a 2n-dimensional E0-space.
Form trace_form_E0(const Form& h);
/// b_h(x, y) = μ(h(x, y)) on V as a 2·m0·n-dimensional F-space, built
/// directly from μ on the F-basis vectors.
Form trace_form_F(const Form& h);
/// μ0∘φ for a symmetric E0-form φ, as an F-form on the restricted space.
Form transfer_to_F(const Form& phi);

/// Gram of f on the stored basis of s. Degenerate results are flagged.
Form restrict_form(const Form& f, const Subspace& s);

/// Gram determinant in F^×/(F^×)^2 or E0^×/(E0^×)^2; the 0-dimensional form
/// has trivial discriminant. Throws std::domain_error on degenerate forms.
SquareClass disc(const Form& f);
/// Gram determinant in E^×/E0^× for forms over E.
Coset disc_coset(const Form& f);

/// ζ = disc of (x, y) ↦ μ0(xy) on E0 over F.
SquareClass zeta(const FieldTower& tower);

// Scalar restriction of vectors and matrices in the basis described above.
Vec restrict_vector(const Vec& v, Level target);
Mat restrict_matrix(const Mat& m, Level target);
/// Inverse of restrict_vector: rebuild an E-vector from its E0 or F
/// coordinates.
Vec extend_vector(const FieldTower& tower, const Vec& coords, Level source);

}  // namespace spinor
