#pragma once

/// \file orthogonal.hpp
/// Unitary elements viewed as isometries of the scalar-restricted forms
/// (V, h0) over E0 and (V, b_h) over F, and the orthogonal spinor norm.

#include <cstddef>
#include <vector>

#include "spinor/unitary.hpp"

namespace spinor {

class OrthogonalElement {
 public:
  /// Throws std::invalid_argument unless form is a non-degenerate symmetric
  /// form over F or E0 and matrix preserves it.
  OrthogonalElement(Mat matrix, Form form);

  const Mat& matrix() const { return matrix_; }
  const Form& form() const { return form_; }

 private:
  Mat matrix_;
  Form form_;
};

/// σ as an isometry of h0 (target E0) or b_h (target F), where h is the
/// hermitian form h' = δh was built from.
OrthogonalElement scalar_restrict(const UnitaryElement& sigma, const Form& h, Level target);

/// Spinor norm by the determinant/discriminant formula:
///   −1 ↦ disc(b), otherwise
///   t ↦ disc(b|U) · det((1+t)/2 |W),  (U, W) = fitting_minus_one(t).
SquareClass sn_zassenhaus(const OrthogonalElement& t);

/// τ_u(x) = x − 2 b(u,x)/b(u,u) · u. Throws when u is isotropic.
Mat reflection_matrix(const Form& b, const Vec& u);

/// Cartan–Dieudonné factorization t = τ_{u_1}···τ_{u_k}, returned as the
/// vectors u_i. `order` permutes the standard basis before it is
/// orthogonalized, which changes the factorization; empty means the natural
/// order.
std::vector<Vec> reflection_factors(const OrthogonalElement& t, const std::vector<std::size_t>& order = {});

/// Product of the square classes of b(u_i, u_i) over a reflection
/// factorization; independent of the Fitting decomposition.
SquareClass sn_reflection_oracle(const OrthogonalElement& t, const std::vector<std::size_t>& order = {});

/// A product of `length` random reflections of b.
OrthogonalElement random_orthogonal(const Form& b, std::size_t length, Rng& rng);

}  // namespace spinor
