#pragma once

/// \file unitary.hpp
/// Elements of U(V, h') built from one-dimensional generators
///   s_(v,φ)(x) = x − φ·h'(v, x)·v,   φ^{-1} − conj(φ)^{-1} = h'(v, v),
/// their Cayley decomposition, and the unitary spinor norm sn_E with values
/// in E^×/E0^×.

#include <cstddef>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "spinor/forms.hpp"

namespace spinor {

using Rng = std::mt19937_64;

struct OneDimElement {
  Vec v;
  Elt phi;
  Mat matrix;
};

class UnitaryElement {
 public:
  /// Throws std::invalid_argument when matrix does not preserve hp.
  UnitaryElement(Mat matrix, const Form& hp);

  const Mat& matrix() const { return matrix_; }
  /// V_σ = im(1 − σ).
  const Subspace& moved() const { return moved_; }
  std::size_t dimension() const { return moved_.dim(); }

 private:
  Mat matrix_;
  Subspace moved_;
};

bool is_isometry(const Mat& m, const Form& f);

/// φ = (h'(v,v)/2 + t)^{-1}. Throws std::invalid_argument when v = 0 or the
/// pivot h'(v,v)/2 + t vanishes.
OneDimElement one_dim(const Form& hp, const Vec& v, const Elt& t);
/// one_dim(hp, v, 0); throws when v is h'-isotropic.
OneDimElement reflection(const Form& hp, const Vec& v);

Elt random_elt(const FieldTower& tower, Level level, Rng& rng);
Vec random_vector(const FieldTower& tower, Level level, std::size_t n, Rng& rng);
/// A random generator with uniformly drawn nonzero v and valid t.
OneDimElement random_one_dim(const Form& hp, Rng& rng);
UnitaryElement random_unitary(const Form& hp, std::size_t n_factors, Rng& rng);

/// Default preimages x_j with (1 − σ)x_j = w_j for the stored basis of V_σ.
std::vector<Vec> wall_preimages(const UnitaryElement& sigma);
/// Gram of f_σ(w_i, w_j) = h'(w_i, x_j) on the stored basis of V_σ. Throws
/// std::invalid_argument when r = 0 or a preimage is wrong.
Mat wall_form(const UnitaryElement& sigma, const Form& hp, const std::vector<Vec>& preimages);
Mat wall_form(const UnitaryElement& sigma, const Form& hp);

/// Every stored basis vector of the remaining V_σ was f_σ-isotropic at the
/// given peeling step.
struct NotDecomposedHere {
  std::size_t step = 0;
};

using CayleyResult = std::variant<std::vector<OneDimElement>, NotDecomposedHere>;

/// Peels one-dimensional factors off σ: with v the first stored basis
/// vector of V_σ with f_σ(v,v) ≠ 0, s = s_(v, f_σ(v,v)^{-1}) satisfies
/// dim V_{s^{-1}σ} = r − 1, and σ = s·(s^{-1}σ). Returns s_1…s_r whose
/// product is σ (verified, together with the determinant). Throws
/// std::invalid_argument when r = 0.
CayleyResult cayley_decompose(const UnitaryElement& sigma, const Form& hp);

using SnCayleyResult = std::variant<Coset, NotDecomposedHere>;
SnCayleyResult sn_cayley(const UnitaryElement& sigma, const Form& hp);

/// β = c + α·conj(c) for a given c; nullopt when β = 0.
std::optional<Elt> hilbert90_candidate(const Elt& alpha, const Elt& c);
/// Coset of β with α = β / conj(β), using the first c in enumeration order
/// giving β ≠ 0. Throws std::invalid_argument when Norm_{E/E0}(α) ≠ 1.
Coset hil(const Elt& alpha);
Coset sn_via_det(const UnitaryElement& sigma);

}  // namespace spinor
