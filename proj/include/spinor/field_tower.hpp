#pragma once

/// \file field_tower.hpp
/// The tower F = F_p ⊆ E0 = F_{p^m0} ⊆ E = F_{p^{2 m0}} with the Frobenius
/// involution x ↦ x^(p^m0) on E, the traces and norms between levels, the
/// linear form μ0 and the two value groups F^×/(F^×)^2 and E^×/E0^×.
///
/// Every level is a polynomial quotient F_p[x]/(m(x)) with m the smallest
/// monic irreducible of its degree. Elements of E0 are carried in E0's own
/// polynomial basis and cross into E only through `FieldTower::embed`.

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spinor {

enum class Level : std::uint8_t { F, E0, E };

std::string_view to_string(Level level);
Level level_from_string(std::string_view name);

/// Largest extension degree any level can have (3^12 is the largest odd
/// prime power of even exponent under the size cap).
inline constexpr int kMaxDegree = 12;
/// Cap on |E| = p^(2 m0).
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

class FieldTower;

/// A field element at one level of a tower. The tower must outlive it.
class Elt {
 public:
  using Coeff = std::uint16_t;

  Elt() = default;

  const FieldTower& tower() const { return *tower_; }
  const FieldTower* tower_ptr() const { return tower_; }
  Level level() const { return level_; }
  int degree() const;
  std::span<const Coeff> coeffs() const { return {c_.data(), static_cast<std::size_t>(degree())}; }

  bool is_zero() const;
  bool is_one() const;
  /// Position in enumeration order: sum of c_k p^k.
  std::uint32_t index() const;

  Elt operator-() const;
  Elt& operator+=(const Elt& o);
  Elt& operator-=(const Elt& o);
  Elt& operator*=(const Elt& o);
  Elt& operator/=(const Elt& o);
  friend Elt operator+(Elt a, const Elt& b) { return a += b; }
  friend Elt operator-(Elt a, const Elt& b) { return a -= b; }
  friend Elt operator*(Elt a, const Elt& b) { return a *= b; }
  friend Elt operator/(Elt a, const Elt& b) { return a /= b; }
  friend bool operator==(const Elt& a, const Elt& b);

  /// Throws std::domain_error on zero.
  Elt inverse() const;
  Elt pow(std::uint64_t e) const;

  std::string to_string() const;

 private:
  friend class FieldTower;
  Elt(const FieldTower* tower, Level level) : tower_(tower), level_(level) {}

  const FieldTower* tower_ = nullptr;
  Level level_ = Level::F;
  std::array<Coeff, kMaxDegree> c_{};
};

class FieldTower {
 public:
  /// Builds the tower for an odd prime p and E0 of degree m0 over F_p.
  /// μ0(x) = tr_{E0/F}(c0 x) where c0 is the (c0_index)-th nonzero element
  /// of E0 in enumeration order. Throws std::invalid_argument when p is not
  /// an odd prime, m0 < 1, p^(2 m0) exceeds kMaxFieldOrder, or c0_index is
  /// out of range.
  static std::shared_ptr<const FieldTower> make(std::uint32_t p, int m0, std::uint32_t c0_index = 0);

  FieldTower(const FieldTower&) = delete;
  FieldTower& operator=(const FieldTower&) = delete;

  std::uint32_t p() const { return p_; }
  int m0() const { return m0_; }
  std::uint32_t c0_index() const { return c0_index_; }
  int degree(Level level) const;
  std::uint64_t order(Level level) const;
  /// Monic modulus of a level, lowest coefficient first, leading 1 included.
  const std::vector<std::uint32_t>& modulus(Level level) const;

  Elt zero(Level level) const;
  Elt one(Level level) const;
  Elt from_int(Level level, std::int64_t value) const;
  /// Throws std::invalid_argument unless coeffs has exactly degree(level)
  /// entries, each in [0, p).
  Elt from_coeffs(Level level, std::span<const std::int64_t> coeffs) const;
  Elt from_index(Level level, std::uint32_t index) const;

  /// The chosen root of modulus(E0) inside E; embed maps y^k to theta^k.
  const Elt& theta() const { return theta_; }
  /// First nonzero element of E with conj(delta) = -delta.
  const Elt& delta() const { return delta_; }
  /// The twist c0 in E0 with μ0(x) = tr_{E0/F}(c0 x).
  const Elt& c0() const { return c0_; }
  /// First non-square of a level (F or E0) in enumeration order.
  const Elt& nonsquare(Level level = Level::F) const;

  /// Upward embedding F → E0 → E. Throws on a downward request.
  Elt embed(const Elt& x, Level target) const;
  bool lies_in(const Elt& x, Level target) const;
  /// Inverse of embed; throws std::domain_error when x is not in the subfield.
  Elt project(const Elt& x, Level target) const;

  Elt involution(const Elt& x) const;
  Elt trace_E_E0(const Elt& x) const;
  Elt norm_E_E0(const Elt& x) const;
  Elt norm_E_F(const Elt& x) const;
  Elt trace_E0_F(const Elt& x) const;
  Elt norm_E0_F(const Elt& x) const;
  Elt mu0(const Elt& x) const;
  Elt mu(const Elt& x) const;

  // Arithmetic kernel used by Elt.
  void add(Level level, const Elt::Coeff* a, const Elt::Coeff* b, Elt::Coeff* out) const;
  void sub(Level level, const Elt::Coeff* a, const Elt::Coeff* b, Elt::Coeff* out) const;
  void mul(Level level, const Elt::Coeff* a, const Elt::Coeff* b, Elt::Coeff* out) const;
  std::uint32_t inv_mod_p(std::uint32_t a) const { return inv_table_[a]; }

 private:
  FieldTower() = default;
  void require_level(const Elt& x, Level level, const char* what) const;

  std::uint32_t p_ = 0;
  int m0_ = 0;
  std::uint32_t c0_index_ = 0;
  std::array<std::vector<std::uint32_t>, 3> modulus_;
  std::vector<std::uint32_t> inv_table_;
  // conj_[k] = coefficients of involution(x^k) in E.
  std::vector<std::array<Elt::Coeff, kMaxDegree>> conj_;
  std::vector<Elt> theta_powers_;
  // Left inverse of the embedding E0 → E on the chosen pivot rows.
  std::vector<std::size_t> proj_rows_;
  std::vector<std::vector<std::uint32_t>> proj_inv_;
  Elt theta_, delta_, c0_, nonsquare_f_, nonsquare_e0_;
};

/// A class in L^×/(L^×)^2 for L = F or E0.
class SquareClass {
 public:
  /// Throws std::domain_error when x is zero and std::invalid_argument when
  /// x lives in E.
  explicit SquareClass(const Elt& x);
  static SquareClass trivial(const FieldTower& tower, Level level = Level::F);

  const Elt& representative() const { return rep_; }
  bool is_square() const { return is_square_; }
  Level level() const { return rep_.level(); }

  SquareClass operator*(const SquareClass& o) const;
  SquareClass pow(std::uint64_t e) const;
  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.level() == b.level() && a.is_square_ == b.is_square_;
  }

  std::string to_string() const;

 private:
  Elt rep_;
  bool is_square_ = true;
};

/// Euler criterion.
SquareClass square_class(const Elt& x);

/// A class β·E0^× in E^×/E0^×.
class Coset {
 public:
  explicit Coset(const Elt& beta);
  static Coset trivial(const FieldTower& tower);

  const Elt& representative() const { return rep_; }
  bool is_trivial() const;
  Coset operator*(const Coset& o) const;
  Coset inverse() const;
  /// The smallest-index element of β·E0^×.
  Elt canonical() const;
  friend bool operator==(const Coset& a, const Coset& b);

 private:
  Elt rep_;
};

/// E^×/E0^× → F^×/(F^×)^2 induced by Norm_{E/F}.
SquareClass norm_induced(const Coset& c);

}  // namespace spinor
