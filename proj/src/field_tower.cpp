#include "spinor/field_tower.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace spinor {

namespace {

using Poly = std::vector<std::uint32_t>;  // lowest coefficient first

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of f modulo a monic g.
Poly poly_rem(Poly f, const Poly& g, std::uint32_t p) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t i = f.size(); i-- > dg;) {
    const std::uint32_t c = f[i] % p;
    if (c == 0) continue;
    for (std::size_t k = 0; k <= dg; ++k)
      f[i - dg + k] = static_cast<std::uint32_t>((f[i - dg + k] + std::uint64_t{p - c} * g[k]) % p);
  }
  f.resize(std::min(f.size(), dg));
  return f;
}

// Monic polynomial of degree d whose lower coefficients are the base-p
// digits of index, least significant first.
Poly monic_from_index(std::uint64_t index, int d, std::uint32_t p) {
  Poly f(d + 1, 0);
  for (int k = 0; k < d; ++k) {
    f[k] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  f[d] = 1;
  return f;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d <= 1) return true;
  if (f[0] == 0) return false;
  for (int k = 1; 2 * k <= d; ++k) {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const Poly g = monic_from_index(idx, k, p);
      const Poly r = poly_rem(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; })) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(int d, std::uint32_t p) {
  for (std::uint64_t idx = 0;; ++idx) {
    Poly f = monic_from_index(idx, d, p);
    if (is_irreducible(f, p)) return f;
  }
}

// Inverse of a square matrix over F_p (Gauss-Jordan); the matrix is known
// to be invertible.
std::vector<std::vector<std::uint32_t>> invert_mod_p(std::vector<std::vector<std::uint32_t>> a, std::uint32_t p) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::uint32_t>> inv(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const std::uint32_t s = pow_mod(a[col][col], p - 2, p);
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = static_cast<std::uint32_t>(std::uint64_t{a[col][j]} * s % p);
      inv[col][j] = static_cast<std::uint32_t>(std::uint64_t{inv[col][j]} * s % p);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const std::uint64_t f = p - a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = static_cast<std::uint32_t>((a[r][j] + f * a[col][j]) % p);
        inv[r][j] = static_cast<std::uint32_t>((inv[r][j] + f * inv[col][j]) % p);
      }
    }
  }
  return inv;
}

std::size_t level_slot(Level level) { return static_cast<std::size_t>(level); }

}  // namespace

std::string_view to_string(Level level) {
  switch (level) {
    case Level::F: return "F";
    case Level::E0: return "E0";
    case Level::E: return "E";
  }
  return "?";
}

Level level_from_string(std::string_view name) {
  if (name == "F") return Level::F;
  if (name == "E0") return Level::E0;
  if (name == "E") return Level::E;
  throw std::invalid_argument("unknown level '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Elt

int Elt::degree() const { return tower_ ? tower_->degree(level_) : 1; }

bool Elt::is_zero() const {
  for (auto c : coeffs())
    if (c != 0) return false;
  return true;
}

bool Elt::is_one() const {
  const auto cs = coeffs();
  if (cs[0] != 1) return false;
  return std::all_of(cs.begin() + 1, cs.end(), [](Coeff c) { return c == 0; });
}

std::uint32_t Elt::index() const {
  std::uint32_t idx = 0;
  const auto cs = coeffs();
  for (std::size_t k = cs.size(); k-- > 0;) idx = idx * tower_->p() + cs[k];
  return idx;
}

static void check_compatible(const Elt& a, const Elt& b) {
  if (a.tower_ptr() == nullptr || a.tower_ptr() != b.tower_ptr())
    throw std::invalid_argument("elements from different towers");
  if (a.level() != b.level())
    throw std::invalid_argument("level mismatch: " + std::string(to_string(a.level())) + " vs " +
                                std::string(to_string(b.level())));
}

Elt Elt::operator-() const {
  Elt r(tower_, level_);
  const std::uint32_t p = tower_->p();
  for (int k = 0; k < degree(); ++k) r.c_[k] = static_cast<Coeff>(c_[k] == 0 ? 0 : p - c_[k]);
  return r;
}

Elt& Elt::operator+=(const Elt& o) {
  check_compatible(*this, o);
  tower_->add(level_, c_.data(), o.c_.data(), c_.data());
  return *this;
}

Elt& Elt::operator-=(const Elt& o) {
  check_compatible(*this, o);
  tower_->sub(level_, c_.data(), o.c_.data(), c_.data());
  return *this;
}

Elt& Elt::operator*=(const Elt& o) {
  check_compatible(*this, o);
  std::array<Coeff, kMaxDegree> out{};
  tower_->mul(level_, c_.data(), o.c_.data(), out.data());
  c_ = out;
  return *this;
}

Elt& Elt::operator/=(const Elt& o) {
  check_compatible(*this, o);
  return *this *= o.inverse();
}

bool operator==(const Elt& a, const Elt& b) {
  return a.tower_ == b.tower_ && a.level_ == b.level_ && a.c_ == b.c_;
}

Elt Elt::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (degree() == 1) {
    Elt r(tower_, level_);
    r.c_[0] = static_cast<Coeff>(tower_->inv_mod_p(c_[0]));
    return r;
  }
  return pow(tower_->order(level_) - 2);
}

Elt Elt::pow(std::uint64_t e) const {
  Elt result = tower_->one(level_);
  Elt base = *this;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string Elt::to_string() const {
  std::ostringstream os;
  os << '[';
  const auto cs = coeffs();
  for (std::size_t k = 0; k < cs.size(); ++k) os << (k ? "," : "") << cs[k];
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// FieldTower

std::shared_ptr<const FieldTower> FieldTower::make(std::uint32_t p, int m0, std::uint32_t c0_index) {
  if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (m0 < 1) throw std::invalid_argument("m0 must be positive");
  std::uint64_t qe = 1;
  for (int k = 0; k < 2 * m0; ++k) {
    qe *= p;
    if (qe > kMaxFieldOrder)
      throw std::invalid_argument("p^(2 m0) exceeds the field size cap 2^20");
  }

  std::shared_ptr<FieldTower> t(new FieldTower());
  t->p_ = p;
  t->m0_ = m0;
  t->c0_index_ = c0_index;

  t->inv_table_.assign(p, 0);
  for (std::uint32_t a = 1; a < p; ++a) t->inv_table_[a] = pow_mod(a, p - 2, p);

  t->modulus_[level_slot(Level::F)] = smallest_irreducible(1, p);
  t->modulus_[level_slot(Level::E0)] = smallest_irreducible(m0, p);
  t->modulus_[level_slot(Level::E)] = smallest_irreducible(2 * m0, p);

  if (c0_index + std::uint64_t{1} >= t->order(Level::E0))
    throw std::invalid_argument("c0_index out of range");

  // Involution as a linear map on the power basis of E.
  const int de = 2 * m0;
  std::uint64_t pm = 1;
  for (int k = 0; k < m0; ++k) pm *= p;
  t->conj_.assign(de, {});
  {
    Elt x = t->zero(Level::E);
    if (de > 1) x.c_[1] = 1;
    Elt xp = x.pow(pm);
    Elt acc = t->one(Level::E);
    for (int k = 0; k < de; ++k) {
      t->conj_[k] = acc.c_;
      acc *= xp;
    }
  }

  // Root of modulus(E0) in E, first in enumeration order.
  const auto& me0 = t->modulus_[level_slot(Level::E0)];
  for (std::uint32_t idx = 0; idx < qe; ++idx) {
    Elt z = t->from_index(Level::E, idx);
    Elt acc = t->zero(Level::E);
    for (std::size_t k = me0.size(); k-- > 0;) acc = acc * z + t->from_int(Level::E, me0[k]);
    if (acc.is_zero()) {
      t->theta_ = z;
      break;
    }
  }
  t->theta_powers_.clear();
  {
    Elt acc = t->one(Level::E);
    for (int k = 0; k < m0; ++k) {
      t->theta_powers_.push_back(acc);
      acc *= t->theta_;
    }
  }

  // Projection E → E0: pick m0 independent coordinate rows of the embedding.
  {
    std::vector<std::vector<std::uint32_t>> rows;  // rows of B^T reduced
    std::vector<std::vector<std::uint32_t>> bt(m0, std::vector<std::uint32_t>(de));
    for (int k = 0; k < m0; ++k)
      for (int r = 0; r < de; ++r) bt[k][r] = t->theta_powers_[k].c_[r];
    auto work = bt;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    for (int col = 0; col < de && rank < static_cast<std::size_t>(m0); ++col) {
      std::size_t piv = rank;
      while (piv < work.size() && work[piv][col] == 0) ++piv;
      if (piv == work.size()) continue;
      std::swap(work[piv], work[rank]);
      const std::uint32_t s = t->inv_table_[work[rank][col]];
      for (auto& v : work[rank]) v = static_cast<std::uint32_t>(std::uint64_t{v} * s % p);
      for (std::size_t r = 0; r < work.size(); ++r) {
        if (r == rank || work[r][col] == 0) continue;
        const std::uint64_t f = p - work[r][col];
        for (int j = 0; j < de; ++j) work[r][j] = static_cast<std::uint32_t>((work[r][j] + f * work[rank][j]) % p);
      }
      pivots.push_back(col);
      ++rank;
    }
    t->proj_rows_ = pivots;
    std::vector<std::vector<std::uint32_t>> sub(m0, std::vector<std::uint32_t>(m0));
    for (int i = 0; i < m0; ++i)
      for (int k = 0; k < m0; ++k) sub[i][k] = bt[k][pivots[i]];
    t->proj_inv_ = invert_mod_p(sub, p);
  }

  for (std::uint32_t idx = 1; idx < qe; ++idx) {
    Elt z = t->from_index(Level::E, idx);
    if (t->involution(z) == -z) {
      t->delta_ = z;
      break;
    }
  }

  t->c0_ = t->from_index(Level::E0, c0_index + 1);

  for (Level lv : {Level::F, Level::E0}) {
    const std::uint64_t q = t->order(lv);
    for (std::uint32_t idx = 1; idx < q; ++idx) {
      Elt z = t->from_index(lv, idx);
      if (!z.pow((q - 1) / 2).is_one()) {
        (lv == Level::F ? t->nonsquare_f_ : t->nonsquare_e0_) = z;
        break;
      }
    }
  }
  return t;
}

int FieldTower::degree(Level level) const {
  switch (level) {
    case Level::F: return 1;
    case Level::E0: return m0_;
    case Level::E: return 2 * m0_;
  }
  return 1;
}

std::uint64_t FieldTower::order(Level level) const {
  std::uint64_t q = 1;
  for (int k = 0; k < degree(level); ++k) q *= p_;
  return q;
}

const std::vector<std::uint32_t>& FieldTower::modulus(Level level) const { return modulus_[level_slot(level)]; }

const Elt& FieldTower::nonsquare(Level level) const {
  if (level == Level::E) throw std::invalid_argument("square classes are only tracked for F and E0");
  return level == Level::F ? nonsquare_f_ : nonsquare_e0_;
}

Elt FieldTower::zero(Level level) const { return Elt(this, level); }

Elt FieldTower::one(Level level) const {
  Elt r(this, level);
  r.c_[0] = 1;
  return r;
}

Elt FieldTower::from_int(Level level, std::int64_t value) const {
  Elt r(this, level);
  const std::int64_t pp = p_;
  r.c_[0] = static_cast<Elt::Coeff>(((value % pp) + pp) % pp);
  return r;
}

Elt FieldTower::from_coeffs(Level level, std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() != static_cast<std::size_t>(degree(level)))
    throw std::invalid_argument("expected " + std::to_string(degree(level)) + " coefficients for level " +
                                std::string(to_string(level)) + ", got " + std::to_string(coeffs.size()));
  Elt r(this, level);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] < 0 || coeffs[k] >= static_cast<std::int64_t>(p_))
      throw std::invalid_argument("coefficient " + std::to_string(coeffs[k]) + " outside [0, p)");
    r.c_[k] = static_cast<Elt::Coeff>(coeffs[k]);
  }
  return r;
}

Elt FieldTower::from_index(Level level, std::uint32_t index) const {
  Elt r(this, level);
  for (int k = 0; k < degree(level); ++k) {
    r.c_[k] = static_cast<Elt::Coeff>(index % p_);
    index /= p_;
  }
  return r;
}

void FieldTower::require_level(const Elt& x, Level level, const char* what) const {
  if (x.tower_ptr() != this) throw std::invalid_argument(std::string(what) + ": element from another tower");
  if (x.level() != level)
    throw std::invalid_argument(std::string(what) + ": expected level " + std::string(to_string(level)) + ", got " +
                                std::string(to_string(x.level())));
}

Elt FieldTower::embed(const Elt& x, Level target) const {
  if (x.tower_ptr() != this) throw std::invalid_argument("embed: element from another tower");
  if (static_cast<int>(target) < static_cast<int>(x.level()))
    throw std::invalid_argument("embed: target level below source level");
  if (x.level() == target) return x;
  if (x.level() == Level::F) {
    Elt r(this, target);
    r.c_[0] = x.c_[0];
    return r;
  }
  // E0 → E
  Elt r = zero(Level::E);
  for (int k = 0; k < m0_; ++k) {
    if (x.c_[k] == 0) continue;
    r += from_int(Level::E, x.c_[k]) * theta_powers_[k];
  }
  return r;
}

bool FieldTower::lies_in(const Elt& x, Level target) const {
  if (static_cast<int>(target) >= static_cast<int>(x.level())) return true;
  if (x.level() == Level::E && target == Level::E0) return involution(x) == x;
  if (x.level() == Level::E0) {
    for (int k = 1; k < m0_; ++k)
      if (x.c_[k] != 0) return false;
    return true;
  }
  // E → F
  if (!(involution(x) == x)) return false;
  return lies_in(project(x, Level::E0), Level::F);
}

Elt FieldTower::project(const Elt& x, Level target) const {
  if (x.tower_ptr() != this) throw std::invalid_argument("project: element from another tower");
  if (static_cast<int>(target) > static_cast<int>(x.level()))
    throw std::invalid_argument("project: target level above source level");
  if (x.level() == target) return x;
  if (x.level() == Level::E0) {
    if (!lies_in(x, Level::F)) throw std::domain_error("project: element is not in F");
    return from_int(Level::F, x.c_[0]);
  }
  // x at level E
  Elt r(this, Level::E0);
  for (int i = 0; i < m0_; ++i) {
    std::uint64_t acc = 0;
    for (int k = 0; k < m0_; ++k) acc += std::uint64_t{proj_inv_[i][k]} * x.c_[proj_rows_[k]];
    r.c_[i] = static_cast<Elt::Coeff>(acc % p_);
  }
  if (!(embed(r, Level::E) == x)) throw std::domain_error("project: element is not in E0");
  return target == Level::E0 ? r : project(r, Level::F);
}

Elt FieldTower::involution(const Elt& x) const {
  require_level(x, Level::E, "involution");
  const int de = 2 * m0_;
  std::array<std::uint32_t, kMaxDegree> acc{};
  for (int k = 0; k < de; ++k) {
    const std::uint32_t a = x.c_[k];
    if (a == 0) continue;
    for (int j = 0; j < de; ++j) acc[j] += a * conj_[k][j];
  }
  Elt r(this, Level::E);
  for (int j = 0; j < de; ++j) r.c_[j] = static_cast<Elt::Coeff>(acc[j] % p_);
  return r;
}

Elt FieldTower::trace_E_E0(const Elt& x) const { return project(x + involution(x), Level::E0); }

Elt FieldTower::norm_E_E0(const Elt& x) const { return project(x * involution(x), Level::E0); }

Elt FieldTower::norm_E_F(const Elt& x) const {
  require_level(x, Level::E, "norm_E_F");
  return project(x.pow((order(Level::E) - 1) / (p_ - 1)), Level::F);
}

Elt FieldTower::trace_E0_F(const Elt& x) const {
  require_level(x, Level::E0, "trace_E0_F");
  Elt acc = zero(Level::E0);
  Elt y = x;
  for (int k = 0; k < m0_; ++k) {
    acc += y;
    y = y.pow(p_);
  }
  return project(acc, Level::F);
}

Elt FieldTower::norm_E0_F(const Elt& x) const {
  require_level(x, Level::E0, "norm_E0_F");
  return project(x.pow((order(Level::E0) - 1) / (p_ - 1)), Level::F);
}

Elt FieldTower::mu0(const Elt& x) const {
  require_level(x, Level::E0, "mu0");
  return trace_E0_F(c0_ * x);
}

Elt FieldTower::mu(const Elt& x) const {
  require_level(x, Level::E, "mu");
  return mu0(trace_E_E0(x));
}

void FieldTower::add(Level level, const Elt::Coeff* a, const Elt::Coeff* b, Elt::Coeff* out) const {
  for (int k = 0; k < degree(level); ++k) {
    std::uint32_t s = std::uint32_t{a[k]} + b[k];
    out[k] = static_cast<Elt::Coeff>(s >= p_ ? s - p_ : s);
  }
}

void FieldTower::sub(Level level, const Elt::Coeff* a, const Elt::Coeff* b, Elt::Coeff* out) const {
  for (int k = 0; k < degree(level); ++k) {
    std::uint32_t s = std::uint32_t{a[k]} + p_ - b[k];
    out[k] = static_cast<Elt::Coeff>(s >= p_ ? s - p_ : s);
  }
}

void FieldTower::mul(Level level, const Elt::Coeff* a, const Elt::Coeff* b, Elt::Coeff* out) const {
  const int d = degree(level);
  if (d == 1) {
    out[0] = static_cast<Elt::Coeff>(std::uint32_t{a[0]} * b[0] % p_);
    return;
  }
  // Partial sums stay below 2^25 for p < 2^10, d <= 12.
  std::array<std::uint32_t, 2 * kMaxDegree> r{};
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j) r[i + j] += std::uint32_t{a[i]} * b[j];
  }
  const auto& m = modulus_[level_slot(level)];
  for (int i = 2 * d - 2; i >= d; --i) {
    const std::uint32_t c = r[i] % p_;
    if (c == 0) continue;
    const std::uint32_t nc = p_ - c;
    for (int k = 0; k < d; ++k) r[i - d + k] += nc * m[k];
  }
  for (int k = 0; k < d; ++k) out[k] = static_cast<Elt::Coeff>(r[k] % p_);
}

// ---------------------------------------------------------------------------
// SquareClass / Coset

SquareClass::SquareClass(const Elt& x) {
  if (x.level() == Level::E) throw std::invalid_argument("square class of an element of E");
  if (x.is_zero()) throw std::domain_error("square class of zero");
  const FieldTower& t = x.tower();
  is_square_ = x.pow((t.order(x.level()) - 1) / 2).is_one();
  rep_ = is_square_ ? t.one(x.level()) : t.nonsquare(x.level());
}

SquareClass SquareClass::trivial(const FieldTower& tower, Level level) { return SquareClass(tower.one(level)); }

SquareClass SquareClass::operator*(const SquareClass& o) const {
  if (level() != o.level()) throw std::invalid_argument("square classes at different levels");
  return SquareClass(rep_ * o.rep_);
}

SquareClass SquareClass::pow(std::uint64_t e) const { return SquareClass(rep_.pow(e)); }

std::string SquareClass::to_string() const { return is_square_ ? "square" : "nonsquare"; }

SquareClass square_class(const Elt& x) { return SquareClass(x); }

Coset::Coset(const Elt& beta) : rep_(beta) {
  if (beta.level() != Level::E) throw std::invalid_argument("coset representative must lie in E");
  if (beta.is_zero()) throw std::domain_error("coset of zero");
}

Coset Coset::trivial(const FieldTower& tower) { return Coset(tower.one(Level::E)); }

bool Coset::is_trivial() const { return rep_.tower().lies_in(rep_, Level::E0); }

Coset Coset::operator*(const Coset& o) const { return Coset(rep_ * o.rep_); }

Coset Coset::inverse() const { return Coset(rep_.inverse()); }

Elt Coset::canonical() const {
  const FieldTower& t = rep_.tower();
  Elt best = rep_;
  const auto q0 = static_cast<std::uint32_t>(t.order(Level::E0));
  for (std::uint32_t idx = 1; idx < q0; ++idx) {
    Elt cand = rep_ * t.embed(t.from_index(Level::E0, idx), Level::E);
    if (cand.index() < best.index()) best = cand;
  }
  return best;
}

bool operator==(const Coset& a, const Coset& b) {
  const Elt ratio = a.rep_ * a.rep_.tower().involution(b.rep_);
  return a.rep_.tower().lies_in(ratio, Level::E0);
}

SquareClass norm_induced(const Coset& c) {
  const Elt& b = c.representative();
  return SquareClass(b.tower().norm_E_F(b));
}

}  // namespace spinor
