#pragma once

// Brute-force reference computations used by the unit tests. Nothing here
// calls the library's linear algebra or norm code.

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "spinor/exact_linalg.hpp"

namespace oracle {

using spinor::Elt;
using spinor::FieldTower;
using spinor::Level;
using spinor::Mat;

inline spinor::Vec axpy(const spinor::Vec& x, const Elt& a, const spinor::Vec& y) {
  spinor::Vec out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * y[i];
  return out;
}

// Polynomials over F_p, lowest coefficient first.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  std::uint32_t lead_inv = 1;
  while (lead_inv * m.back() % p != 1) ++lead_inv;
  while (a.size() > dm) {
    const std::uint32_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t k = 0; k <= dm; ++k) a[shift + k] = (a[shift + k] + p * p - c * m[k] % p) % p;
    trim(a);
  }
  return a;
}

// All monic polynomials of degree d, in enumeration order of the low
// coefficients (c_0 least significant).
inline std::vector<Poly> monic(std::uint32_t p, int d) {
  std::uint64_t count = 1;
  for (int k = 0; k < d; ++k) count *= p;
  std::vector<Poly> out;
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f(d + 1, 0);
    std::uint64_t c = code;
    for (int k = 0; k < d; ++k) {
      f[k] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[d] = 1;
    out.push_back(f);
  }
  return out;
}

inline bool irreducible(const Poly& f, std::uint32_t p) {
  const int d = static_cast<int>(f.size()) - 1;
  for (int e = 1; 2 * e <= d; ++e)
    for (const Poly& g : monic(p, e))
      if (poly_mod(f, g, p).empty()) return false;
  return true;
}

inline Poly smallest_irreducible(std::uint32_t p, int d) {
  for (const Poly& f : monic(p, d))
    if (irreducible(f, p)) return f;
  return {};
}

inline std::vector<Elt> elements(const FieldTower& t, Level level) {
  std::vector<Elt> out;
  for (std::uint64_t i = 0; i < t.order(level); ++i) out.push_back(t.from_index(level, static_cast<std::uint32_t>(i)));
  return out;
}

inline std::set<std::uint32_t> square_indices(const FieldTower& t, Level level) {
  std::set<std::uint32_t> out;
  for (const Elt& x : elements(t, level))
    if (!x.is_zero()) out.insert((x * x).index());
  return out;
}

inline bool is_square(const Elt& x) { return square_indices(x.tower(), x.level()).count(x.index()) > 0; }

// Leibniz expansion.
inline Elt leibniz_det(const Mat& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Elt total = m.tower().zero(m.level());
  do {
    Elt term = m.tower().one(m.level());
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    if (inversions % 2) total -= term;
    else total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// x^(p^k) by repeated powering.
inline Elt frobenius(const Elt& x, int k) {
  Elt y = x;
  for (int i = 0; i < k; ++i) y = y.pow(x.tower().p());
  return y;
}

inline std::vector<std::uint32_t> key(const Mat& m) {
  std::vector<std::uint32_t> k;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) k.push_back(m(i, j).index());
  return k;
}

// Breadth-first closure of the group generated by `gens`, each carrying a
// label in an abelian group. Records the label of every element reached.
// `consistent` is false if two words for one element carry different
// labels, i.e. the labelling is not a well-defined homomorphism.
template <class Label>
struct Closure {
  std::map<std::vector<std::uint32_t>, std::pair<Mat, Label>> elements;
  bool consistent = true;
};

template <class Label, class Mul, class Eq>
Closure<Label> closure(const Mat& identity, const Label& unit, const std::vector<std::pair<Mat, Label>>& gens, Mul mul,
                       Eq eq, std::size_t limit = 200000) {
  Closure<Label> out;
  std::deque<std::vector<std::uint32_t>> queue;
  out.elements.emplace(key(identity), std::pair{identity, unit});
  queue.push_back(key(identity));
  while (!queue.empty() && out.elements.size() < limit) {
    const auto cur = out.elements.at(queue.front());
    queue.pop_front();
    for (const auto& [g, lab] : gens) {
      Mat next = cur.first * g;
      Label nl = mul(cur.second, lab);
      auto k = key(next);
      auto it = out.elements.find(k);
      if (it == out.elements.end()) {
        out.elements.emplace(k, std::pair{std::move(next), nl});
        queue.push_back(std::move(k));
      } else if (!eq(it->second.second, nl)) {
        out.consistent = false;
      }
    }
  }
  return out;
}

}  // namespace oracle
