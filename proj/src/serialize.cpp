#include "spinor/serialize.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace spinor {

json to_json(const Elt& x) {
  json j = json::array();
  for (auto c : x.coeffs()) j.push_back(c);
  return j;
}

Elt elt_from_json(const FieldTower& tower, Level level, const json& j) {
  if (j.is_number_integer()) return tower.from_int(level, j.get<std::int64_t>());
  if (!j.is_array()) throw std::invalid_argument("element must be an array of digits or an integer");
  std::vector<std::int64_t> cs;
  for (const auto& d : j) {
    if (!d.is_number_integer()) throw std::invalid_argument("element digits must be integers");
    cs.push_back(d.get<std::int64_t>());
  }
  return tower.from_coeffs(level, cs);
}

json to_json(const Vec& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(to_json(x));
  return j;
}

Vec vec_from_json(const FieldTower& tower, Level level, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector must be an array");
  Vec v;
  for (const auto& e : j) v.push_back(elt_from_json(tower, level, e));
  return v;
}

json tower_to_json(const FieldTower& tower) {
  return {{"p", tower.p()}, {"m0", tower.m0()}, {"c0_index", tower.c0_index()}};
}

std::shared_ptr<const FieldTower> tower_from_json(const json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("m0"))
    throw std::invalid_argument("tower must be an object with p and m0");
  const auto p = j.at("p").get<std::int64_t>();
  const auto m0 = j.at("m0").get<std::int64_t>();
  const auto c0 = j.value("c0_index", std::int64_t{0});
  if (p < 0 || m0 < 0 || c0 < 0) throw std::invalid_argument("tower parameters must be non-negative");
  return FieldTower::make(static_cast<std::uint32_t>(p), static_cast<int>(m0), static_cast<std::uint32_t>(c0));
}

namespace {

json rows_to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat rows_from_json(const FieldTower& tower, Level level, const json& rows) {
  if (!rows.is_array()) throw std::invalid_argument("matrix entries must be an array of rows");
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Mat m(tower, level, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) throw std::invalid_argument("matrix rows have unequal lengths");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = elt_from_json(tower, level, rows[i][k]);
  }
  return m;
}

}  // namespace

json to_json(const Mat& m) { return {{"level", std::string(to_string(m.level()))}, {"entries", rows_to_json(m)}}; }

Mat mat_from_json(const FieldTower& tower, const json& j) {
  if (!j.is_object() || !j.contains("entries")) throw std::invalid_argument("matrix must be an object with entries");
  const Level level = level_from_string(j.value("level", std::string("E")));
  return rows_from_json(tower, level, j.at("entries"));
}

json to_json(const Form& f) {
  return {{"kind", std::string(to_string(f.kind()))},
          {"level", std::string(to_string(f.level()))},
          {"gram", rows_to_json(f.gram())}};
}

Form form_from_json(const FieldTower& tower, const json& j) {
  if (!j.is_object() || !j.contains("gram") || !j.contains("kind"))
    throw std::invalid_argument("form must be an object with kind and gram");
  const FormKind kind = form_kind_from_string(j.at("kind").get<std::string>());
  const Level default_level = kind == FormKind::symmetric ? Level::F : Level::E;
  const Level level = level_from_string(j.value("level", std::string(to_string(default_level))));
  Mat gram = rows_from_json(tower, level, j.at("gram"));
  switch (kind) {
    case FormKind::hermitian: return make_hermitian(std::move(gram));
    case FormKind::symmetric: return make_symmetric(std::move(gram));
    case FormKind::anti_hermitian:
      if (level != Level::E || !(gram.conj_transpose() == -gram))
        throw std::invalid_argument("Gram matrix is not anti-hermitian");
      return make_form_unchecked(kind, std::move(gram));
    case FormKind::sesquilinear: return make_form_unchecked(kind, std::move(gram));
  }
  throw std::invalid_argument("unsupported form kind");
}

}  // namespace spinor
