#pragma once

/// \file serialize.hpp
/// JSON encodings.
///
///   element  [c_0, c_1, ...]  base-p digits in the level's polynomial basis
///            (a bare integer is accepted on input as a constant)
///   tower    {"p": 3, "m0": 1, "c0_index": 0}
///   matrix   {"level": "E", "entries": [[elt, ...], ...]}
///   form     {"kind": "hermitian", "level": "E", "gram": [[elt, ...], ...]}
///   generator {"v": [elt, ...], "t": elt}
///
/// Decoding errors throw std::invalid_argument.

#include <memory>

#include <json.hpp>

#include "spinor/forms.hpp"

namespace spinor {

using json = nlohmann::json;

json to_json(const Elt& x);
Elt elt_from_json(const FieldTower& tower, Level level, const json& j);

json to_json(const Vec& v);
Vec vec_from_json(const FieldTower& tower, Level level, const json& j);

json tower_to_json(const FieldTower& tower);
std::shared_ptr<const FieldTower> tower_from_json(const json& j);

json to_json(const Mat& m);
/// The level is read from the object; `entries` may be empty only for 0×0.
Mat mat_from_json(const FieldTower& tower, const json& j);

json to_json(const Form& f);
/// Hermitian and symmetric forms are validated (symmetry, non-degeneracy).
Form form_from_json(const FieldTower& tower, const json& j);

}  // namespace spinor
