#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinor/harness.hpp"
#include "spinor/serialize.hpp"

namespace py = pybind11;
using namespace spinor;

namespace {

std::shared_ptr<const FieldTower> tower_of(const json& j) { return tower_from_json(j.at("tower")); }

json coset_json(const Coset& c) { return {{"canonical", to_json(c.canonical())}, {"trivial", c.is_trivial()}}; }

std::string describe(const std::string& tower) {
  const auto t = tower_from_json(json::parse(tower));
  json j = tower_to_json(*t);
  j["moduli"] = {{"E0", t->modulus(Level::E0)}, {"E", t->modulus(Level::E)}};
  j["theta"] = to_json(t->theta());
  j["delta"] = to_json(t->delta());
  j["c0"] = to_json(t->c0());
  j["zeta_is_square"] = zeta(*t).is_square();
  j["nonsquare"] = {{"F", to_json(t->nonsquare(Level::F))}, {"E0", to_json(t->nonsquare(Level::E0))}};
  return j.dump();
}

// {"tower", "form", "matrix"} with a hermitian form and a matrix over E.
std::string sn_unitary(const std::string& payload) {
  const json in = json::parse(payload);
  const auto t = tower_of(in);
  const Form h = form_from_json(*t, in.at("form"));
  const Mat m = mat_from_json(*t, in.at("matrix"));
  if (h.kind() != FormKind::hermitian) throw std::invalid_argument("expected a hermitian form");
  const Form hp = make_anti_hermitian_from(h);
  if (!is_isometry(m, hp)) throw std::domain_error("not an isometry of the hermitian form");
  const UnitaryElement sigma(m, hp);
  const Coset via_det = sn_via_det(sigma);
  json out = {{"dim_moved", sigma.dimension()},
              {"sn_via_det", coset_json(via_det)},
              {"norm_induced_is_square", norm_induced(via_det).is_square()}};
  const SnCayleyResult cay = sn_cayley(sigma, hp);
  if (const Coset* c = std::get_if<Coset>(&cay))
    out["cayley"] = coset_json(*c);
  else
    out["cayley"] = nullptr;
  return out.dump();
}

// {"tower", "form", "matrix", "level"}: a symmetric form with an isometry at
// that level, or a hermitian form with a unitary matrix restricted to it.
std::string sn_orthogonal(const std::string& payload) {
  const json in = json::parse(payload);
  const auto t = tower_of(in);
  const Form f = form_from_json(*t, in.at("form"));
  const Mat m = mat_from_json(*t, in.at("matrix"));
  const Level level = level_from_string(in.value("level", std::string("F")));
  if (level == Level::E) throw std::invalid_argument("level must be F or E0");
  std::optional<OrthogonalElement> el;
  if (f.kind() == FormKind::hermitian) {
    const Form hp = make_anti_hermitian_from(f);
    if (!is_isometry(m, hp)) throw std::domain_error("not an isometry of the hermitian form");
    el.emplace(scalar_restrict(UnitaryElement(m, hp), f, level));
  } else {
    if (!is_isometry(m, f)) throw std::domain_error("not an isometry of the symmetric form");
    el.emplace(m, f);
  }
  return json{{"dim", el->form().dim()},
              {"zassenhaus_is_square", sn_zassenhaus(*el).is_square()},
              {"oracle_is_square", sn_reflection_oracle(*el).is_square()},
              {"disc_is_square", disc(el->form()).is_square()}}
      .dump();
}

std::string verify(std::uint32_t p, int m0, std::uint32_t c0_index, const std::vector<std::size_t>& dims,
                   std::size_t trials, std::uint64_t seed, bool exhaustive, const std::vector<std::string>& only,
                   bool include_timing) {
  SuiteConfig cfg;
  cfg.p = p;
  cfg.m0 = m0;
  cfg.c0_index = c0_index;
  cfg.dims = dims;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.exhaustive = exhaustive;
  cfg.only = only;
  Report rep;
  {
    py::gil_scoped_release release;
    rep = run_suite(cfg);
  }
  return rep.to_json(include_timing).dump();
}

py::tuple replay_record(const std::string& record) {
  const CheckOutcome r = replay(json::parse(record));
  return py::make_tuple(r.pass, r.detail);
}

}  // namespace

PYBIND11_MODULE(_spinor, m) {
  m.doc() = "Spinor norms over finite field towers";
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    }
  });
  m.def("describe", &describe, py::arg("tower"));
  m.def("sn_unitary", &sn_unitary, py::arg("payload"));
  m.def("sn_orthogonal", &sn_orthogonal, py::arg("payload"));
  m.def("verify", &verify, py::arg("p"), py::arg("m0"), py::arg("c0_index"), py::arg("dims"), py::arg("trials"),
        py::arg("seed"), py::arg("exhaustive"), py::arg("only"), py::arg("include_timing"));
  m.def("replay", &replay_record, py::arg("record"));
  m.def("check_names", &check_names);
}
