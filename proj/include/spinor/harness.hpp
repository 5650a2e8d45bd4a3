#pragma once

/// \file harness.hpp
/// Executable checks of the identities relating the unitary and orthogonal
/// spinor norms, a seeded suite runner, and replayable reports.
///
/// Every check is a pure function of explicit inputs. A failure is recorded
/// as the JSON of those inputs, so `replay` reproduces its verdict.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spinor/orthogonal.hpp"
#include "spinor/serialize.hpp"

namespace spinor {

struct CheckOutcome {
  bool pass = true;
  std::string detail;
};

/// Replaceable pieces of the pipeline, for mutation testing.
struct SuiteHooks {
  std::function<SquareClass(const OrthogonalElement&)> orthogonal_norm = sn_zassenhaus;
};

/// disc(h'|ker(1+s)^n) · det_E((1+s)/2 |im(1+s)^n) = φ  in E^×/E0^×.
CheckOutcome check_proposition(const Form& hp, const OneDimElement& s);
/// sn(σ over (V, b_h)) = Norm_{E/F}(sn_E(σ)).
CheckOutcome check_theorem(const Form& h, const UnitaryElement& sigma, const SuiteHooks& hooks = {});
/// The theorem for E0 = F; throws std::invalid_argument when m0 ≠ 1.
CheckOutcome check_quadratic(const Form& h, const UnitaryElement& sigma, const SuiteHooks& hooks = {});
/// sn(σ over (V, h0)) = Norm_{E/E0}(sn_E(σ)) in E0^×/(E0^×)^2.
CheckOutcome check_intermediate(const Form& h, const UnitaryElement& sigma, const SuiteHooks& hooks = {});
/// disc(μ0∘φ) = ζ^n · Norm_{E0/F}(disc φ).
CheckOutcome check_transfer(const Form& phi);
/// Orthogonal norm = reflection-product oracle, and the oracle agrees with
/// itself under a reversed basis order.
CheckOutcome check_oracle(const OrthogonalElement& t, const SuiteHooks& hooks = {});
/// When the Cayley decomposition succeeds, its φ-product equals sn_via_det
/// and the factors multiply back to σ. `decomposed` reports which happened.
CheckOutcome check_cayley(const Form& hp, const UnitaryElement& sigma, bool* decomposed = nullptr);
CheckOutcome check_hom_sn_E(const UnitaryElement& sigma, const UnitaryElement& tau);
CheckOutcome check_hom_orthogonal(const OrthogonalElement& a, const OrthogonalElement& b, const SuiteHooks& hooks = {});
CheckOutcome check_norm_induced(const Elt& beta, const Elt& t);
/// Up to `witnesses` Hilbert 90 witnesses for α all give one coset.
CheckOutcome check_hil(const Elt& alpha, std::size_t witnesses = 10);
/// f_σ is unchanged when every preimage is shifted by a fixed vector of σ.
CheckOutcome check_wall_form(const Form& hp, const UnitaryElement& sigma, const std::vector<Vec>& shifts);

struct SuiteConfig {
  std::uint32_t p = 3;
  int m0 = 1;
  std::uint32_t c0_index = 0;
  std::vector<std::size_t> dims = {1, 2};
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  bool exhaustive = true;
  /// Restrict the run to these check names; empty runs everything.
  std::vector<std::string> only;
};

json to_json(const SuiteConfig& cfg);

struct CheckResult {
  std::string name;
  std::size_t trials = 0;
  std::vector<json> failures;
};

struct Report {
  SuiteConfig config;
  std::vector<CheckResult> checks;
  std::size_t decomposed_count = 0;
  std::size_t not_decomposed_count = 0;
  double elapsed_ms = 0.0;

  std::size_t failure_count() const;
  const CheckResult* find(const std::string& name) const;
  /// Timing lives under "timing"; everything else is a function of the
  /// config.
  json to_json(bool include_timing = true) const;
};

/// Names of all checks run_suite knows, in report order.
const std::vector<std::string>& check_names();

/// Throws std::invalid_argument on a bad configuration.
Report run_suite(const SuiteConfig& cfg, const SuiteHooks& hooks = {});

/// Re-runs the check recorded in a failure entry of a report.
CheckOutcome replay(const json& record, const SuiteHooks& hooks = {});

/// Random non-degenerate hermitian Gram matrix over E.
Form random_hermitian(const FieldTower& tower, std::size_t n, Rng& rng);
/// Random non-degenerate symmetric form over the given level.
Form random_symmetric(const FieldTower& tower, Level level, std::size_t n, Rng& rng);
/// All lines of E^n, each by its representative with leading entry 1.
std::vector<Vec> projective_points(const FieldTower& tower, std::size_t n);

}  // namespace spinor
