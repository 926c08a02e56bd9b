// Named, seeded scenarios that rebuild the worked examples and structural
// theorems as executable checks.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "roal/matrix.hpp"

namespace roal {

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus s);
CheckStatus check_status_from_string(const std::string& s);

/// One computed quantity against its expected interval [expected_lo, expected_hi]
/// widened by `tolerance`. Boolean properties are encoded as 0/1; a check with
/// counterexample = true expects the property to fail (value 0).
struct Check {
  std::string name;
  std::string anchor;  // the statement the check exercises
  CheckStatus status = CheckStatus::skipped;
  double value = 0.0;
  double expected_lo = 0.0;
  double expected_hi = 0.0;
  double tolerance = 0.0;
  bool counterexample = false;
  std::optional<RealMatrix> witness;
  std::string note;

  bool operator==(const Check&) const = default;
};

struct Verdict {
  std::string scenario;
  std::uint64_t seed = 0;
  ToleranceConfig tol;
  std::vector<Check> checks;
  bool overall = false;  // conjunction of the non-skipped checks
  std::string note;

  bool operator==(const Verdict& o) const;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
};

class UnknownScenario : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Registered scenarios, sorted by name.
std::vector<ScenarioInfo> list_scenarios();
/// Deterministic in (name, seed, tol). Throws UnknownScenario.
Verdict run_scenario(const std::string& name, std::uint64_t seed = 0, const ToleranceConfig& tol = {});
/// Every scenario, sorted by name; scenarios run concurrently.
std::vector<Verdict> run_all(std::uint64_t seed = 0, const ToleranceConfig& tol = {});

/// Builders for checks; the status is computed from value and expectation.
Check range_check(std::string name, std::string anchor, double value, double lo, double hi, double tolerance);
Check bool_check(std::string name, std::string anchor, bool holds);
/// Passes when the property fails.
Check counterexample_check(std::string name, std::string anchor, bool holds);
Check skipped_check(std::string name, std::string anchor, std::string reason);

/// Recomputes overall from the check statuses.
void finalize(Verdict& v);

}  // namespace roal
