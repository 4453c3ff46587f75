#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "symq/adversary.hpp"
#include "symq/boolean_function.hpp"
#include "symq/measures.hpp"

namespace symq {

enum class ScanCheck {
  C2s,             // C <= 2 s
  Bs32,            // 2 bs <= 3 s
  BsFormula,       // closed-form bs equals the brute-force oracle at every weight
  CFormula,        // closed-form C equals the brute-force certificate at every weight
  Decomposition,   // T_k edge sets for k in S_f partition the edges of f
  Sandwich,        // sqrt(t (n+1-t)) <= lambda <= sqrt(s0 s1)
  Hierarchy,       // s <= bs <= FC <= C
  ExplicitScheme,  // explicit scheme MM and MM' feasible with objective <= 3 sqrt(t n)
  FcReduced,       // full FC program equals the two-variable program at every weight
};

std::string_view to_string(ScanCheck check);
std::vector<ScanCheck> all_checks();
/// Largest n at which the check may run.
int check_arity_cap(ScanCheck check);
/// "all" or a comma-separated list of check names. "all" keeps the checks whose
/// cap admits n.
std::vector<ScanCheck> parse_checks(std::string_view list, int n);

struct ScanOptions {
  double tolerance = 1e-6;
};

struct Counterexample {
  std::string check;
  std::string profile;
  int weight = -1;  // -1 when the check is per function
  std::string detail;
};

struct CheckTally {
  std::string check;
  std::size_t evaluated = 0;
  std::size_t violations = 0;
};

/// Profiles attaining the largest ratio of a pair of measures over non-constant profiles.
struct RatioArgmax {
  std::string metric;
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  std::vector<std::uint64_t> codes;  // profile_from_code indices, ascending

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  bool contains(const SymmetricProfile& f) const;
};

struct ScanReport {
  int n = 0;
  std::size_t profiles = 0;
  std::vector<CheckTally> tallies;
  std::vector<Counterexample> counterexamples;
  /// "C/s", "bs/s" and "Cb/sb" (per-output certificate over sensitivity).
  std::vector<RatioArgmax> argmax;

  std::size_t violations() const;
  bool ok() const { return violations() == 0; }
  const RatioArgmax& ratio(std::string_view metric) const;

  nlohmann::json to_json() const;
  /// check,evaluated,violations rows followed by one row per counterexample.
  std::string to_csv() const;
};

/// Evaluates the checks on every total symmetric profile of arity n.
ScanReport scan_symmetric(int n, const std::vector<ScanCheck>& checks, ScanOptions options = {});

/// f = 1 iff |x| in {(n-1)/2, (n+1)/2}; n odd >= 5.
SymmetricProfile extremal_C_function(int n);

/// G = 1 iff |x| in {n/2, n/2+1}; n a positive multiple of 4.
SymmetricProfile extremal_G(int n);

struct ExtremalCReport {
  int n = 0;
  MeasureReport measures;
  bool c1_is_twice_s1 = false;
  bool c_is_2s_minus_4 = false;
};
ExtremalCReport extremal_C_report(int n);

struct ExtremalGReport {
  int n = 0;
  MeasureReport measures;
  bool bs_matches = false;  // bs = 3n/4
  bool s_matches = false;   // s = n/2 + 2
  /// Brute-force bs over one input per weight, when n <= kMaxBruteForceArity.
  std::optional<int> bs_bruteforce;
};
ExtremalGReport extremal_G_report(int n);

struct HierarchyRow {
  std::string measure;
  std::optional<double> value;  // empty when the measure does not apply
  std::string note;
};

struct HierarchyRelation {
  std::string relation;
  bool asserted = false;  // false: reported only
  std::optional<bool> holds;
};

struct HierarchyReport {
  int n = 0;
  std::vector<HierarchyRow> rows;
  std::vector<HierarchyRelation> relations;

  std::optional<double> value(std::string_view measure) const;
  /// True unless an asserted relation fails.
  bool ok() const;
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

struct HierarchyOptions {
  double tolerance = 1e-6;
  double approx_eps = 1.0 / 3.0;
};

/// Measures and spectral quantities of f, the explicit (or, for GapMaj, uniform)
/// MM objective, and the relational bound when a relation is supplied.
HierarchyReport hierarchy_report(const BooleanFunction& f, const std::optional<RelationalBound>& relational = std::nullopt,
                                 HierarchyOptions options = {});

}  // namespace symq
