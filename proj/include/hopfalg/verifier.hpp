#pragma once

#include <string>
#include <vector>

#include "hopfalg/algebroid.hpp"
#include "hopfalg/membership.hpp"

namespace hopfalg {

enum class CheckStatus { Pass, Unknown, Fail };

const char* status_name(CheckStatus s);
/// @brief Combines statuses: any Fail gives Fail, otherwise any Unknown gives Unknown.
CheckStatus combine(CheckStatus a, CheckStatus b);

/// @brief Axiom identifiers in report order.
const std::vector<std::string>& axiom_ids();
/// @brief Axioms that apply to a level (empty at TX, which carries no coring).
std::vector<std::string> axioms_for_level(Level level);

/// @brief One checked item that did not pass.
struct CheckItem {
  std::string name;
  CheckStatus status = CheckStatus::Unknown;
  std::string note;
};

/// @brief Outcome of one axiom on one presented level.
struct AxiomCheck {
  std::string axiom_id;
  Level level = Level::TX;
  int bound = 0;
  CheckStatus status = CheckStatus::Pass;
  std::size_t items = 0;             ///< elements checked
  std::size_t certificate_size = 0;  ///< summands across all membership certificates
  std::vector<CheckItem> open;       ///< items that are Unknown or Fail
  std::string summary;
  double seconds = 0;
};

struct CheckOptions {
  /// @brief Stop an axiom at its first Unknown item; its status is then already Unknown.
  bool stop_at_first_unknown = true;
  MembershipOptions membership;
  /// @brief Column cap for the derived flat identities, whose closures grow fastest.
  std::size_t identity_max_columns = 100000;
};

/// @brief Runs one axiom; throws MissingData when the algebroid lacks the tables it needs.
AxiomCheck check(const std::string& axiom_id, const Algebroid& alg, int bound, const CheckOptions& opts = {});

/// @brief The two antipode conditions for b in the diamond tensor, as elements that must vanish.
///
/// Left: sum S(b1)_(1) b2 (x) S(b1)_(2) - 1 (x) S(b). Right: sum S^-1(b2)_(1) (x) S^-1(b2)_(2) b1 - S^-1(b) (x) 1.
TensorElem antipode_left_element(const Algebroid& alg, const FreeElem& b);
TensorElem antipode_right_element(const Algebroid& alg, const FreeElem& b);

/// @brief Named elements that the flat level must contain, by family.
///
/// Families: "flatness" (calculus specific reductions of the flatness relation),
/// "extendability" (the left and right forms of the extension relations written through the other
/// duality) and "derived" (the three derived identities of the flat level).
std::vector<std::pair<std::string, FreeElem>> flat_level_elements(const Algebroid& alg, const std::string& family);

struct SuiteOptions {
  std::vector<Level> levels;
  int bound = 4;
  /// @brief Per-level bound overrides.
  std::vector<std::pair<Level, int>> level_bounds;
  /// @brief Axioms to run; empty runs every applicable axiom.
  std::vector<std::string> axioms;
  CheckOptions check;
  CompletionOptions completion;
};

struct SuiteReport {
  std::string calculus;
  std::vector<CheckLine> calculus_checks;
  std::vector<AxiomCheck> checks;
  std::vector<std::string> notes;
  CheckStatus status = CheckStatus::Pass;
  /// @brief Plain text report; timings are printed only when asked, keeping reports reproducible.
  std::string to_text(bool timings = false) const;
  std::string to_json(bool timings = false) const;
};

/// @brief Validates the calculus, then builds each level and runs the applicable axioms.
///
/// A failing calculus check ends the suite with Fail before any level is built.
SuiteReport run_suite(const Calculus1& c1, const Calculus2* c2, const SuiteOptions& opts);

}  // namespace hopfalg
