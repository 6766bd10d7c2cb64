#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hopfalg/words.hpp"

namespace hopfalg {

/// @brief Levels of the tower, in increasing order of structure.
enum class Level { TX, BOmega, BX, IBOmega, IBX, HOmega, HX, DX };

const char* level_name(Level l);
/// @brief Parses a level name; throws UnknownLevel.
Level parse_level(const std::string& s);
/// @brief Levels that carry rewrite rules for normal_form.
bool level_has_rules(Level l);
bool level_has_x(Level l);
bool level_has_abar(Level l);
bool level_has_ox(Level l);
bool level_is_hopf(Level l);

/// @brief Linear combination of u r v with r a defining relation, keyed by (u, relation index, v).
using Certificate = std::map<std::tuple<Word, int, Word>, Scalar>;

void cert_add(Certificate& c, const Word& u, int rel, const Word& v, const Scalar& x);
void cert_add(Certificate& c, const Certificate& other, const Scalar& x = Scalar(1));
/// @brief x C y for words x, y.
Certificate cert_sandwich(const Word& x, const Certificate& c, const Word& y);
/// @brief Sum of coefficient * u * relations[r] * v.
FreeElem recombine(const Certificate& c, const std::vector<FreeElem>& relations);

/// @brief Oriented rule lhs -> rhs.
///
/// lhs - rhs equals the recombination of cert, where a negative relation index -(k+1) stands
/// for the element lhs - rhs of the k-th rule in the system history.
struct Rule {
  Word lhs;
  FreeElem rhs;
  Certificate cert;
};

struct CompletionOptions {
  int max_overlap_length = 5;  ///< overlaps longer than this are not resolved
  int max_rules = 20000;
};

/// @brief Rewriting system built from selected relations by interreduction and bounded completion.
///
/// Rules are matched leftmost first; at one position the earliest rule wins.
class RewriteSystem {
 public:
  RewriteSystem(const std::vector<FreeElem>& relations, const std::vector<int>& selected,
                const CompletionOptions& opts = {});
  /// @brief Active rules in creation order.
  const std::vector<Rule>& rules() const { return active_; }
  /// @brief True when every overlap up to the length limit resolved.
  bool completed() const { return completed_; }
  /// @brief Number of active rules produced by completion rather than by a defining relation.
  int derived_rules() const { return derived_; }
  FreeElem reduce(const FreeElem& e) const;
  const FreeElem& reduce_word(const Word& w) const;
  /// @brief Normal form together with a certificate of e - reduce(e) in the defining relations.
  FreeElem reduce_traced(const FreeElem& e, Certificate& trace) const;
  /// @brief Certificate of the i-th active rule in the defining relations.
  Certificate rule_certificate(std::size_t i) const;
  /// @brief Rewrites rule references in a certificate into defining relations.
  Certificate expand(const Certificate& c) const;
  /// @brief Index of the rule applied to w at its leftmost reducible position, or -1.
  int match(const Word& w, std::size_t& pos) const;
  bool is_normal(const Word& w) const;

 private:
  FreeElem reduce_raw(const FreeElem& e, Certificate& trace) const;
  int add_rule(FreeElem rel, Certificate cert, bool derived);
  const Certificate& expanded(int rid) const;
  std::vector<Rule> history_;
  std::vector<char> alive_;
  std::vector<char> derived_flag_;
  std::vector<Rule> active_;
  std::vector<int> active_ids_;
  std::unordered_map<Word, int> index_;
  std::map<std::size_t, int> lengths_;
  bool completed_ = true;
  int derived_ = 0;
  mutable std::unordered_map<Word, FreeElem> memo_;
  mutable std::unordered_map<int, Certificate> expanded_;
};

struct HardBasis;

/// @brief Finitely presented algebra over the generator alphabet.
struct Presentation {
  Level level = Level::TX;
  std::string name;
  Alphabet alphabet;
  std::vector<FreeElem> relations;
  std::vector<std::string> relation_names;
  /// @brief Relations that feed the rewriting system (A^e-ring and module relations).
  std::vector<int> oriented;
  /// @brief Inverse-type and flatness relations, handled by the membership closure.
  std::vector<int> unoriented;
  std::shared_ptr<const RewriteSystem> rewriting;
  /// @brief Symbol ids of the A and Abar letters by basis index (-1 when absent).
  std::vector<int> a_symbol;
  std::vector<int> abar_symbol;
  /// @brief Unit of A in basis coordinates.
  std::vector<Scalar> unit;
  /// @brief Normalized span of the unoriented relations, built on first membership query.
  mutable std::shared_ptr<HardBasis> hard_cache;

  int add_relation(FreeElem r, std::string name, bool orient);
  /// @brief Builds the rewriting system from the oriented relations.
  void finalize(const CompletionOptions& opts = {});
  bool is_prefix_symbol(int id) const;
  /// @brief Element a of A as a combination of A letters (unit as empty word).
  FreeElem a_elem(const std::vector<Scalar>& coords) const;
  FreeElem abar_elem(const std::vector<Scalar>& coords) const;
};

/// @brief Rewrites to normal form; throws NoRulesAtThisLevel at Hopf levels.
FreeElem normal_form(const FreeElem& e, const Presentation& p);

}  // namespace hopfalg
