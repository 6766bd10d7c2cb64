#pragma once

#include <string>
#include <vector>

#include "hopfalg/presentation.hpp"

namespace hopfalg {

enum class MemberStatus { Member, Unknown };

/// @brief Middle identification used for a tensor square of the presented algebra.
enum class TensorKind { Coring, Diamond, Odot, Aop };

const char* tensor_kind_name(TensorKind k);

struct MembershipOptions {
  std::size_t max_columns = 300000;  ///< closure size cap; exceeding it yields Unknown
  /// @brief Reduce by the rewriting system first; when false, span raw relation instances u r v.
  bool use_rewriting = true;
};

struct MembershipResult {
  MemberStatus status = MemberStatus::Unknown;
  Certificate certificate;
  std::string note;
  std::size_t rows = 0;
  std::size_t columns = 0;
  bool member() const { return status == MemberStatus::Member; }
};

/// @brief One summand of a tensor certificate.
///
/// A relation entry replaces factor slot of ctx by u r v. A middle entry stands for the middle
/// relation of the tensor kind with x = ctx[slot], y = ctx[slot + 1] and basis element rel of A.
struct TensorCertTerm {
  bool middle = false;
  std::vector<Word> ctx;
  int slot = 0;
  Word u;
  int rel = 0;
  Word v;
  Scalar c;
};

struct TensorMembershipResult {
  MemberStatus status = MemberStatus::Unknown;
  std::vector<TensorCertTerm> certificate;
  std::string note;
  std::size_t rows = 0;
  std::size_t columns = 0;
  bool member() const { return status == MemberStatus::Member; }
};

/// @brief Decides membership of e in the two-sided ideal up to word length bound; sound, not complete.
///
/// Throws BoundTooSmall when e has a word longer than bound.
MembershipResult ideal_membership(const FreeElem& e, const Presentation& p, int bound,
                                  const MembershipOptions& opts = {});
MembershipResult equal_mod_ideal(const FreeElem& a, const FreeElem& b, const Presentation& p, int bound,
                                 const MembershipOptions& opts = {});
/// @brief Membership in the span of relations in any factor and the middle relations between factors.
TensorMembershipResult tensor_membership(const TensorElem& e, const Presentation& p, TensorKind kind, int bound,
                                         const MembershipOptions& opts = {});

/// @brief The middle relation x . y with basis element a for the given kind, as a tensor.
TensorElem middle_relation(const Presentation& p, TensorKind kind, const Word& x, const Word& y, int a);
/// @brief Expands a tensor certificate into the free tensor algebra.
TensorElem recombine_tensor(const std::vector<TensorCertTerm>& cert, const Presentation& p, TensorKind kind);

}  // namespace hopfalg
