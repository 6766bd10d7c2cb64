#include <gtest/gtest.h>

#include <random>

#include "hopfalg/algebroid.hpp"
#include "hopfalg/membership.hpp"

using namespace hopfalg;

namespace {

Calculus1 gamma2() { return build_quiver_calculus({{"p", "q"}, {{"u", 0, 1}, {"w", 1, 0}}}, "gamma2"); }

int sym(const Presentation& p, const std::string& label) {
  for (int i = 0; i < p.alphabet.size(); ++i)
    if (p.alphabet.label(i) == label) return i;
  ADD_FAILURE() << "no symbol " << label;
  return 0;
}

FreeElem w(const Presentation& p, std::initializer_list<const char*> labels, const Scalar& c = Scalar(1)) {
  Word word;
  for (const char* l : labels) word += letter(sym(p, l));
  return word_elem(word, c);
}

/// @brief Random element with up to three terms of length at most len over the whole alphabet.
FreeElem random_elem(std::mt19937& rng, const Presentation& p, int len) {
  std::uniform_int_distribution<int> nterms(1, 3), length(0, len), symbol(0, p.alphabet.size() - 1), coef(-3, 3);
  FreeElem e;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Word wd;
    const int l = length(rng);
    for (int k = 0; k < l; ++k) wd += letter(symbol(rng));
    add_term(e, wd, Scalar(coef(rng)));
  }
  return e;
}

}  // namespace

TEST(Words, GradedLexOrder) {
  const Algebroid alg = present(Level::BX, gamma2());
  const Presentation& p = alg.pres;
  for (int i = 1; i < p.alphabet.size(); ++i)
    EXPECT_LE(static_cast<int>(p.alphabet.symbol(i - 1).family), static_cast<int>(p.alphabet.symbol(i).family));
  WordLess less;
  EXPECT_TRUE(less(letter(5), letter(1) + letter(1)));
  EXPECT_TRUE(less(letter(1) + letter(2), letter(2) + letter(1)));
  FreeElem e = w(p, {"X[<u]"}) + w(p, {"A[p]", "A[q]"}) + w(p, {"A[q]"});
  EXPECT_EQ(leading_word(e), letter(sym(p, "A[p]")) + letter(sym(p, "A[q]")));
  EXPECT_EQ(max_length(e), 2);
  FreeElem z = w(p, {"A[p]"}) - w(p, {"A[p]"});
  EXPECT_TRUE(z.empty());
}

TEST(NormalForm, ArrowTimesSourceIdempotent) {
  const Algebroid alg = present(Level::TX, gamma2());
  const Presentation& p = alg.pres;
  // The unit relation orients f_q to 1 - f_p, so u - f_q normalizes to u - 1 + f_p.
  const FreeElem nf = normal_form(w(p, {"X[<u]", "A[p]"}), p);
  EXPECT_EQ(nf, normal_form(w(p, {"X[<u]"}) - w(p, {"A[q]"}), p));
  EXPECT_EQ(nf, w(p, {"X[<u]"}) - word_elem(Word()) + w(p, {"A[p]"}));
}

TEST(NormalForm, UnitIsNeutral) {
  const Algebroid alg = present(Level::TX, gamma2());
  const Presentation& p = alg.pres;
  const FreeElem x = w(p, {"X[<u]"});
  EXPECT_EQ(normal_form(x * word_elem(Word()), p), x);
}

TEST(NormalForm, MatrixCommutation) {
  const Algebroid alg = present(Level::TX, build_m2_calculus());
  const Presentation& p = alg.pres;
  // f_s E11 = E11 f_s + [E12, E11] and [E12, E11] = -E12.
  EXPECT_EQ(normal_form(w(p, {"X[f_s]", "A[E11]"}), p), w(p, {"A[E11]", "X[f_s]"}) - w(p, {"A[E12]"}));
}

TEST(NormalForm, RefusedAtHopfLevels) {
  const Algebroid alg = present(Level::HX, gamma2());
  try {
    normal_form(w(alg.pres, {"X[<u]"}), alg.pres);
    FAIL() << "expected NoRulesAtThisLevel";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "NoRulesAtThisLevel");
  }
}

TEST(Membership, RelationIsMember) {
  const Algebroid alg = present(Level::BX, gamma2());
  const Presentation& p = alg.pres;
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    const MembershipResult res = ideal_membership(p.relations[r], p, max_length(p.relations[r]));
    ASSERT_TRUE(res.member()) << p.relation_names[r];
    EXPECT_EQ(recombine(res.certificate, p.relations), p.relations[r]);
  }
}

TEST(Membership, RawRelationHasUnitCertificate) {
  const Algebroid alg = present(Level::TX, gamma2());
  const Presentation& p = alg.pres;
  MembershipOptions raw;
  raw.use_rewriting = false;
  const MembershipResult res = ideal_membership(p.relations[6], p, max_length(p.relations[6]), raw);
  ASSERT_TRUE(res.member());
  ASSERT_EQ(res.certificate.size(), 1u);
  EXPECT_EQ(res.certificate.begin()->first, std::make_tuple(Word(), 6, Word()));
}

TEST(Membership, VertexIdempotentIsNotInTheIdeal) {
  const Algebroid alg = present(Level::BX, gamma2());
  const MembershipResult res = ideal_membership(w(alg.pres, {"A[p]"}), alg.pres, 4);
  EXPECT_EQ(res.status, MemberStatus::Unknown);
  MembershipOptions raw;
  raw.use_rewriting = false;
  EXPECT_EQ(ideal_membership(w(alg.pres, {"A[p]"}), alg.pres, 4, raw).status, MemberStatus::Unknown);
}

TEST(Membership, BoundTooSmall) {
  const Algebroid alg = present(Level::TX, gamma2());
  try {
    ideal_membership(w(alg.pres, {"X[<u]", "A[p]"}), alg.pres, 1);
    FAIL() << "expected BoundTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "BoundTooSmall");
  }
}

TEST(Membership, PathAlgebraRelationImage) {
  const Algebroid alg = present(Level::TX, gamma2());
  const Presentation& p = alg.pres;
  // The arrow u maps to X[<u] - f_q; the path relation u f_p = u must hold for the image.
  const FreeElem img = w(p, {"X[<u]"}) - w(p, {"A[q]"});
  const MembershipResult res = equal_mod_ideal(img * w(p, {"A[p]"}), img, p, 3);
  ASSERT_TRUE(res.member());
  EXPECT_EQ(recombine(res.certificate, p.relations), img * w(p, {"A[p]"}) - img);
}

TEST(Membership, EqualElements) {
  const Algebroid alg = present(Level::BX, gamma2());
  const FreeElem x = w(alg.pres, {"XO[<u,>w]", "A[p]"});
  EXPECT_TRUE(equal_mod_ideal(x, x, alg.pres, 2).member());
}

TEST(Membership, DifferentProductsAreNotIdentified) {
  const Algebroid alg = present(Level::TX, gamma2());
  const Presentation& p = alg.pres;
  // u f_p = u - f_q while f_p u = 0, so the two orders differ.
  const MembershipResult res = equal_mod_ideal(w(p, {"X[<u]", "A[p]"}), w(p, {"A[p]", "X[<u]"}), p, 4);
  EXPECT_EQ(res.status, MemberStatus::Unknown);
}

TEST(TensorMembership, MiddleRelationsAreMembers) {
  const Algebroid alg = present(Level::BX, gamma2());
  const Presentation& p = alg.pres;
  const Word x = letter(sym(p, "X[<u]")), y = letter(sym(p, "X[<w]"));
  for (TensorKind k : {TensorKind::Coring, TensorKind::Diamond, TensorKind::Odot, TensorKind::Aop}) {
    const TensorElem t = middle_relation(p, k, x, y, 0);
    const TensorMembershipResult res = tensor_membership(t, p, k, 3);
    ASSERT_TRUE(res.member()) << tensor_kind_name(k);
    EXPECT_EQ(recombine_tensor(res.certificate, p, k), t);
  }
}

TEST(TensorMembership, MiddleFamilies) {
  const Algebroid alg = present(Level::BX, gamma2());
  const Presentation& p = alg.pres;
  const Word e;
  const Word a = letter(p.a_symbol[0]), abar = letter(p.abar_symbol[0]);
  const TensorElem coring = middle_relation(p, TensorKind::Coring, e, e, 0);
  EXPECT_EQ(coring, (TensorElem{{{abar, e}, Scalar(1)}, {{e, a}, Scalar(-1)}}));
  const TensorElem odot = middle_relation(p, TensorKind::Odot, e, e, 0);
  EXPECT_EQ(odot, (TensorElem{{{a, e}, Scalar(1)}, {{e, a}, Scalar(-1)}}));
  const TensorElem aop = middle_relation(p, TensorKind::Aop, e, e, 0);
  EXPECT_EQ(aop, (TensorElem{{{abar, e}, Scalar(1)}, {{e, abar}, Scalar(-1)}}));
}

TEST(TensorMembership, CoringMiddleIsNotAnOdotMember) {
  const Algebroid alg = present(Level::BX, gamma2());
  const Presentation& p = alg.pres;
  const Word x = letter(sym(p, "X[<u]"));
  const TensorElem t = middle_relation(p, TensorKind::Coring, x, x, 0);
  EXPECT_EQ(tensor_membership(t, p, TensorKind::Odot, 3).status, MemberStatus::Unknown);
}

TEST(RewriteProperty, NormalFormIsIdempotentAndCertified) {
  std::mt19937 rng(99);
  for (Level lv : {Level::TX, Level::BOmega, Level::BX}) {
    const Algebroid alg = present(lv, gamma2());
    const Presentation& p = alg.pres;
    for (int t = 0; t < 40; ++t) {
      const FreeElem e = random_elem(rng, p, 3);
      Certificate trace;
      const FreeElem nf = p.rewriting->reduce_traced(e, trace);
      EXPECT_EQ(nf, normal_form(e, p));
      EXPECT_EQ(normal_form(nf, p), nf);
      EXPECT_EQ(recombine(p.rewriting->expand(trace), p.relations), e - nf);
      for (const auto& [word, c] : nf) EXPECT_TRUE(p.rewriting->is_normal(word));
    }
  }
}

TEST(RewriteProperty, RulesDecreaseAndAreDerived) {
  for (Level lv : {Level::TX, Level::BOmega, Level::BX}) {
    const Algebroid alg = present(lv, build_m2_calculus());
    const Presentation& p = alg.pres;
    WordLess less;
    for (std::size_t i = 0; i < p.rewriting->rules().size(); ++i) {
      const Rule& r = p.rewriting->rules()[i];
      for (const auto& [word, c] : r.rhs) EXPECT_TRUE(less(word, r.lhs));
      FreeElem rel = word_elem(r.lhs) - r.rhs;
      EXPECT_EQ(recombine(p.rewriting->rule_certificate(i), p.relations), rel);
    }
  }
}

TEST(RewriteProperty, EqualNormalFormsAreIdealEqual) {
  std::mt19937 rng(5);
  const Algebroid alg = present(Level::BX, gamma2());
  const Presentation& p = alg.pres;
  int agreed = 0;
  for (int t = 0; t < 30; ++t) {
    const FreeElem a = random_elem(rng, p, 2);
    // b is a rewritten by one random relation instance, so it is ideal-equal to a.
    const int r = static_cast<int>(rng() % p.relations.size());
    const FreeElem b = a + sandwich(Word(), p.relations[r], Word());
    const int bound = std::max(max_length(a), max_length(b)) + 2;
    ASSERT_EQ(normal_form(a, p), normal_form(b, p));
    const MembershipResult res = equal_mod_ideal(a, b, p, bound);
    EXPECT_TRUE(res.member());
    agreed += res.member();
  }
  EXPECT_EQ(agreed, 30);
}
