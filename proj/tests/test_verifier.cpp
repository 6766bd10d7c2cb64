#include <gtest/gtest.h>

#include "json.hpp"
#include "hopfalg/verifier.hpp"

using namespace hopfalg;

namespace {

Calculus1 gamma2() { return build_quiver_calculus({{"p", "q"}, {{"u", 0, 1}, {"w", 1, 0}}}, "gamma2"); }

int sym(const Presentation& p, const std::string& label) {
  for (int i = 0; i < p.alphabet.size(); ++i)
    if (p.alphabet.label(i) == label) return i;
  ADD_FAILURE() << "no symbol " << label;
  return 0;
}

FreeElem w(const Presentation& p, std::initializer_list<const char*> labels) {
  Word word;
  for (const char* l : labels) word += letter(sym(p, l));
  return word_elem(word);
}

std::string failing(const AxiomCheck& c) {
  std::string s = c.axiom_id + " " + status_name(c.status);
  for (const CheckItem& i : c.open) s += "\n  " + i.name + " " + status_name(i.status) + " " + i.note;
  return s;
}

}  // namespace

TEST(Status, Combine) {
  EXPECT_EQ(combine(CheckStatus::Pass, CheckStatus::Pass), CheckStatus::Pass);
  EXPECT_EQ(combine(CheckStatus::Pass, CheckStatus::Unknown), CheckStatus::Unknown);
  EXPECT_EQ(combine(CheckStatus::Unknown, CheckStatus::Fail), CheckStatus::Fail);
  EXPECT_EQ(combine(CheckStatus::Fail, CheckStatus::Pass), CheckStatus::Fail);
  EXPECT_STREQ(status_name(CheckStatus::Unknown), "UNKNOWN");
}

TEST(Axioms, PerLevel) {
  EXPECT_TRUE(axioms_for_level(Level::TX).empty());
  const auto bx = axioms_for_level(Level::BX);
  EXPECT_EQ(bx.size(), 9u);
  EXPECT_EQ(bx.front(), "delta_well_defined");
  const auto ho = axioms_for_level(Level::HOmega);
  EXPECT_NE(std::find(ho.begin(), ho.end(), "s_involutive"), ho.end());
  const auto hx = axioms_for_level(Level::HX);
  EXPECT_EQ(std::find(hx.begin(), hx.end(), "s_involutive"), hx.end());
  const auto dx = axioms_for_level(Level::DX);
  EXPECT_NE(std::find(dx.begin(), dx.end(), "derived_flat_identities"), dx.end());
}

TEST(Check, BialgebroidAxiomsOnGammaTwo) {
  for (Level lv : {Level::BOmega, Level::BX}) {
    const Algebroid alg = present(lv, gamma2());
    for (const std::string& id : axioms_for_level(lv)) {
      const AxiomCheck c = check(id, alg, id == "coassoc" ? 5 : 4);
      EXPECT_EQ(c.status, CheckStatus::Pass) << level_name(lv) << " " << failing(c);
      EXPECT_GT(c.items, 0u) << id;
    }
  }
}

TEST(Check, HopfAxiomsOnGammaTwo) {
  for (Level lv : {Level::HOmega, Level::HX}) {
    const Algebroid alg = present(lv, gamma2());
    for (const std::string& id : axioms_for_level(lv)) {
      const AxiomCheck c = check(id, alg, 6);
      EXPECT_EQ(c.status, CheckStatus::Pass) << level_name(lv) << " " << failing(c);
    }
  }
}

TEST(Check, MatrixCalculusHopf) {
  const Algebroid alg = present(Level::HX, build_m2_calculus());
  for (const char* id : {"s_well_defined", "antipode_left", "antipode_right", "s_s_inv_inverse"}) {
    const AxiomCheck c = check(id, alg, 4);
    EXPECT_EQ(c.status, CheckStatus::Pass) << failing(c);
  }
}

TEST(Check, MissingTables) {
  const Algebroid tx = present(Level::TX, gamma2());
  try {
    check("coassoc", tx, 4);
    FAIL() << "expected MissingData";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "MissingData");
  }
  const Algebroid bx = present(Level::BX, gamma2());
  EXPECT_THROW(check("antipode_left", bx, 4), Error);
}

TEST(Check, SmallBoundIsUnknownNeverPass) {
  const Algebroid alg = present(Level::BX, gamma2());
  const AxiomCheck c = check("takeuchi", alg, 1);
  EXPECT_EQ(c.status, CheckStatus::Unknown);
  EXPECT_FALSE(c.open.empty());
}

TEST(AntipodeElement, DiamondMember) {
  const Algebroid alg = present(Level::HX, gamma2());
  const Presentation& p = alg.pres;
  for (const FreeElem& b : {w(p, {"X[<u]"}), w(p, {"XO[<u,>w]"}), w(p, {"A[p]", "X[<w]"})}) {
    const TensorElem l = antipode_left_element(alg, b);
    EXPECT_TRUE(tensor_membership(l, p, TensorKind::Diamond, 5).member());
    const TensorElem r = antipode_right_element(alg, b);
    EXPECT_TRUE(tensor_membership(r, p, TensorKind::Diamond, 5).member());
  }
}

TEST(FlatElements, QuiverWithZeroOmegaTwo) {
  const Calculus1 c = gamma2();
  const Calculus2 c2 = build_quiver_omega2(c);
  ASSERT_EQ(c2.omega2->dim, 0);
  const Algebroid alg = present(Level::DX, c, &c2);
  // Each derived identity is indexed by a basis vector of Omega2, so none remain here.
  EXPECT_TRUE(flat_level_elements(alg, "derived").empty());
  EXPECT_EQ(check("derived_flat_identities", alg, 8).status, CheckStatus::Pass);
  const AxiomCheck flat = check("flatness_consequence", alg, 4);
  EXPECT_EQ(flat.status, CheckStatus::Pass) << failing(flat);
}

TEST(Suite, GammaTwoTower) {
  SuiteOptions opts;
  opts.levels = {Level::TX, Level::BOmega, Level::BX, Level::IBOmega, Level::IBX, Level::HOmega, Level::HX};
  const SuiteReport r = run_suite(gamma2(), nullptr, opts);
  EXPECT_EQ(r.status, CheckStatus::Pass) << r.to_text();
  EXPECT_FALSE(r.calculus_checks.empty());
}

TEST(Suite, ReportsAreDeterministic) {
  SuiteOptions opts;
  opts.levels = {Level::BX, Level::HX};
  opts.level_bounds = {{Level::HX, 5}};
  const SuiteReport a = run_suite(gamma2(), nullptr, opts);
  const SuiteReport b = run_suite(gamma2(), nullptr, opts);
  EXPECT_EQ(a.to_text(), b.to_text());
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.to_text().find("seconds"), std::string::npos);
  EXPECT_NE(a.to_text(true).find("seconds"), std::string::npos);
  const nlohmann::json j = nlohmann::json::parse(a.to_json());
  EXPECT_EQ(j.at("status"), "PASS");
  bool saw_hx5 = false;
  for (const AxiomCheck& c : a.checks)
    if (c.level == Level::HX) saw_hx5 = saw_hx5 || c.bound == 5;
  EXPECT_TRUE(saw_hx5);
}

TEST(Suite, CorruptedDualityFailsBeforeLevels) {
  Calculus1 bad = gamma2();
  bad.duality.ev(0, 0) = 5;
  SuiteOptions opts;
  opts.levels = {Level::BX};
  const SuiteReport r = run_suite(bad, nullptr, opts);
  EXPECT_EQ(r.status, CheckStatus::Fail);
  EXPECT_TRUE(r.checks.empty());
  EXPECT_NE(r.to_text().find("FAIL"), std::string::npos);
}

TEST(Suite, BoundOneIsUnknown) {
  SuiteOptions opts;
  opts.levels = {Level::BX};
  opts.bound = 1;
  const SuiteReport r = run_suite(gamma2(), nullptr, opts);
  EXPECT_EQ(r.status, CheckStatus::Unknown);
}

TEST(Suite, AxiomSelection) {
  SuiteOptions opts;
  opts.levels = {Level::BOmega, Level::HOmega};
  opts.axioms = {"coassoc", "s_involutive"};
  const SuiteReport r = run_suite(build_m2_calculus(), nullptr, opts);
  ASSERT_EQ(r.checks.size(), 3u);
  EXPECT_EQ(r.checks[0].axiom_id, "coassoc");
  EXPECT_EQ(r.checks[2].axiom_id, "s_involutive");
  EXPECT_EQ(r.status, CheckStatus::Pass) << r.to_text();
}

TEST(Suite, DxWithoutSecondOrderIsNoted) {
  SuiteOptions opts;
  opts.levels = {Level::DX};
  const SuiteReport r = run_suite(gamma2(), nullptr, opts);
  EXPECT_TRUE(r.checks.empty());
  EXPECT_FALSE(r.notes.empty());
  EXPECT_EQ(r.status, CheckStatus::Unknown);
}
