#include <gtest/gtest.h>

#include "hopfalg/connections.hpp"
#include "hopfalg/io.hpp"

using namespace hopfalg;

namespace {

const std::string kData = HOPFALG_DATA_DIR;

Calculus1 gamma2() { return build_quiver_calculus({{"p", "q"}, {{"u", 0, 1}, {"w", 1, 0}}}, "gamma2"); }

QuiverData triangle_quiver() {
  QuiverData q{{"0", "1", "2"}, {}};
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t)
      if (s != t) q.edges.push_back({std::to_string(s) + std::to_string(t), s, t});
  return q;
}

std::string failing(const std::vector<CheckLine>& lines) {
  std::string s;
  for (const CheckLine& l : lines)
    if (!l.pass) s += l.name + " " + l.detail + "\n";
  return s;
}

Mat rows(std::initializer_list<std::initializer_list<Scalar>> r) {
  Mat m(static_cast<int>(r.size()), static_cast<int>(r.begin()->size()));
  int i = 0;
  for (const auto& row : r) {
    int j = 0;
    for (const Scalar& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

/// @brief One-dimensional spaces at each vertex with the given arrow scalars.
QuiverRep scalar_rep(int nv, const std::vector<int>& arrows) {
  QuiverRep r;
  r.dims.assign(nv, 1);
  for (int a : arrows) r.arrows.push_back(rows({{Scalar(a)}}));
  return r;
}

ModuleRep quiver_module(const QuiverRep& r, const Algebroid& alg, const Algebroid& tx) {
  return extend_module(translate_spec(quiver_rep_bridge(r, tx), tx.pres.alphabet, alg.pres.alphabet), alg);
}

}  // namespace

TEST(Modules, UnitAtEveryLevel) {
  const Calculus1 c = gamma2();
  const Calculus2 c2 = build_quiver_omega2(c);
  for (int l = static_cast<int>(Level::TX); l <= static_cast<int>(Level::DX); ++l) {
    const Level lv = static_cast<Level>(l);
    const Algebroid alg = present(lv, c, lv == Level::DX ? &c2 : nullptr);
    const ModuleRep m = validate_module(unit_module_spec(alg), alg.pres);
    EXPECT_EQ(m.dim, 2) << level_name(lv);
    if (lv != Level::TX) EXPECT_TRUE(induced_connection(m, alg).all_pass()) << level_name(lv);
  }
}

TEST(Modules, UnitForFreeCalculi) {
  const Calculus1 m2 = build_m2_calculus();
  const Calculus1 d6 = build_group_cocycle_calculus(d6_cocycle_data(), "d6");
  for (const Calculus1* c : {&m2, &d6})
    for (Level lv : {Level::TX, Level::BX, Level::HOmega}) {
      const Algebroid alg = present(lv, *c);
      EXPECT_NO_THROW(validate_module(unit_module_spec(alg), alg.pres)) << c->name << " " << level_name(lv);
    }
}

TEST(Modules, UnitIsTheCounitAction) {
  const Algebroid alg = present(Level::HX, gamma2());
  const ModuleRep m = validate_module(unit_module_spec(alg), alg.pres);
  for (int s = 0; s < alg.pres.alphabet.size(); ++s) {
    const FreeElem g = word_elem(letter(s));
    EXPECT_EQ(m.eval(g), alg.epsilon_action(g)) << alg.pres.alphabet.label(s);
  }
}

TEST(Modules, ViolatingFileReportsDefect) {
  const Algebroid alg = present(Level::TX, gamma2());
  const ModuleRepSpec spec = read_module_file(kData + "/gamma2_violating.module.json", alg);
  try {
    validate_module(spec, alg.pres);
    FAIL() << "expected RelationViolated";
  } catch (const RelationViolated& e) {
    EXPECT_FALSE(e.defect().is_zero());
    EXPECT_EQ(e.relation_name(), alg.pres.relation_names[e.relation()]);
    EXPECT_EQ(e.relation_name().rfind("X.right_a", 0), 0u) << e.relation_name();
    EXPECT_EQ(e.code(), "RelationViolated");
  }
}

TEST(Modules, ShapeMismatch) {
  const Algebroid alg = present(Level::TX, gamma2());
  ModuleRepSpec spec = unit_module_spec(alg);
  spec.matrices.begin()->second = Mat(3, 3);
  try {
    validate_module(spec, alg.pres);
    FAIL() << "expected ShapeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "ShapeMismatch");
  }
}

TEST(QuiverBridge, RoundTrip) {
  const Algebroid tx = present(Level::TX, gamma2());
  QuiverRep r;
  r.dims = {2, 1};
  r.arrows = {rows({{Scalar(1), Scalar(-2)}}), rows({{Scalar(3)}, {Scalar::rational(1, 2)}})};
  const ModuleRepSpec spec = quiver_rep_bridge(r, tx);
  EXPECT_EQ(spec.dim, 3);
  EXPECT_NO_THROW(validate_module(spec, tx.pres));
  const QuiverRep back = quiver_rep_from_module(spec, tx);
  EXPECT_EQ(back.dims, r.dims);
  EXPECT_EQ(back.arrows, r.arrows);
}

TEST(QuiverBridge, FileMatchesDirectConstruction) {
  const Algebroid tx = present(Level::TX, gamma2());
  const ModuleRepSpec from_file = read_module_file(kData + "/gamma2_bridge.module.json", tx);
  const ModuleRepSpec direct = quiver_rep_bridge(scalar_rep(2, {2, 3}), tx);
  EXPECT_EQ(from_file.dim, direct.dim);
  EXPECT_EQ(from_file.matrices, direct.matrices);
}

TEST(Extension, BridgeUpTheTower) {
  const Calculus1 c = gamma2();
  const Algebroid tx = present(Level::TX, c);
  for (Level lv : {Level::BX, Level::IBX, Level::HX}) {
    const Algebroid alg = present(lv, c);
    const ModuleRep m = quiver_module(scalar_rep(2, {2, 3}), alg, tx);
    const ConnectionData cd = induced_connection(m, alg);
    EXPECT_TRUE(cd.all_pass()) << level_name(lv) << "\n" << failing(cd.checks);
    ASSERT_TRUE(cd.nabla.has_value());
    ASSERT_TRUE(cd.sigma.has_value());
  }
}

TEST(Extension, DegenerateArrowStopsAtBx) {
  const Calculus1 c = gamma2();
  const Algebroid tx = present(Level::TX, c);
  const Algebroid bx = present(Level::BX, c);
  EXPECT_NO_THROW(quiver_module(scalar_rep(2, {1, 0}), bx, tx));
  const Algebroid hx = present(Level::HX, c);
  try {
    quiver_module(scalar_rep(2, {1, 0}), hx, tx);
    FAIL() << "expected NoCompatibleExtension";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "NoCompatibleExtension");
  }
}

TEST(Extension, RestrictToOmegaLevels) {
  const Calculus1 c = gamma2();
  const Algebroid tx = present(Level::TX, c);
  const Algebroid hx = present(Level::HX, c);
  const Algebroid ho = present(Level::HOmega, c);
  const ModuleRep up = quiver_module(scalar_rep(2, {2, 3}), hx, tx);
  const ModuleRep down = restrict_module(up, hx, ho);
  EXPECT_EQ(down.level, Level::HOmega);
  EXPECT_TRUE(induced_connection(down, ho).all_pass());
}

TEST(Connection, LeibnizIdentitiesExact) {
  const Calculus1 c = gamma2();
  const Algebroid tx = present(Level::TX, c);
  const Algebroid alg = present(Level::BX, c);
  const ModuleRep m = quiver_module(scalar_rep(2, {5, -1}), alg, tx);
  const ConnectionData cd = induced_connection(m, alg);
  bool saw_left = false, saw_right = false;
  for (const CheckLine& l : cd.checks) {
    saw_left = saw_left || l.name.find("leibniz_left") != std::string::npos;
    saw_right = saw_right || l.name.find("leibniz_right") != std::string::npos;
  }
  EXPECT_TRUE(saw_left);
  EXPECT_TRUE(saw_right);
  EXPECT_TRUE(cd.all_pass()) << failing(cd.checks);
}

TEST(Connection, TxHasNoConnection) {
  const Algebroid tx = present(Level::TX, gamma2());
  const ModuleRep m = validate_module(unit_module_spec(tx), tx.pres);
  EXPECT_THROW(induced_connection(m, tx), Error);
}

TEST(Tensor, PairsOfGammaTwoModules) {
  const Calculus1 c = gamma2();
  const Algebroid tx = present(Level::TX, c);
  const Algebroid alg = present(Level::HX, c);
  std::vector<ModuleRep> mods{validate_module(unit_module_spec(alg), alg.pres),
                              quiver_module(scalar_rep(2, {2, 3}), alg, tx),
                              quiver_module(scalar_rep(2, {-1, 4}), alg, tx),
                              extend_module(read_module_file(kData + "/gamma2_bridge2.module.json", alg), alg)};
  int pairs = 0;
  for (const ModuleRep& m : mods)
    for (const ModuleRep& n : mods) {
      const TensorModule t = tensor_modules(m, n, alg);
      EXPECT_TRUE(t.all_pass()) << failing(t.checks);
      EXPECT_EQ(t.rep.dim, t.space.result->dim);
      ++pairs;
    }
  EXPECT_GE(pairs, 10);
}

TEST(Tensor, UnitIsNeutral) {
  const Calculus1 c = gamma2();
  const Algebroid tx = present(Level::TX, c);
  const Algebroid alg = present(Level::BX, c);
  const ModuleRep u = validate_module(unit_module_spec(alg), alg.pres);
  const ModuleRep m = quiver_module(scalar_rep(2, {2, 3}), alg, tx);
  EXPECT_EQ(tensor_modules(u, m, alg).rep.dim, m.dim);
  EXPECT_EQ(tensor_modules(m, u, alg).rep.dim, m.dim);
}

TEST(Tensor, MismatchedLevels) {
  const Calculus1 c = gamma2();
  const Algebroid bx = present(Level::BX, c);
  const Algebroid hx = present(Level::HX, c);
  const ModuleRep a = validate_module(unit_module_spec(bx), bx.pres);
  const ModuleRep b = validate_module(unit_module_spec(hx), hx.pres);
  EXPECT_THROW(tensor_modules(a, b, hx), Error);
}

TEST(Hom, AdjunctionMapsAreModuleMaps) {
  const Calculus1 c = gamma2();
  const Algebroid tx = present(Level::TX, c);
  const Algebroid alg = present(Level::HX, c);
  const ModuleRep u = validate_module(unit_module_spec(alg), alg.pres);
  const ModuleRep m = quiver_module(scalar_rep(2, {2, 3}), alg, tx);
  const ModuleRep n = quiver_module(scalar_rep(2, {-1, 4}), alg, tx);
  for (const auto& [a, b] : std::vector<std::pair<const ModuleRep*, const ModuleRep*>>{{&m, &n}, {&u, &m}, {&m, &m}}) {
    const HomModules h = hom_modules(*a, *b, alg);
    EXPECT_TRUE(h.all_pass()) << failing(h.checks);
    EXPECT_EQ(h.right_rep.dim, static_cast<int>(h.right_hom.basis.size()));
  }
}

TEST(Hom, NeedsHopfLevel) {
  const Algebroid alg = present(Level::IBX, gamma2());
  const ModuleRep u = validate_module(unit_module_spec(alg), alg.pres);
  try {
    hom_modules(u, u, alg);
    FAIL() << "expected LevelTooLow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "LevelTooLow");
  }
}

TEST(Curvature, FlatModulesAtDx) {
  const Calculus1 c = build_quiver_calculus(triangle_quiver(), "triangle");
  const Calculus2 c2 = build_quiver_omega2(c);
  const Algebroid tx = present(Level::TX, c);
  const Algebroid dx = present(Level::DX, c, &c2);
  for (const ModuleRep& m : {validate_module(unit_module_spec(dx), dx.pres),
                             extend_module(read_module_file(kData + "/triangle_flat.module.json", dx), dx)}) {
    const CurvatureReport r = curvature_and_flatness(m, dx);
    EXPECT_TRUE(r.flat);
    EXPECT_TRUE(r.curvature.is_zero());
    ASSERT_TRUE(r.extendable.has_value());
    EXPECT_TRUE(*r.extendable);
  }
}

TEST(Curvature, CurvedModuleBelowDx) {
  const Calculus1 c = build_quiver_calculus(triangle_quiver(), "triangle");
  const Calculus2 c2 = build_quiver_omega2(c);
  const Algebroid tx = present(Level::TX, c);
  const Algebroid hx = present(Level::HX, c);
  // Around the triangle 0 -> 1 -> 2 -> 0 the arrows multiply to 2, against 1 the other way round.
  const ModuleRep m = quiver_module(scalar_rep(3, {1, 1, 1, 1, 2, 1}), hx, tx);
  const CurvatureReport r = curvature_and_flatness(m, hx, &c2);
  EXPECT_FALSE(r.flat);
  EXPECT_FALSE(r.curvature.is_zero());
  const Algebroid dx = present(Level::DX, c, &c2);
  EXPECT_THROW(extend_module(m.spec(), dx), Error);
}

TEST(Curvature, NeedsSecondOrder) {
  const Algebroid hx = present(Level::HX, gamma2());
  const ModuleRep u = validate_module(unit_module_spec(hx), hx.pres);
  try {
    curvature_and_flatness(u, hx);
    FAIL() << "expected MissingSecondOrder";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "MissingSecondOrder");
  }
}
