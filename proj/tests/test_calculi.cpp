#include <gtest/gtest.h>

#include <functional>

#include "hopfalg/calculus.hpp"
#include "hopfalg/io.hpp"

using namespace hopfalg;

namespace {

QuiverData gamma2_quiver() { return {{"p", "q"}, {{"u", 0, 1}, {"w", 1, 0}}}; }

QuiverData triangle_quiver() {
  QuiverData q{{"0", "1", "2"}, {}};
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t)
      if (s != t) q.edges.push_back({std::to_string(s) + std::to_string(t), s, t});
  return q;
}

int label_index(const std::vector<std::string>& labels, const std::string& l) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == l) return static_cast<int>(i);
  ADD_FAILURE() << "missing label " << l;
  return -1;
}

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

Vec inner_d(const Calculus1& c, const Vec& a) {
  return sub(c.omega->act_right(*c.inner_theta, a), c.omega->act_left(a, *c.inner_theta));
}

/// @brief Group of order two with the sign representation on a line and theta = 1.
GroupCocycleData sign_line() {
  GroupCocycleData g;
  g.group.elements = {"e", "g"};
  g.group.table = {{0, 1}, {1, 0}};
  g.lambda_labels = {"l"};
  Mat minus(1, 1);
  minus(0, 0) = -1;
  g.rep = extend_representation(g.group, {{1, minus}});
  for (const auto& m : g.rep) g.zeta.push_back(sub(m.apply({Scalar(1)}), {Scalar(1)}));
  return g;
}

}  // namespace

TEST(QuiverCalculus, GammaTwoDifferential) {
  const Calculus1 c = build_quiver_calculus(gamma2_quiver());
  const int u = label_index(c.omega->labels, ">u"), w = label_index(c.omega->labels, ">w");
  Vec expect(2);
  expect[u] = -1;
  expect[w] = 1;
  EXPECT_EQ(c.d(c.base->basis(0)), expect);
  EXPECT_TRUE(c.surjective);
}

TEST(QuiverCalculus, SinglePointIsZero) {
  const Calculus1 c = build_quiver_calculus({{"o"}, {}});
  EXPECT_EQ(c.omega->dim, 0);
  EXPECT_TRUE(is_zero(c.d(c.base->unit())));
  EXPECT_TRUE(validate_calculus(c).all_pass());
}

TEST(QuiverCalculus, EvaluationsOnAnArrow) {
  const Calculus1 c = build_quiver_calculus(gamma2_quiver());
  const int u = label_index(c.omega->labels, ">u"), ub = label_index(c.dual()->labels, "<u");
  EXPECT_EQ(c.duality.eval(unit_vec(2, ub), unit_vec(2, u)), c.base->basis(1));
  EXPECT_EQ(c.duality.under_eval(unit_vec(2, u), unit_vec(2, ub)), c.base->basis(0));
}

TEST(QuiverCalculus, UnknownVertex) {
  EXPECT_EQ(error_code([] { build_quiver_calculus({{"p"}, {{"u", 0, 3}}}); }), "UnknownVertex");
}

TEST(QuiverCalculus, SurjectivityFlag) {
  EXPECT_TRUE(build_quiver_calculus(triangle_quiver()).surjective);
  EXPECT_FALSE(build_quiver_calculus({{"p", "q"}, {{"u", 0, 1}, {"v", 0, 1}}}).surjective);
  EXPECT_FALSE(build_quiver_calculus({{"p", "q"}, {{"u", 0, 1}, {"l", 0, 0}}}).surjective);
}

TEST(QuiverCalculus, InnerWithSumOfArrows) {
  const Calculus1 c = build_quiver_calculus(triangle_quiver());
  ASSERT_TRUE(c.inner_theta.has_value());
  EXPECT_EQ(*c.inner_theta, Vec(6, Scalar(1)));
  for (int i = 0; i < c.base->dim(); ++i) EXPECT_EQ(c.d(c.base->basis(i)), inner_d(c, c.base->basis(i)));
}

TEST(DerivationCalculus, ZeroDerivation) {
  const AlgebraPtr a = new_matrix_algebra(2);
  const Calculus1 c = build_derivation_calculus(a, Mat(4, 4));
  EXPECT_TRUE(validate_calculus(c).all_pass());
  EXPECT_EQ(c.omega->dim, 4);
}

TEST(DerivationCalculus, FunctionsOnTwoPointsAdmitOnlyZero) {
  // Unknown d(r, s) sits at r * n + s; each row is one coordinate of d(e_i e_j) - d(e_i) e_j - e_i d(e_j).
  const AlgebraPtr a = new_function_algebra({"p", "q"});
  const int n = a->dim();
  Mat sys(n * n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < n; ++r) {
        const int row = (i * n + j) * n + r;
        for (int k = 0; k < n; ++k) sys(row, r * n + k) += a->product(i, j)[k];
        for (int s = 0; s < n; ++s) {
          sys(row, s * n + i) -= a->right_mult(j)(r, s);
          sys(row, s * n + j) -= a->left_mult(i)(r, s);
        }
      }
  EXPECT_TRUE(nullspace(sys).empty());
  Mat bad(2, 2);
  bad(0, 0) = 1;
  EXPECT_EQ(error_code([&] { build_derivation_calculus(a, bad); }), "LeibnizViolation");
}

TEST(DerivationCalculus, InnerDerivationOnMatrices) {
  const AlgebraPtr a = new_matrix_algebra(2);
  const int e12 = a->index_of("E12");
  Mat d(4, 4);
  for (int j = 0; j < 4; ++j) {
    const Vec v = sub(a->product(e12, j), a->product(j, e12));
    for (int i = 0; i < 4; ++i) d(i, j) = v[i];
  }
  const Calculus1 c = build_derivation_calculus(a, d);
  EXPECT_TRUE(validate_calculus(c).all_pass());
}

TEST(InnerCalculus, MatrixDifferential) {
  const Calculus1 c = build_m2_calculus();
  Vec expect(8);
  expect[label_index(c.omega->labels, "s.E12")] = -1;
  expect[label_index(c.omega->labels, "t.E21")] = 1;
  EXPECT_EQ(c.d(c.base->basis(c.base->index_of("E11"))), expect);
  EXPECT_TRUE(validate_calculus(c).all_pass());
}

TEST(InnerCalculus, ZeroThetaGivesZeroCalculus) {
  const Calculus1 c = build_matrix_inner_calculus(2, Vec(8));
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(is_zero(c.d(c.base->basis(i))));
}

TEST(InnerCalculus, FileMatchesBuiltIn) {
  const CalculusBundle b = read_calculus_file(std::string(HOPFALG_DATA_DIR) + "/m2.matrix_inner.json");
  const Calculus1 c = build_m2_calculus();
  EXPECT_EQ(b.c1.d0, c.d0);
  EXPECT_EQ(b.c1.duality.ev, c.duality.ev);
}

TEST(GroupCalculus, DihedralDifferential) {
  const Calculus1 c = build_group_cocycle_calculus(d6_cocycle_data());
  const Scalar s = Scalar::sqrt(), half = Scalar::rational(1, 2);
  Vec da(12), db(12);
  // The action of a is rotation through 120 degrees, so zeta(a) = a>theta - theta.
  da[label_index(c.omega->labels, "xi@a")] = half * (Scalar(-3) - s);
  da[label_index(c.omega->labels, "tau@a")] = half * (s - Scalar(3));
  db[label_index(c.omega->labels, "tau@b")] = -2;
  EXPECT_EQ(c.d(c.base->basis(c.base->index_of("a"))), da);
  EXPECT_EQ(c.d(c.base->basis(c.base->index_of("b"))), db);
  EXPECT_TRUE(validate_calculus(c).all_pass());
}

TEST(GroupCalculus, SixtyDegreeRotationIsRejected) {
  const GroupData g = dihedral6();
  EXPECT_EQ(error_code([&] { extend_representation(g, {{1, d6_sixty_degree_matrix()}}); }), "NotARepresentation");
}

TEST(GroupCalculus, ZeroCocycle) {
  GroupCocycleData g = d6_cocycle_data();
  for (auto& z : g.zeta) z = Vec(2);
  const Calculus1 c = build_group_cocycle_calculus(g);
  for (int i = 0; i < 6; ++i) EXPECT_TRUE(is_zero(c.d(c.base->basis(i))));
}

TEST(GroupCalculus, CocycleViolation) {
  GroupCocycleData g = d6_cocycle_data();
  g.zeta[3][0] += 1;
  EXPECT_EQ(error_code([&] { build_group_cocycle_calculus(g); }), "CocycleViolation");
}

TEST(QuiverOmega2, GammaTwoIsZero) {
  const Calculus2 c2 = build_quiver_omega2(build_quiver_calculus(gamma2_quiver()));
  EXPECT_EQ(c2.omega2->dim, 0);
  EXPECT_TRUE(validate_calculus2(c2).all_pass());
}

TEST(QuiverOmega2, TriangleHasOneFreeTwoStepPerVertex) {
  const Calculus2 c2 = build_quiver_omega2(build_quiver_calculus(triangle_quiver()));
  EXPECT_EQ(c2.omega2->dim, 3);
  EXPECT_TRUE(validate_calculus2(c2).all_pass());
  EXPECT_TRUE(pivotal_wedge_holds(c2));
  const auto& q = *c2.calc1.quiver;
  // Each basis 2-step is composable and differs from the nominated 2-step of its vertex pair.
  for (const auto& [e1, e2] : c2.two_steps) {
    EXPECT_EQ(q.edges[e1].target, q.edges[e2].source);
    const auto nom = c2.nominated.at({q.edges[e1].source, q.edges[e2].target});
    EXPECT_NE(nom, std::make_pair(e1, e2));
  }
}

TEST(QuiverOmega2, EvaluationOnBasis) {
  const Calculus2 c2 = build_quiver_omega2(build_quiver_calculus(triangle_quiver()));
  const auto& q = *c2.calc1.quiver;
  const int n = c2.omega2->dim;
  const AlgebraPtr& a = c2.calc1.base;
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      const Vec v = c2.duality2.eval(unit_vec(c2.duality2.dual->dim, b), unit_vec(n, c));
      EXPECT_EQ(v, b == c ? a->basis(q.edges[c2.two_steps[c].second].target) : zero_vec(a->dim()));
    }
}

TEST(QuiverOmega2, RejectsLoops) {
  const Calculus1 c = build_quiver_calculus({{"p"}, {{"l", 0, 0}}});
  EXPECT_EQ(error_code([&] { build_quiver_omega2(c); }), "LoopPresent");
}

TEST(QuiverOmega2, ExplicitNominationMustBeATwoStep) {
  const Calculus1 c = build_quiver_calculus(triangle_quiver());
  EXPECT_EQ(error_code([&] { build_quiver_omega2(c, {{{0, 0}, {0, 0}}}); }), "NoTwoStepToNominate");
}

TEST(QuiverOmega2, UnnominatedPairsAreListed) {
  const Calculus2 c2 = build_quiver_omega2(build_quiver_calculus({{"p", "q", "r"}, {{"u", 0, 1}, {"v", 1, 2}}}));
  EXPECT_EQ(c2.omega2->dim, 0);
  EXPECT_FALSE(c2.unnominated_pairs.empty());
  EXPECT_TRUE(validate_calculus2(c2).all_pass());
}

TEST(GroupOmega2, DihedralExteriorSquare) {
  const Calculus1 c = build_group_cocycle_calculus(d6_cocycle_data());
  const Calculus2 c2 = build_exterior_square_omega2(c);
  EXPECT_EQ(c2.omega2->dim, 6);
  EXPECT_TRUE(validate_calculus2(c2).all_pass());
  // d(xi (x) a) is the wedge of zeta(a) with xi, placed at a.
  const GroupCocycleData g = d6_cocycle_data();
  const int a = 1;
  Vec expect(6);
  expect[label_index(c2.omega2->labels, "xi^tau@a")] = -g.zeta[a][1];
  EXPECT_EQ(c2.d1.apply(unit_vec(12, label_index(c.omega->labels, "xi@a"))), expect);
}

TEST(GroupOmega2, LineHasNoTwoForms) {
  const Calculus1 c = build_group_cocycle_calculus(sign_line());
  const Calculus2 c2 = build_exterior_square_omega2(c);
  EXPECT_EQ(c2.omega2->dim, 0);
  EXPECT_TRUE(validate_calculus(c).all_pass());
}

TEST(CalculusProperty, EveryConstructorValidates) {
  std::vector<Calculus2> all;
  all.push_back(build_quiver_omega2(build_quiver_calculus(gamma2_quiver())));
  all.push_back(build_quiver_omega2(build_quiver_calculus(triangle_quiver())));
  all.push_back(build_exterior_square_omega2(build_group_cocycle_calculus(d6_cocycle_data())));
  for (const auto& c2 : all) {
    EXPECT_TRUE(validate_calculus(c2.calc1).all_pass()) << c2.calc1.name;
    EXPECT_TRUE(validate_calculus2(c2).all_pass()) << c2.calc1.name;
    EXPECT_TRUE(pivotal_wedge_holds(c2)) << c2.calc1.name;
    for (int i = 0; i < c2.calc1.base->dim(); ++i)
      EXPECT_TRUE(is_zero(c2.d1.apply(c2.calc1.d(c2.calc1.base->basis(i))))) << c2.calc1.name;
  }
  EXPECT_TRUE(validate_calculus(build_m2_calculus()).all_pass());
}

TEST(CalculusProperty, InnerCalculiKillTheUnit) {
  for (const Calculus1& c : {build_m2_calculus(), build_quiver_calculus(triangle_quiver()),
                             build_group_cocycle_calculus(d6_cocycle_data())}) {
    EXPECT_TRUE(is_zero(c.d(c.base->unit()))) << c.name;
    for (int i = 0; i < c.base->dim(); ++i)
      for (int j = 0; j < c.base->dim(); ++j) {
        const Vec lhs = c.d(c.base->product(i, j));
        const Vec rhs = add(c.omega->act_right(c.d(c.base->basis(i)), c.base->basis(j)),
                            c.omega->act_left(c.base->basis(i), c.d(c.base->basis(j))));
        ASSERT_EQ(lhs, rhs) << c.name;
      }
  }
}

TEST(CalculusFile, CorruptedEvaluationFailsValidation) {
  const CalculusBundle b = read_calculus_file(std::string(HOPFALG_DATA_DIR) + "/gamma2_corrupt_ev.quiver.json");
  EXPECT_FALSE(validate_calculus(b.c1).all_pass());
}

TEST(CalculusFile, ParseErrors) {
  EXPECT_EQ(error_code([] { parse_calculus("{"); }), "ParseError");
  EXPECT_EQ(error_code([] { parse_calculus(R"({"kind":"torus"})"); }), "ParseError");
  EXPECT_EQ(error_code([] { parse_calculus(R"({"kind":"quiver","vertices":["p"],"edges":[["u","p","z"]]})"); }),
            "ParseError");
}
