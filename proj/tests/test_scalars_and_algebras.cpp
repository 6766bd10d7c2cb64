#include <gtest/gtest.h>

#include <random>

#include "hopfalg/algebra.hpp"

using namespace hopfalg;

namespace {

/// @brief Random element p + q sqrt(3) with small rational components.
Scalar random_scalar(std::mt19937& rng, bool quadratic) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  Scalar x = Scalar::rational(num(rng), den(rng));
  if (quadratic) x += Scalar::rational(num(rng), den(rng)) * Scalar::sqrt();
  return x;
}

void expect_associative_with_unit(const FiniteAlgebra& a) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vec lhs = a.mul(a.product(i, j), a.basis(k));
        const Vec rhs = a.mul(a.basis(i), a.product(j, k));
        ASSERT_EQ(lhs, rhs) << a.labels()[i] << a.labels()[j] << a.labels()[k];
      }
  for (int i = 0; i < n; ++i) {
    EXPECT_EQ(a.mul(a.unit(), a.basis(i)), a.basis(i));
    EXPECT_EQ(a.mul(a.basis(i), a.unit()), a.basis(i));
  }
}

bool structure_symmetric(const FiniteAlgebra& a) {
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (a.product(i, j) != a.product(j, i)) return false;
  return true;
}

}  // namespace

TEST(Scalar, QuadraticProduct) {
  FieldContext::set_sqrt_d(3);
  const Scalar s = Scalar::sqrt();
  EXPECT_EQ((Scalar(1) + s) * (Scalar(-1) + s), Scalar(2));
}

TEST(Scalar, RationalSum) {
  const Scalar x = Scalar::rational(1, 2) + Scalar::rational(1, 3);
  EXPECT_EQ(x, Scalar::rational(5, 6));
  EXPECT_TRUE(x.is_rational());
  EXPECT_EQ(x.str(), "5/6");
}

TEST(Scalar, QuadraticInverseViaConjugate) {
  FieldContext::set_sqrt_d(3);
  const Scalar x = Scalar(1) + Scalar::sqrt();
  const Scalar inv = x.inverse();
  EXPECT_EQ(inv, (Scalar(-1) + Scalar::sqrt()) * Scalar::rational(1, 2));
  EXPECT_TRUE((x * inv).is_one());
}

TEST(Scalar, DivisionByZero) {
  try {
    (void)(Scalar(1) / Scalar(0));
    FAIL() << "expected DivisionByZero";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "DivisionByZero");
  }
  EXPECT_THROW(Scalar(0).inverse(), Error);
  EXPECT_THROW(Scalar::rational(1, 0), Error);
}

TEST(Scalar, MixedFieldContext) {
  FieldContext::set_sqrt_d(0);
  try {
    (void)Scalar::sqrt();
    FAIL() << "expected MixedFieldContext";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "MixedFieldContext");
  }
  FieldContext::set_sqrt_d(3);
}

TEST(Scalar, ParseAndPrintRoundTrip) {
  FieldContext::set_sqrt_d(3);
  for (const char* t : {"0", "-2", "3/4", "s", "-1/2*s", "1/2+1/2*s", "-3-2/3*s"}) {
    const Scalar x = Scalar::parse(t);
    EXPECT_EQ(Scalar::parse(x.str()), x) << t;
  }
  EXPECT_EQ(Scalar::parse("1/2+1/2*s"), (Scalar(1) + Scalar::sqrt()) * Scalar::rational(1, 2));
  EXPECT_THROW(Scalar::parse("1/0"), Error);
  EXPECT_THROW(Scalar::parse("abc"), Error);
}

TEST(Scalar, CanonicalFormReduced) {
  const Scalar x = Scalar::rational(6, -4);
  EXPECT_EQ(x.p().get_num(), -3);
  EXPECT_EQ(x.p().get_den(), 2);
}

TEST(ScalarProperty, FieldAxiomsOnRandomValues) {
  FieldContext::set_sqrt_d(3);
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    const bool quad = trial % 2 == 0;
    const Scalar a = random_scalar(rng, quad), b = random_scalar(rng, quad), c = random_scalar(rng, quad);
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    if (!quad) EXPECT_TRUE((a * b + c).is_rational());
    EXPECT_GT(sgn(a.p().get_den()), 0);
    EXPECT_GT(sgn(a.q().get_den()), 0);
  }
}

TEST(FunctionAlgebra, TwoPoints) {
  const AlgebraPtr a = new_function_algebra({"p", "q"});
  ASSERT_EQ(a->dim(), 2);
  EXPECT_EQ(a->product(0, 0), a->basis(0));
  EXPECT_TRUE(is_zero(a->product(0, 1)));
  EXPECT_TRUE(a->commutative());
  EXPECT_EQ(a->unit(), (Vec{Scalar(1), Scalar(1)}));
  expect_associative_with_unit(*a);
}

TEST(FunctionAlgebra, OnePointIsTheField) {
  const AlgebraPtr a = new_function_algebra({"p"});
  EXPECT_EQ(a->dim(), 1);
  EXPECT_EQ(a->product(0, 0), a->unit());
}

TEST(FunctionAlgebra, ThreeOrthogonalIdempotents) {
  const AlgebraPtr a = new_function_algebra({"0", "1", "2"});
  expect_associative_with_unit(*a);
  Vec sum = zero_vec(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(a->product(i, j), i == j ? a->basis(i) : zero_vec(3));
    sum = add(sum, a->basis(i));
  }
  EXPECT_EQ(sum, a->unit());
}

TEST(FunctionAlgebra, DuplicateLabel) {
  try {
    new_function_algebra({"p", "p"});
    FAIL() << "expected DuplicateLabel";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "DuplicateLabel");
  }
}

TEST(MatrixAlgebra, UnitsMultiply) {
  const AlgebraPtr a = new_matrix_algebra(2);
  const int e11 = a->index_of("E11"), e12 = a->index_of("E12"), e21 = a->index_of("E21"), e22 = a->index_of("E22");
  EXPECT_EQ(a->product(e12, e21), a->basis(e11));
  EXPECT_EQ(sub(a->product(e12, e21), a->product(e21, e12)), sub(a->basis(e11), a->basis(e22)));
  EXPECT_FALSE(a->commutative());
  expect_associative_with_unit(*a);
}

TEST(MatrixAlgebra, SizeOneIsCommutative) {
  const AlgebraPtr a = new_matrix_algebra(1);
  EXPECT_EQ(a->dim(), 1);
  EXPECT_TRUE(a->commutative());
}

TEST(MatrixAlgebra, ThreeByThreeRules) {
  const AlgebraPtr a = new_matrix_algebra(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const Vec expect = j == k ? a->basis(3 * i + l) : zero_vec(9);
          EXPECT_EQ(a->product(3 * i + j, 3 * k + l), expect);
        }
}

TEST(GroupAlgebra, DihedralSix) {
  const GroupData g = dihedral6();
  const AlgebraPtr a = new_group_algebra(g.elements, g.table);
  EXPECT_EQ(a->dim(), 6);
  expect_associative_with_unit(*a);
  const int ia = a->index_of("a"), ib = a->index_of("b"), ia2 = a->index_of("a2");
  EXPECT_EQ(a->mul(a->product(ia, ia), a->basis(ia)), a->unit());
  EXPECT_EQ(a->product(ib, ib), a->unit());
  EXPECT_EQ(a->product(ia2, ib), a->product(ib, ia));
  EXPECT_FALSE(a->commutative());
}

TEST(GroupAlgebra, TrivialAndCyclic) {
  const AlgebraPtr k = new_group_algebra({"e"}, {{0}});
  EXPECT_EQ(k->dim(), 1);
  const AlgebraPtr c2 = new_group_algebra({"e", "g"}, {{0, 1}, {1, 0}});
  EXPECT_EQ(c2->product(1, 1), c2->basis(0));
  EXPECT_EQ(c2->unit(), c2->basis(0));
  EXPECT_TRUE(c2->commutative());
}

TEST(GroupAlgebra, RejectsNonGroups) {
  for (const auto& table : std::vector<std::vector<std::vector<int>>>{{{0, 0}, {1, 1}}, {{1, 0}, {1, 0}}, {{0, 1}}}) {
    try {
      new_group_algebra({"x", "y"}, table);
      FAIL() << "expected NotAGroup";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), "NotAGroup");
    }
  }
}

TEST(Enveloping, TwoPoints) {
  const AlgebraPtr a = new_function_algebra({"p", "q"});
  const AlgebraPtr ae = enveloping(*a);
  ASSERT_EQ(ae->dim(), 4);
  const Vec x = kron(a->basis(0), a->basis(1));
  EXPECT_EQ(ae->mul(x, x), x);
  expect_associative_with_unit(*ae);
}

TEST(Enveloping, FieldIsField) {
  const AlgebraPtr ae = enveloping(*new_function_algebra({"p"}));
  EXPECT_EQ(ae->dim(), 1);
}

TEST(Enveloping, FactorsCommute) {
  const AlgebraPtr a = new_matrix_algebra(2);
  const AlgebraPtr ae = enveloping(*a);
  ASSERT_EQ(ae->dim(), 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Vec left = kron(a->basis(i), a->unit());
      const Vec right = kron(a->unit(), a->basis(j));
      EXPECT_EQ(ae->mul(left, right), ae->mul(right, left));
    }
}

TEST(Enveloping, OppositeFactorReversesProducts) {
  const AlgebraPtr a = new_matrix_algebra(2);
  const AlgebraPtr ae = enveloping(*a);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Vec x = kron(a->unit(), a->basis(i)), y = kron(a->unit(), a->basis(j));
      EXPECT_EQ(ae->mul(x, y), kron(a->unit(), a->product(j, i)));
    }
}

TEST(AlgebraProperty, OppositeIsAnInvolution) {
  const GroupData g = dihedral6();
  for (const AlgebraPtr& a : {new_matrix_algebra(2), new_function_algebra({"0", "1", "2"}), new_group_algebra(g.elements, g.table)}) {
    const FiniteAlgebra op = a->opposite();
    const FiniteAlgebra back = op.opposite();
    for (int i = 0; i < a->dim(); ++i)
      for (int j = 0; j < a->dim(); ++j) {
        EXPECT_EQ(op.product(i, j), a->product(j, i));
        EXPECT_EQ(back.product(i, j), a->product(i, j));
      }
    EXPECT_EQ(a->commutative(), structure_symmetric(*a));
    expect_associative_with_unit(op);
  }
}

TEST(AlgebraProperty, RandomElementsAssociate) {
  FieldContext::set_sqrt_d(3);
  std::mt19937 rng(7);
  const GroupData g = dihedral6();
  for (const AlgebraPtr& a : {new_matrix_algebra(2), new_group_algebra(g.elements, g.table)}) {
    for (int t = 0; t < 20; ++t) {
      Vec x(a->dim()), y(a->dim()), z(a->dim());
      for (int i = 0; i < a->dim(); ++i) {
        x[i] = random_scalar(rng, true);
        y[i] = random_scalar(rng, true);
        z[i] = random_scalar(rng, true);
      }
      EXPECT_EQ(a->mul(a->mul(x, y), z), a->mul(x, a->mul(y, z)));
      EXPECT_EQ(a->left_mult(x).apply(y), a->mul(x, y));
      EXPECT_EQ(a->right_mult(y).apply(x), a->mul(x, y));
    }
  }
}

TEST(Linalg, InverseAndNullspace) {
  Mat m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 3;
  m(1, 1) = 4;
  const auto inv = inverse(m);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(m * *inv, Mat::identity(2));
  Mat s(1, 2);
  s(0, 0) = 1;
  s(0, 1) = 1;
  const auto ns = nullspace(s);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(is_zero(s.apply(ns[0])));
  EXPECT_FALSE(inverse(s.transpose() * s).has_value());
}
