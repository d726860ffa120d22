#include <gtest/gtest.h>

#include <random>

#include "ksorbits/matrix.hpp"
#include "ksorbits/root_datum.hpp"

using namespace ksorbits;

TEST(Matrix, RankAndNullspace) {
  QMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(rank(m), 2u);
  auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(is_zero(m * ns[0]));
}

TEST(Matrix, InverseAndDeterminant) {
  QMatrix m{{2, 1}, {7, 4}};
  EXPECT_EQ(determinant(m), 1);
  EXPECT_EQ(m * inverse(m), QMatrix::identity(2));
  QMatrix s{{1, 2}, {2, 4}};
  EXPECT_THROW(inverse(s), DomainError);
}

TEST(Matrix, SpanBuilderTracksDimension) {
  SpanBuilder b(3);
  EXPECT_TRUE(b.add(unit_vector(3, 0)));
  EXPECT_TRUE(b.add(unit_vector(3, 1)));
  EXPECT_FALSE(b.add(axpy(3, unit_vector(3, 0), unit_vector(3, 1))));
  EXPECT_EQ(b.dim(), 2u);
  EXPECT_FALSE(b.contains(unit_vector(3, 2)));
}

TEST(Matrix, IntersectionOfPlanes) {
  std::vector<QVector> a{unit_vector(3, 0), unit_vector(3, 1)};
  std::vector<QVector> b{unit_vector(3, 1), unit_vector(3, 2)};
  auto i = intersect(a, b, 3);
  ASSERT_EQ(i.size(), 1u);
  EXPECT_EQ(i[0][0], 0);
  EXPECT_EQ(i[0][2], 0);
}

TEST(Matrix, NilpotentExponentialMatchesSeries) {
  // exp of a single Jordan block: entries 1/k! above the diagonal.
  QMatrix x(4, 4);
  for (int i = 0; i < 3; ++i) x(i, i + 1) = 1;
  QMatrix e = nilpotent_exp(x);
  EXPECT_EQ(e(0, 1), 1);
  EXPECT_EQ(e(0, 2), Rational(1) / 2);
  EXPECT_EQ(e(0, 3), Rational(1) / 6);
  EXPECT_EQ(e(3, 0), 0);
}

static ZMatrix zmul(const ZMatrix& a, const ZMatrix& b) { return a * b; }

static Integer zdet(const ZMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
  Rational d = determinant(q);
  return d.get_num();
}

TEST(SmithForm, Identity) {
  ZMatrix id = ZMatrix::identity(3);
  auto sf = smith_normal_form(id);
  EXPECT_EQ(sf.d, id);
}

TEST(SmithForm, HandComputedDiag23) {
  ZMatrix m{{2, 0}, {0, 3}};
  auto sf = smith_normal_form(m);
  EXPECT_EQ(sf.diagonal(), (std::vector<Integer>{1, 6}));
}

TEST(SmithForm, RandomMatricesSatisfyUMVEqualsD) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 8), entry(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = dim(rng), c = dim(rng);
    ZMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = entry(rng);
    auto sf = smith_normal_form(m);
    ASSERT_EQ(zmul(zmul(sf.u, m), sf.v), sf.d) << "trial " << trial;
    EXPECT_EQ(abs(zdet(sf.u)), 1);
    EXPECT_EQ(abs(zdet(sf.v)), 1);
    for (std::size_t i = 0; i < sf.d.rows(); ++i)
      for (std::size_t j = 0; j < sf.d.cols(); ++j)
        if (i != j) ASSERT_EQ(sf.d(i, j), 0);
    auto diag = sf.diagonal();
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
      EXPECT_GE(diag[i], 0);
      if (diag[i] != 0) EXPECT_EQ(diag[i + 1] % diag[i], 0) << "trial " << trial;
      else EXPECT_EQ(diag[i + 1], 0);
    }
  }
}
