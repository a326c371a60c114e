#include "psatz/psd.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace psatz;

namespace {

Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

QMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = frac(num(rng), den(rng));
  return m;
}

QMatrix gram(const SosDecomposition& d, std::size_t n) {
  const auto g = sos_gram(d, n);
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = g[i * n + j];
  return m;
}

Rational quad(const QMatrix& q, const RationalVector& u) {
  const RationalVector qu = q.multiply(u);
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * qu[i];
  return s;
}

}  // namespace

TEST(Gaussian, Examples) {
  auto zero = gaussian_decompose(QMatrix(3, 3));
  ASSERT_TRUE(std::holds_alternative<SosDecomposition>(zero));
  EXPECT_TRUE(std::get<SosDecomposition>(zero).empty());

  auto swap = gaussian_decompose(QMatrix{{0, 1}, {1, 0}});
  ASSERT_TRUE(std::holds_alternative<NotPsd>(swap));
  EXPECT_EQ(std::get<NotPsd>(swap).index, 0u);

  auto d = gaussian_decompose(QMatrix{{2, 1}, {1, 2}});
  ASSERT_TRUE(std::holds_alternative<SosDecomposition>(d));
  const auto& terms = std::get<SosDecomposition>(d).terms;
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].coefficient, 2);
  EXPECT_EQ(terms[0].vector, (RationalVector{1, frac(1, 2)}));
  EXPECT_EQ(terms[1].coefficient, frac(3, 2));
  EXPECT_EQ(terms[1].vector, (RationalVector{0, 1}));
}

TEST(Gaussian, ZeroPivotWithZeroRowIsSkipped) {
  auto d = gaussian_decompose(QMatrix{{0, 0}, {0, 5}});
  ASSERT_TRUE(std::holds_alternative<SosDecomposition>(d));
  EXPECT_EQ(gram(std::get<SosDecomposition>(d), 2), (QMatrix{{0, 0}, {0, 5}}));
}

TEST(Gaussian, RejectsAsymmetric) { EXPECT_THROW(gaussian_decompose(QMatrix{{1, 2}, {0, 1}}), std::invalid_argument); }

TEST(Charpoly, PsdExamples) {
  EXPECT_TRUE(psd_check_charpoly(QMatrix::identity(3)));
  EXPECT_FALSE(psd_check_charpoly(QMatrix{{-1}}));
  EXPECT_FALSE(psd_check_charpoly(QMatrix{{0, 1}, {1, 0}}));
  EXPECT_TRUE(psd_check_charpoly(QMatrix(2, 2)));
  EXPECT_TRUE(psd_check_charpoly(QMatrix{{1, 1}, {1, 1}}));
}

TEST(NumericPrecheck, Examples) {
  EXPECT_TRUE(psd_precheck_numeric(QMatrix::identity(2), QMatrix::identity(2)));
  EXPECT_FALSE(psd_precheck_numeric(QMatrix{{1, 0}, {0, -1}}, QMatrix::identity(2)));
  EXPECT_TRUE(psd_precheck_numeric(QMatrix{{1, 0}, {0, 0}}, QMatrix{{1, 0}}));
  EXPECT_FALSE(psd_precheck_numeric(QMatrix{{1, 0}, {0, 0}}, QMatrix::identity(2)));
}

// Q = A^T A is PSD; the decomposition must rebuild it exactly.
TEST(GaussianProperty, RoundTrip) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const std::size_t r = 1 + (trial / 6) % n;  // rank-deficient when r < n
    const QMatrix a = random_matrix(rng, r, n);
    const QMatrix q = a.transpose() * a;
    auto d = gaussian_decompose(q);
    ASSERT_TRUE(std::holds_alternative<SosDecomposition>(d)) << "trial " << trial;
    for (const auto& t : std::get<SosDecomposition>(d).terms) EXPECT_GT(t.coefficient, 0);
    EXPECT_EQ(gram(std::get<SosDecomposition>(d), n), q);
  }
}

// Mixed PSD and indefinite inputs: the two exact methods agree, and every
// NotPsd carries a vector with u^T Q u < 0.
TEST(GaussianProperty, AgreesWithCharpoly) {
  std::mt19937_64 rng(19);
  int psd = 0, not_psd = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    QMatrix q;
    switch (trial % 4) {
      case 0: {
        const QMatrix a = random_matrix(rng, 1 + trial % n, n);
        q = a.transpose() * a;
        break;
      }
      case 1: {
        const QMatrix a = random_matrix(rng, n, n);
        q = a + a.transpose();
        break;
      }
      case 2: {  // PSD minus a small multiple of a rank-one term
        const QMatrix a = random_matrix(rng, n, n), u = random_matrix(rng, 1, n);
        q = a.transpose() * a - QMatrix::diagonal(RationalVector(n, frac(1, 50))) * (u.transpose() * u);
        break;
      }
      default: {  // PSD with a forced zero diagonal entry and zero row
        const QMatrix a = random_matrix(rng, n, n);
        q = a.transpose() * a;
        for (std::size_t j = 0; j < n; ++j) q(0, j) = q(j, 0) = 0;
        if (trial % 8 == 7 && n > 1) q(0, n - 1) = q(n - 1, 0) = 1;  // now indefinite
      }
    }
    ASSERT_TRUE(q.is_symmetric());
    const auto d = gaussian_decompose(q);
    const bool ok = std::holds_alternative<SosDecomposition>(d);
    EXPECT_EQ(ok, psd_check_charpoly(q)) << "trial " << trial;
    if (ok) {
      ++psd;
      EXPECT_EQ(gram(std::get<SosDecomposition>(d), n), q);
    } else {
      ++not_psd;
      const NotPsd& bad = std::get<NotPsd>(d);
      EXPECT_LT(bad.value, 0);
      EXPECT_EQ(quad(q, bad.witness), bad.value);
    }
  }
  EXPECT_GT(psd, 40);
  EXPECT_GT(not_psd, 40);
}
