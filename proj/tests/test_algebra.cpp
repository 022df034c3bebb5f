#include <random>

#include <gtest/gtest.h>

#include "curlinv/complex.hpp"
#include "curlinv/eliminate.hpp"
#include "curlinv/errors.hpp"
#include "curlinv/generators.hpp"
#include "curlinv/scalar.hpp"
#include "curlinv/sparse.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace curlinv;

TEST(Scalar, CanonicalForm) {
  EXPECT_EQ(Scalar(6, -4), Scalar(-3, 2));
  EXPECT_EQ(Scalar(6, -4).to_string(), "-3/2");
  EXPECT_EQ(Scalar::parse("3"), Scalar(3, 1));
  EXPECT_EQ(Scalar::parse("-10/4"), Scalar(-5, 2));
  EXPECT_THROW(Scalar::parse("1/0"), Error);
  EXPECT_THROW(Scalar::parse("abc"), Error);
}

TEST(Scalar, PromotesPastInt64AndBack) {
  const Scalar big(std::int64_t{1} << 62);
  const Scalar sq = big * big;
  EXPECT_FALSE(sq.is_small());
  EXPECT_EQ(sq.to_mpq(), mpq_class(mpz_class(1) << 124));
  const Scalar back = sq / big;
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, big);
}

TEST(Scalar, MatchesGmpOnRandomOps) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t a = static_cast<std::int64_t>(rng() >> 2) - (1LL << 60);
    const std::int64_t b = static_cast<std::int64_t>(rng() % 1000003) + 1;
    const std::int64_t c = static_cast<std::int64_t>(rng() >> 3) - (1LL << 59);
    const Scalar x(a, b), y(c, 7);
    const mpq_class qx = mpq_class(a, b), qy = mpq_class(c, 7);
    mpq_class qa(a, b), qc(c, 7);
    qa.canonicalize();
    qc.canonicalize();
    EXPECT_EQ((x + y).to_mpq(), qa + qc);
    EXPECT_EQ((x - y).to_mpq(), qa - qc);
    EXPECT_EQ((x * y).to_mpq(), qa * qc);
    if (c != 0) EXPECT_EQ((x / y).to_mpq(), qa / qc);
    (void)qx;
    (void)qy;
  }
}

TEST(SparseVec, AxpyTracksSupportChanges) {
  SparseVec a({{1, 2}, {3, 1}});
  SparseVec b({{1, 1}, {4, 5}});
  std::vector<CellId> appeared, vanished;
  SparseVec c = a.axpy(Scalar(-2), b, &appeared, &vanished);
  EXPECT_EQ(c, SparseVec({{3, 1}, {4, -10}}));
  EXPECT_EQ(appeared, std::vector<CellId>{4});
  EXPECT_EQ(vanished, std::vector<CellId>{1});
}

TEST(Block, IdentityAndEmptyPartitions) {
  const auto k = fixtures::two_tets();
  const auto c = incidence_matrix(k, 1);
  EXPECT_EQ(block(c, c.row_ids(), c.col_ids()), c);
  const auto empty = block(c, {}, c.col_ids());
  EXPECT_EQ(empty.rows(), 0u);
  EXPECT_EQ(empty.nnz(), 0u);
}

TEST(Block, SharedFaceRowHasThreeEntries) {
  const auto k = fixtures::two_tets();
  const std::vector<CellId> shared{1, 2, 3};
  const auto f = k.find_simplex(shared);
  ASSERT_TRUE(f.has_value());
  const auto c = incidence_matrix(k, 1);
  EXPECT_EQ(block(c, {*f}, c.col_ids()).nnz(), 3u);
  EXPECT_THROW(block(c, {999}, c.col_ids()), Error);
}

TEST(Subvector, Projection) {
  const Cochain v(1, {2, 5, 9}, {Scalar(1), Scalar(2), Scalar(3)});
  EXPECT_EQ(subvector(v, v.ids()), v);
  EXPECT_EQ(subvector(v, {}).size(), 0u);
  EXPECT_EQ(subvector(v, {2, 9}), Cochain(1, {2, 9}, {Scalar(1), Scalar(3)}));
  EXPECT_THROW(subvector(v, {3}), Error);
}

TEST(Apply, CurlOfGradientVanishes) {
  const auto k = cube_grid(2);
  const auto g = incidence_matrix(k, 0);
  const auto c = incidence_matrix(k, 1);
  const Cochain psi = random_integer_cochain(0, k.vertices(), 3, 20);
  EXPECT_TRUE(apply(c, apply(g, psi)).is_zero());
  EXPECT_TRUE(apply(c, Cochain::zeros(1, k.edges())).is_zero());
  EXPECT_THROW(apply(c, Cochain::zeros(1, k.edges() - 1)), Error);
}

TEST(Apply, AgreesWithDenseProduct) {
  const auto k = fixtures::single_tet();
  const auto c = incidence_matrix(k, 1);
  const auto d = incidence_matrix(k, 2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Cochain h = random_integer_cochain(1, k.edges(), seed, 9);
    const Cochain i = apply(c, h);
    EXPECT_EQ(oracle::to_vec(i), oracle::mul(oracle::to_dense(c), oracle::to_vec(h)));
    EXPECT_TRUE(apply(d, i).is_zero());
  }
}

TEST(Apply, CommutesWithRowRestriction) {
  const auto k = fixtures::two_tets();
  const auto c = incidence_matrix(k, 1);
  const Cochain h = random_integer_cochain(1, k.edges(), 11, 5);
  const IdSet rows{0, 2, 5};
  EXPECT_EQ(subvector(apply(c, h), rows), apply(block(c, rows, c.col_ids()), h));
}

TEST(Eliminate, SolvesCurlOfSingleTet) {
  const auto k = fixtures::single_tet();
  const auto c = incidence_matrix(k, 1);
  const Cochain b = apply(c, fixtures::dense(1, {1, 0, 0, 0, 0, 0}));
  const auto r = exact_eliminate_solve(c, b);
  ASSERT_TRUE(r.consistent());
  EXPECT_EQ(apply(c, *r.solution), b);
  EXPECT_EQ(r.rank, 3u);
}

TEST(Eliminate, RejectsNonSolenoidalRhs) {
  const auto k = fixtures::single_tet();
  const auto c = incidence_matrix(k, 1);
  const auto r = exact_eliminate_solve(c, fixtures::dense(2, {1, 0, 0, 0}));
  EXPECT_FALSE(r.consistent());
}

TEST(Eliminate, ZeroMatrix) {
  const SignedSparseMatrix z(2, iota_ids(3), 1, iota_ids(2), {});
  const auto r = exact_eliminate_solve(z, Cochain::zeros(2, 3));
  ASSERT_TRUE(r.consistent());
  EXPECT_TRUE(r.solution->is_zero());
  EXPECT_EQ(r.rank, 0u);
}

TEST(Eliminate, RankMatchesOracleAndFormula) {
  for (int n : {1, 2}) {
    const auto k = cube_grid(n);
    const auto c = incidence_matrix(k, 1);
    EXPECT_EQ(exact_rank(c), oracle::rank(oracle::to_dense(c)));
    EXPECT_EQ(exact_rank(c), k.faces() - k.volumes());
  }
}

TEST(Eliminate, RandomRationalSystemsAgreeWithOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 3 + rng() % 5, cols = 3 + rng() % 5;
    std::vector<SignedSparseMatrix::Triplet> t;
    for (CellId i = 0; i < rows; ++i) {
      for (CellId j = 0; j < cols; ++j) {
        if (rng() % 3 == 0) t.push_back({i, j, Scalar(static_cast<std::int64_t>(rng() % 7) - 3, 1 + rng() % 3)});
      }
    }
    const SignedSparseMatrix a(2, iota_ids(rows), 1, iota_ids(cols), t);
    const Cochain b = random_integer_cochain(2, rows, trial + 1, 4);
    const auto mine = exact_eliminate_solve(a, b);
    const auto ref = oracle::solve(oracle::to_dense(a), oracle::to_vec(b));
    ASSERT_EQ(mine.consistent(), ref.has_value());
    EXPECT_EQ(mine.rank, oracle::rank(oracle::to_dense(a)));
    if (mine.consistent()) EXPECT_EQ(apply(a, *mine.solution), b);
  }
}
