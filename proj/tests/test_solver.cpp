#include <functional>

#include <gtest/gtest.h>

#include "curlinv/complex.hpp"
#include "curlinv/errors.hpp"
#include "curlinv/generators.hpp"
#include "curlinv/ledger.hpp"
#include "curlinv/matching.hpp"
#include "curlinv/solver.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace curlinv;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

// C h == i checked with the dense oracle, not the library's apply().
void expect_curl(const CellComplex& k, const Cochain& h, const Cochain& i) {
  EXPECT_EQ(oracle::mul(oracle::to_dense(incidence_matrix(k, 1)), oracle::to_vec(h)), oracle::to_vec(i));
}

}  // namespace

TEST(BackSubstitution, OneByOneNegativePivot) {
  const auto k = fixtures::single_tet();
  // d c = f3 - f2 + f1 - f0, face ids in tuple order
  Matching m;
  m.k = 2;
  m.pairs = {{2, 0}};
  const Cochain rhs(3, {0}, {Scalar(5)});
  const Cochain zeros(2, {0, 1, 3});
  const Cochain v = back_substitution(m, k, rhs, zeros);
  EXPECT_EQ(v, Cochain(2, {2}, {Scalar(-5)}));
}

TEST(BackSubstitution, MissingValueAndNotIncident) {
  const auto k = fixtures::single_tet();
  Matching m;
  m.k = 2;
  m.pairs = {{2, 0}};
  const Cochain rhs(3, {0}, {Scalar(5)});
  EXPECT_EQ(code_of([&] { back_substitution(m, k, rhs, Cochain(2, {0, 1})); }), ErrorCode::kMissingValue);
  const auto two = fixtures::two_tets();
  Matching bad;
  bad.k = 2;
  bad.pairs = {{6, 0}};  // face (2,3,4) is not on tet (0,1,2,3)
  EXPECT_EQ(code_of([&] { back_substitution(bad, two, Cochain(3, {0, 1}), Cochain(2, iota_ids(7))); }),
            ErrorCode::kNotIncident);
}

TEST(BackSubstitution, PathGraphGradient) {
  const auto k = fixtures::path_graph();
  Matching m;
  m.k = 0;
  m.pairs = {{2, 1}, {1, 0}};  // leaf first
  const Cochain w = fixtures::dense(1, {1, 2});
  const Cochain v = back_substitution(m, k, w, Cochain(0, {0}));
  EXPECT_EQ(v, Cochain(0, {1, 2}, {Scalar(1), Scalar(3)}));
  EXPECT_EQ(solve_gradient_potential(k, w), fixtures::dense(0, {0, 1, 3}));
}

TEST(BackSubstitution, TreeMatchingSolvesDivergenceOnGrid) {
  const auto k = cube_grid(3);
  const auto q = random_integer_cochain(3, k.volumes(), 2, 9);
  const auto v = solve_divergence_potential(k, q);
  EXPECT_EQ(oracle::mul(oracle::to_dense(incidence_matrix(k, 2)), oracle::to_vec(v)), oracle::to_vec(q));
}

TEST(Gradient, RecoversPotentialUpToRoot) {
  const auto k = cube_grid(2);
  const auto psi = random_integer_cochain(0, k.vertices(), 8, 30);
  const auto w = apply(incidence_matrix(k, 0), psi);
  const auto v = solve_gradient_potential(k, w);
  EXPECT_TRUE(v.at(0).is_zero());
  const Scalar shift = psi.at(0);
  for (CellId i = 0; i < k.vertices(); ++i) EXPECT_EQ(v.at(i), psi.at(i) - shift);
  auto bad = w;
  bad.values()[0] += Scalar(1);
  EXPECT_EQ(code_of([&] { solve_gradient_potential(k, bad); }), ErrorCode::kNotCurlFree);
}

TEST(Divergence, SingleTet) {
  const auto k = fixtures::single_tet();
  const auto v = solve_divergence_potential(k, fixtures::dense(3, {7}));
  std::size_t nonzero = 0;
  for (const auto& x : v.values()) {
    if (x.is_zero()) continue;
    ++nonzero;
    EXPECT_TRUE(x == Scalar(7) || x == Scalar(-7));
  }
  EXPECT_EQ(nonzero, 1u);
}

TEST(Residual, ZeroBlockHoldsAfterLevelZero) {
  const auto k = cube_grid(3);
  const auto field = random_solenoidal_field(k, 4, 10);
  BasisLedger l(k);
  l.attach_values(2, std::vector<Scalar>(field.values().begin(), field.values().end()));
  GreedyOptions g;
  g.seed = 4;
  g.until_stable = true;
  greedy_matching(l, 2, g);
  g.until_stable = false;
  const auto m1 = greedy_matching(l, 1, g);
  EXPECT_EQ(zero_block_violations(l), 0u);
  const auto r = split_residual(l, m1);
  EXPECT_EQ(r.a_res.rows(), l.live_count(2));
  EXPECT_EQ(r.a_res.cols(), l.live_count(1));
  EXPECT_EQ(r.coupling.rows(), m1.size());
  EXPECT_EQ(r.b_res.size(), l.live_count(2));
}

TEST(Residual, FlatCollapseClearsMatchedEdgeFromLiveFaces) {
  // edge (0,1) lies on faces (0,1,2) and (0,1,3); pairing it with the first
  // must remove it from the second, or the C_2 x D_1 block would not vanish
  const auto k = fixtures::two_tets();
  BasisLedger l(k);
  ASSERT_EQ(l.degree(1, 0), 2u);
  l.collapse_pair(1, 0, 0);
  EXPECT_EQ(l.boundary(2, 1).coeff(0), Scalar(0));
  EXPECT_EQ(zero_block_violations(l), 0u);
}

TEST(VectorPotential, SingleTetAndZeroField) {
  const auto k = fixtures::single_tet();
  const auto i = apply(incidence_matrix(k, 1), fixtures::dense(1, {1, -2, 0, 3, 0, 1}));
  const auto r = solve_vector_potential(k, i);
  expect_curl(k, r.h, i);
  const auto z = solve_vector_potential(k, Cochain::zeros(2, k.faces()));
  EXPECT_TRUE(z.h.is_zero());
}

TEST(VectorPotential, NotSolenoidal) {
  const auto k = cube_grid(2);
  auto i = random_solenoidal_field(k, 1, 10);
  i.values()[3] += Scalar(1);
  EXPECT_EQ(code_of([&] { solve_vector_potential(k, i); }), ErrorCode::kNotSolenoidal);
}

TEST(VectorPotential, RationalFieldOnGrid) {
  const auto k = cube_grid(2);
  auto h0 = random_integer_cochain(1, k.edges(), 6, 10);
  for (auto& x : h0.values()) x = x / Scalar(3);
  const auto i = apply(incidence_matrix(k, 1), h0);
  const auto r = solve_vector_potential(k, i);
  expect_curl(k, r.h, i);
}

TEST(VectorPotential, GaugeDifferenceIsCurlFree) {
  const auto k = cube_grid(3);
  const auto i = random_solenoidal_field(k, 12, 10);
  SolveOptions a, b;
  a.seed = 1;
  b.seed = 2;
  const auto ha = solve_vector_potential(k, i, a).h;
  const auto hb = solve_vector_potential(k, i, b).h;
  expect_curl(k, ha, i);
  expect_curl(k, hb, i);
  std::vector<Scalar> diff;
  for (CellId e = 0; e < k.edges(); ++e) diff.push_back(ha.at(e) - hb.at(e));
  const Cochain d(1, iota_ids(k.edges()), diff);
  // h_a - h_b lies in ker C = im G, so the gradient solve must succeed
  const auto psi = solve_gradient_potential(k, d);
  EXPECT_EQ(oracle::mul(oracle::to_dense(incidence_matrix(k, 0)), oracle::to_vec(psi)), oracle::to_vec(d));
}

TEST(VectorPotential, SeedsAreReproducible) {
  const auto k = cube_grid(3);
  const auto i = random_solenoidal_field(k, 3, 10);
  SolveOptions o;
  o.seed = 17;
  const auto a = solve_vector_potential(k, i, o);
  const auto b = solve_vector_potential(k, i, o);
  EXPECT_EQ(a.h, b.h);
  EXPECT_EQ(a.trace.depth(), b.trace.depth());
}

TEST(VectorPotential, TraceCountsAreConsistent) {
  const auto k = cube_grid(3);
  const auto i = random_solenoidal_field(k, 5, 10);
  SolveOptions o;
  o.seed = 5;
  o.debug_checks = true;
  const auto r = solve_vector_potential(k, i, o);
  ASSERT_FALSE(r.trace.levels.empty());
  const auto& l0 = r.trace.levels[0];
  EXPECT_EQ(l0.pairs_2, k.volumes());
  EXPECT_EQ(l0.basis_1, k.edges());
  EXPECT_EQ(l0.basis_2, k.faces());
  std::size_t m1 = 0;
  for (const auto& lv : r.trace.levels) {
    m1 += lv.pairs_1;
    EXPECT_EQ(lv.free_pairs + lv.flat_pairs + lv.internal_pairs, lv.pairs_1);
  }
  // every level of M_1 plus any fallback pivots add up to rank C
  if (r.trace.terminal == TerminalAction::kCompleteMatching) {
    EXPECT_EQ(m1, k.faces() - k.volumes());
  } else {
    EXPECT_EQ(m1 + r.trace.fallback_rank, k.faces() - k.volumes());
  }
  EXPECT_GT(r.trace.boundary_checks, 0u);
}

TEST(VectorPotential, FallbackOnNonEulerOneComplex) {
  // A solid torus made of a ring of cubes: Euler 0.
  const auto grid = cube_grid(3);
  std::vector<Tet> tets;
  for (CellId c = 0; c < grid.volumes(); ++c) {
    auto s = grid.simplex(3, c);
    bool centre = true;
    for (CellId v : s) {
      const int x = int(v % 4), y = int((v / 4) % 4);
      centre = centre && x >= 1 && x <= 2 && y >= 1 && y <= 2;
    }
    if (!centre) tets.push_back({s[0], s[1], s[2], s[3]});
  }
  const auto k = build_from_tetrahedra(grid.vertices(), tets);
  ASSERT_EQ(validate(k).euler, 0);
  const auto i = random_solenoidal_field(k, 2, 10);
  const auto r = solve_vector_potential(k, i);
  expect_curl(k, r.h, i);
}
