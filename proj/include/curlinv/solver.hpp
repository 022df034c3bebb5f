#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "curlinv/complex.hpp"
#include "curlinv/ledger.hpp"
#include "curlinv/matching.hpp"
#include "curlinv/sparse.hpp"

namespace curlinv {

struct SolveOptions {
  std::uint64_t seed = 0;  // greedy selection order, see GreedyOptions
  bool debug_checks = false;
  bool track_expansions = false;
};

enum class TerminalAction { kCompleteMatching, kFallbackSolver, kEmpty };

std::string_view terminal_action_name(TerminalAction action);

struct LevelTrace {
  int level = 0;
  std::size_t basis_1 = 0;  // |B_1^(i)|: live edges entering the level
  std::size_t basis_2 = 0;  // |B_2^(i)|
  std::size_t pairs_2 = 0;  // |M_2^(i)|, nonzero at level 0 only
  std::size_t pairs_1 = 0;  // |M_1^(i)|
  std::size_t free_pairs = 0;
  std::size_t flat_pairs = 0;
  std::size_t internal_pairs = 0;
  std::size_t critical_1 = 0;     // |C_1^(i)|
  std::size_t critical_2 = 0;     // |C_2^(i)|
  std::size_t residual_rows = 0;  // critical faces with a nonzero boundary
  std::size_t max_face_support = 0;
  bool zero_block_checked = false;
  double seconds = 0.0;
};

struct SolveTrace {
  std::vector<LevelTrace> levels;
  TerminalAction terminal = TerminalAction::kEmpty;
  std::size_t fallback_rows = 0;
  std::size_t fallback_cols = 0;
  std::size_t fallback_rank = 0;
  std::size_t zero_block_checks = 0;
  std::size_t boundary_checks = 0;  // debug-mode boundary-of-boundary checks
  std::size_t rewrites = 0;
  double seconds = 0.0;

  int depth() const { return levels.empty() ? 0 : static_cast<int>(levels.size()) - 1; }
  // |B_2^(1)|, zero when the solve finished at level 0.
  std::size_t basis_2_level_1() const { return levels.size() > 1 ? levels[1].basis_2 : 0; }
};

struct VectorPotential {
  Cochain h;  // canonical edges
  SolveTrace trace;
};

// Back substitution over the pairs of m in reverse order. `rhs` must hold a value for
// every tau; `supplied` gives the k-elements outside D_k that the
// boundaries reference (usually zeros on the critical set). The ledger
// form reads match-time snapshots, the complex form canonical boundaries.
Cochain back_substitution(const Matching& m, const BasisLedger& ledger, const Cochain& rhs,
                          const Cochain& supplied);
Cochain back_substitution(const Matching& m, const CellComplex& complex, const Cochain& rhs,
                          const Cochain& supplied);

struct ResidualSystem {
  SignedSparseMatrix a_res;     // C' on C_2 x C_1
  Cochain b_res;                // i' on C_2
  SignedSparseMatrix coupling;  // C' on U_2 x C_1
};

// Number of nonzeros of C' on C_2 x D_1; must be zero after any acyclic
// M_1 has been collapsed.
std::size_t zero_block_violations(const BasisLedger& ledger);

// Needs face values attached to the ledger. Throws ZeroBlockViolation.
ResidualSystem split_residual(const BasisLedger& ledger, const Matching& m1);

VectorPotential solve_vector_potential(const CellComplex& complex, const Cochain& field,
                                       const SolveOptions& options = {});

// G v = w with v(root) = 0, from the k = 0 spanning-tree matching.
Cochain solve_gradient_potential(const CellComplex& complex, const Cochain& w);

// D v = q, from the k = 2 spanning-tree matching with critical faces at 0.
Cochain solve_divergence_potential(const CellComplex& complex, const Cochain& q);

}  // namespace curlinv
