#pragma once

#include <optional>

#include "curlinv/sparse.hpp"

namespace curlinv {

struct EliminationResult {
  // Empty when the right-hand side is not in the range of the matrix.
  std::optional<Cochain> solution;
  std::size_t rank = 0;

  bool consistent() const { return solution.has_value(); }
};

// Exact sparse Gaussian elimination with Markowitz pivoting: the pivot
// minimises (row_nnz - 1) * (col_nnz - 1), ties broken by smallest row id
// then smallest column id. Non-pivot unknowns are set to zero. `rhs` must
// be indexed by the matrix rows; the solution is indexed by its columns.
EliminationResult exact_eliminate_solve(const SignedSparseMatrix& a, const Cochain& rhs);

std::size_t exact_rank(const SignedSparseMatrix& a);

}  // namespace curlinv
