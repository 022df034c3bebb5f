#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "curlinv/scalar.hpp"

namespace curlinv {

using CellId = std::uint32_t;

// Sorted, duplicate-free list of ids.
using IdSet = std::vector<CellId>;

IdSet make_id_set(std::vector<CellId> ids);
IdSet iota_ids(std::size_t count);

struct SparseEntry {
  CellId id;
  Scalar value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Sparse vector with entries sorted by id and no explicit zeros.
class SparseVec {
 public:
  SparseVec() = default;
  explicit SparseVec(std::vector<SparseEntry> entries);  // sorts, merges duplicates, drops zeros

  std::span<const SparseEntry> entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Zero when absent.
  Scalar coeff(CellId id) const;
  const Scalar* find(CellId id) const;

  // Returns *this + factor * other. Ids whose coefficient changes between
  // zero and nonzero are appended to `appeared` / `vanished` when given.
  SparseVec axpy(const Scalar& factor, const SparseVec& other,
                 std::vector<CellId>* appeared = nullptr,
                 std::vector<CellId>* vanished = nullptr) const;

  friend bool operator==(const SparseVec&, const SparseVec&) = default;

 private:
  std::vector<SparseEntry> entries_;
};

// Coefficient array indexed by an explicit id set of one dimension.
class Cochain {
 public:
  Cochain() = default;
  Cochain(int dim, IdSet ids);  // zero-initialised
  Cochain(int dim, IdSet ids, std::vector<Scalar> values);

  // Dense cochain over ids 0..count-1.
  static Cochain zeros(int dim, std::size_t count);

  int dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  const IdSet& ids() const { return ids_; }
  std::span<const Scalar> values() const { return values_; }
  std::span<Scalar> values() { return values_; }

  bool contains(CellId id) const;
  // Throws UnknownIndex when the id is not in the index set.
  const Scalar& at(CellId id) const;
  Scalar& at(CellId id);

  bool is_zero() const;

  friend bool operator==(const Cochain&, const Cochain&) = default;

 private:
  std::optional<std::size_t> position(CellId id) const;

  int dim_ = 0;
  IdSet ids_;
  std::vector<Scalar> values_;
};

// Exact sparse matrix with signed entries, indexed by arbitrary row and
// column id sets. Both row-major and column-major views are kept.
class SignedSparseMatrix {
 public:
  struct Triplet {
    CellId row;
    CellId col;
    Scalar value;
  };

  SignedSparseMatrix() = default;
  // Zero-valued triplets are dropped; duplicates are summed. Throws
  // UnknownIndex if a triplet references an id outside the index sets.
  SignedSparseMatrix(int row_dim, IdSet row_ids, int col_dim, IdSet col_ids,
                     std::vector<Triplet> triplets);

  int row_dim() const { return row_dim_; }
  int col_dim() const { return col_dim_; }
  const IdSet& row_ids() const { return row_ids_; }
  const IdSet& col_ids() const { return col_ids_; }
  std::size_t rows() const { return row_ids_.size(); }
  std::size_t cols() const { return col_ids_.size(); }
  std::size_t nnz() const;

  // Rows are keyed by column id, columns by row id.
  const SparseVec& row(CellId row_id) const;
  const SparseVec& col(CellId col_id) const;
  Scalar at(CellId row_id, CellId col_id) const;

  std::vector<Triplet> triplets() const;

  friend bool operator==(const SignedSparseMatrix& a, const SignedSparseMatrix& b);

 private:
  int row_dim_ = 0;
  int col_dim_ = 0;
  IdSet row_ids_;
  IdSet col_ids_;
  std::vector<SparseVec> rows_;
  std::vector<SparseVec> cols_;
};

// Induced submatrix on rows x cols, ids preserved.
SignedSparseMatrix block(const SignedSparseMatrix& m, const IdSet& rows, const IdSet& cols);

// Restriction of v to ids, ids preserved.
Cochain subvector(const Cochain& v, const IdSet& ids);

// Exact product; v's index set must equal m's column index set.
Cochain apply(const SignedSparseMatrix& m, const Cochain& v);

SignedSparseMatrix multiply(const SignedSparseMatrix& a, const SignedSparseMatrix& b);

}  // namespace curlinv
