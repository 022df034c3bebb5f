#include "curlinv/sparse.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "curlinv/errors.hpp"

namespace curlinv {
namespace {

std::optional<std::size_t> find_pos(const IdSet& ids, CellId id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids.begin());
}

std::size_t require_pos(const IdSet& ids, CellId id, const char* what) {
  auto pos = find_pos(ids, id);
  if (!pos) throw Error(ErrorCode::kUnknownIndex, std::string(what) + " id " + std::to_string(id));
  return *pos;
}

bool is_subset(const IdSet& sub, const IdSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace

IdSet make_id_set(std::vector<CellId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

IdSet iota_ids(std::size_t count) {
  IdSet ids(count);
  std::iota(ids.begin(), ids.end(), CellId{0});
  return ids;
}

// ---------------------------------------------------------------------------
// SparseVec

SparseVec::SparseVec(std::vector<SparseEntry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const SparseEntry& a, const SparseEntry& b) { return a.id < b.id; });
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().id == e.id) {
      entries_.back().value += e.value;
    } else {
      entries_.push_back(std::move(e));
    }
  }
  std::erase_if(entries_, [](const SparseEntry& e) { return e.value.is_zero(); });
}

const Scalar* SparseVec::find(CellId id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const SparseEntry& e, CellId key) { return e.id < key; });
  if (it == entries_.end() || it->id != id) return nullptr;
  return &it->value;
}

Scalar SparseVec::coeff(CellId id) const {
  const Scalar* v = find(id);
  return v ? *v : Scalar{};
}

SparseVec SparseVec::axpy(const Scalar& factor, const SparseVec& other, std::vector<CellId>* appeared,
                          std::vector<CellId>* vanished) const {
  SparseVec out;
  out.entries_.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->id < b->id)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->id < a->id) {
      out.entries_.push_back({b->id, factor * b->value});
      if (appeared) appeared->push_back(b->id);
      ++b;
    } else {
      Scalar v = a->value + factor * b->value;
      if (v.is_zero()) {
        if (vanished) vanished->push_back(a->id);
      } else {
        out.entries_.push_back({a->id, std::move(v)});
      }
      ++a;
      ++b;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cochain

Cochain::Cochain(int dim, IdSet ids) : dim_(dim), ids_(std::move(ids)), values_(ids_.size()) {}

Cochain::Cochain(int dim, IdSet ids, std::vector<Scalar> values)
    : dim_(dim), ids_(std::move(ids)), values_(std::move(values)) {
  if (values_.size() != ids_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "cochain has " + std::to_string(ids_.size()) +
                                                   " ids but " + std::to_string(values_.size()) +
                                                   " values");
  }
}

Cochain Cochain::zeros(int dim, std::size_t count) { return Cochain(dim, iota_ids(count)); }

std::optional<std::size_t> Cochain::position(CellId id) const {
  // Dense cochains (ids 0..n-1) are the common case.
  if (id < ids_.size() && ids_[id] == id) return id;
  return find_pos(ids_, id);
}

bool Cochain::contains(CellId id) const { return position(id).has_value(); }

const Scalar& Cochain::at(CellId id) const {
  auto pos = position(id);
  if (!pos) throw Error(ErrorCode::kUnknownIndex, "cochain id " + std::to_string(id));
  return values_[*pos];
}

Scalar& Cochain::at(CellId id) {
  auto pos = position(id);
  if (!pos) throw Error(ErrorCode::kUnknownIndex, "cochain id " + std::to_string(id));
  return values_[*pos];
}

bool Cochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Scalar& s) { return s.is_zero(); });
}

// ---------------------------------------------------------------------------
// SignedSparseMatrix

SignedSparseMatrix::SignedSparseMatrix(int row_dim, IdSet row_ids, int col_dim, IdSet col_ids,
                                       std::vector<Triplet> triplets)
    : row_dim_(row_dim),
      col_dim_(col_dim),
      row_ids_(std::move(row_ids)),
      col_ids_(std::move(col_ids)) {
  std::vector<std::vector<SparseEntry>> row_entries(row_ids_.size());
  for (auto& t : triplets) {
    const std::size_t r = require_pos(row_ids_, t.row, "row");
    require_pos(col_ids_, t.col, "column");
    if (!t.value.is_zero()) row_entries[r].push_back({t.col, std::move(t.value)});
  }
  rows_.reserve(row_ids_.size());
  std::vector<std::vector<SparseEntry>> col_entries(col_ids_.size());
  for (std::size_t r = 0; r < row_ids_.size(); ++r) {
    rows_.emplace_back(std::move(row_entries[r]));
    for (const auto& e : rows_.back().entries()) {
      col_entries[*find_pos(col_ids_, e.id)].push_back({row_ids_[r], e.value});
    }
  }
  cols_.reserve(col_ids_.size());
  for (auto& c : col_entries) cols_.emplace_back(std::move(c));
}

std::size_t SignedSparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.nnz();
  return n;
}

const SparseVec& SignedSparseMatrix::row(CellId row_id) const {
  return rows_[require_pos(row_ids_, row_id, "row")];
}

const SparseVec& SignedSparseMatrix::col(CellId col_id) const {
  return cols_[require_pos(col_ids_, col_id, "column")];
}

Scalar SignedSparseMatrix::at(CellId row_id, CellId col_id) const {
  require_pos(col_ids_, col_id, "column");
  return row(row_id).coeff(col_id);
}

std::vector<SignedSparseMatrix::Triplet> SignedSparseMatrix::triplets() const {
  std::vector<Triplet> out;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& e : rows_[r].entries()) out.push_back({row_ids_[r], e.id, e.value});
  }
  return out;
}

bool operator==(const SignedSparseMatrix& a, const SignedSparseMatrix& b) {
  return a.row_dim_ == b.row_dim_ && a.col_dim_ == b.col_dim_ && a.row_ids_ == b.row_ids_ &&
         a.col_ids_ == b.col_ids_ && a.rows_ == b.rows_;
}

SignedSparseMatrix block(const SignedSparseMatrix& m, const IdSet& rows, const IdSet& cols) {
  if (!is_subset(rows, m.row_ids())) throw Error(ErrorCode::kUnknownIndex, "block rows not in matrix");
  if (!is_subset(cols, m.col_ids())) throw Error(ErrorCode::kUnknownIndex, "block columns not in matrix");
  std::vector<SignedSparseMatrix::Triplet> trips;
  for (CellId r : rows) {
    for (const auto& e : m.row(r).entries()) {
      if (std::binary_search(cols.begin(), cols.end(), e.id)) trips.push_back({r, e.id, e.value});
    }
  }
  return SignedSparseMatrix(m.row_dim(), rows, m.col_dim(), cols, std::move(trips));
}

Cochain subvector(const Cochain& v, const IdSet& ids) {
  std::vector<Scalar> values;
  values.reserve(ids.size());
  for (CellId id : ids) values.push_back(v.at(id));
  return Cochain(v.dim(), ids, std::move(values));
}

Cochain apply(const SignedSparseMatrix& m, const Cochain& v) {
  if (v.dim() != m.col_dim() || v.ids() != m.col_ids()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cochain of dimension " + std::to_string(v.dim()) + " with " +
                    std::to_string(v.size()) + " entries does not match matrix columns");
  }
  Cochain out(m.row_dim(), m.row_ids());
  auto vals = v.values();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Scalar acc;
    for (const auto& e : m.row(m.row_ids()[r]).entries()) {
      const std::size_t c = *find_pos(m.col_ids(), e.id);
      if (!vals[c].is_zero()) acc += e.value * vals[c];
    }
    out.values()[r] = std::move(acc);
  }
  return out;
}

SignedSparseMatrix multiply(const SignedSparseMatrix& a, const SignedSparseMatrix& b) {
  if (a.col_ids() != b.row_ids()) throw Error(ErrorCode::kDimensionMismatch, "inner index sets differ");
  std::vector<SignedSparseMatrix::Triplet> trips;
  for (CellId r : a.row_ids()) {
    std::vector<SparseEntry> acc;
    for (const auto& e : a.row(r).entries()) {
      for (const auto& f : b.row(e.id).entries()) acc.push_back({f.id, e.value * f.value});
    }
    for (const auto& e : SparseVec(std::move(acc)).entries()) trips.push_back({r, e.id, e.value});
  }
  return SignedSparseMatrix(a.row_dim(), a.row_ids(), b.col_dim(), b.col_ids(), std::move(trips));
}

}  // namespace curlinv
