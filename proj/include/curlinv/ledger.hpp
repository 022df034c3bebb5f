#pragma once

#include <cstdint>
#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "curlinv/complex.hpp"
#include "curlinv/sparse.hpp"

namespace curlinv {

enum class ElementStatus : std::uint8_t {
  kCritical,  // live, unmatched
  kMatchedD,  // first component of a pair (lower dimension)
  kMatchedU,  // second component of a pair (upper dimension)
};

// kFree: sigma had a single live coface when matched; kFlat: two;
// kInternal: more than two.
enum class PairKind : std::uint8_t { kFree, kFlat, kInternal };

std::string_view pair_kind_name(PairKind kind);
PairKind pair_kind_from_degree(std::size_t degree);

struct PairRecord {
  int k = 0;  // dimension of sigma
  CellId sigma = 0;
  CellId tau = 0;
  PairKind kind = PairKind::kFree;
  int level = 0;
  std::size_t order = 0;  // position in the ledger's global pair log
};

struct LedgerOptions {
  // Keep every element's expansion over the canonical cells of its
  // dimension. Only needed for inspection; costs a sparse update per
  // transformed element.
  bool track_expansions = false;
  // Re-check boundary-of-boundary on every element touched by a collapse.
  bool debug_checks = false;
};

// Mutable basis of the chain complex of a CellComplex.
//
// Element ids coincide with canonical cell ids: a collapse rewrites the
// upper-dimensional critical elements in place (tau' <- tau' - q tau), so
// an id always names the same basis slot. Matched elements are frozen, so
// their stored boundary is the snapshot taken at match time.
class BasisLedger {
 public:
  explicit BasisLedger(const CellComplex& complex, LedgerOptions options = {});

  const CellComplex& complex() const { return *complex_; }
  std::size_t count(int k) const { return elements_[dim_index(k)].size(); }

  ElementStatus status(int k, CellId id) const { return element(k, id).status; }
  bool is_live(int k, CellId id) const { return status(k, id) == ElementStatus::kCritical; }
  const SparseVec& boundary(int k, CellId id) const { return element(k, id).boundary; }
  // Live (k+1)-elements incident to this element.
  std::span<const CellId> live_coboundary(int k, CellId id) const { return element(k, id).cofaces; }
  std::size_t degree(int k, CellId id) const { return element(k, id).cofaces.size(); }

  std::size_t live_count(int k) const { return live_[dim_index(k)]; }
  IdSet live_ids(int k) const;

  int level() const { return level_; }
  void set_level(int level) { level_ = level; }

  // Cochain values evaluated on the basis elements of one dimension. They
  // are transformed together with the elements by every collapse.
  void attach_values(int k, std::vector<Scalar> values);
  bool has_values(int k) const { return !values_[dim_index(k)].empty(); }
  const Scalar& value(int k, CellId id) const;

  bool tracks_expansions() const { return options_.track_expansions; }
  const SparseVec& expansion(int k, CellId id) const;

  const std::vector<PairRecord>& pair_log() const { return pairs_; }
  std::size_t boundary_checks() const { return boundary_checks_; }

  // Collapses the pair (sigma, tau), sigma of dimension k. Every other live
  // (k+1)-element incident to sigma is replaced by
  //   tau' - <sigma, d tau'> / <sigma, d tau> * tau,
  // then sigma and tau are marked matched. Returns the live k-elements
  // whose degree changed, each listed once.
  std::vector<CellId> collapse_pair(int k, CellId sigma, CellId tau);

  // Largest boundary support over live elements of dimension k.
  std::size_t max_live_support(int k) const;
  // Number of tau' rewrites performed so far.
  std::size_t rewrites() const { return rewrites_; }

 private:
  struct Element {
    ElementStatus status = ElementStatus::kCritical;
    SparseVec boundary;
    std::vector<CellId> cofaces;
  };

  static std::size_t dim_index(int k);
  const Element& element(int k, CellId id) const;
  Element& element(int k, CellId id);
  void detach_from_boundary(int k, CellId id);
  void check_boundary_squared(int k, CellId id);

  const CellComplex* complex_;
  LedgerOptions options_;
  std::array<std::vector<Element>, 4> elements_;
  std::array<std::size_t, 4> live_{};
  std::array<std::vector<Scalar>, 4> values_;
  std::array<std::vector<SparseVec>, 4> expansions_;
  std::vector<PairRecord> pairs_;
  int level_ = 0;
  std::size_t boundary_checks_ = 0;
  std::size_t rewrites_ = 0;
};

}  // namespace curlinv
