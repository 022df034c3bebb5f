#include "curlinv/ledger.hpp"

#include <algorithm>
#include <utility>
#include <string>

#include "curlinv/errors.hpp"

namespace curlinv {

std::string_view pair_kind_name(PairKind kind) {
  switch (kind) {
    case PairKind::kFree:
      return "free";
    case PairKind::kFlat:
      return "flat";
    case PairKind::kInternal:
      return "internal";
  }
  return "unknown";
}

PairKind pair_kind_from_degree(std::size_t degree) {
  if (degree <= 1) return PairKind::kFree;
  if (degree == 2) return PairKind::kFlat;
  return PairKind::kInternal;
}

BasisLedger::BasisLedger(const CellComplex& complex, LedgerOptions options)
    : complex_(&complex), options_(options) {
  for (int k = 0; k <= CellComplex::kMaxDim; ++k) {
    auto& elems = elements_[dim_index(k)];
    elems.resize(complex.count(k));
    live_[dim_index(k)] = elems.size();
    for (CellId c = 0; c < elems.size(); ++c) {
      if (k >= 1) {
        std::vector<SparseEntry> terms;
        for (const auto& t : complex.boundary(k, c)) terms.push_back({t.id, Scalar(t.sign)});
        elems[c].boundary = SparseVec(std::move(terms));
      }
      if (k < CellComplex::kMaxDim) {
        for (const auto& t : complex.coboundary(k, c)) elems[c].cofaces.push_back(t.id);
      }
    }
    if (options_.track_expansions) {
      auto& ex = expansions_[dim_index(k)];
      ex.reserve(elems.size());
      for (CellId c = 0; c < elems.size(); ++c) ex.emplace_back(std::vector<SparseEntry>{{c, Scalar(1)}});
    }
  }
}

std::size_t BasisLedger::dim_index(int k) {
  if (k < 0 || k > CellComplex::kMaxDim) throw Error(ErrorCode::kDimensionMismatch, "dimension " + std::to_string(k));
  return static_cast<std::size_t>(k);
}

const BasisLedger::Element& BasisLedger::element(int k, CellId id) const {
  const auto& elems = elements_[dim_index(k)];
  if (id >= elems.size()) {
    throw Error(ErrorCode::kUnknownIndex, std::to_string(k) + "-element " + std::to_string(id));
  }
  return elems[id];
}

BasisLedger::Element& BasisLedger::element(int k, CellId id) {
  return const_cast<Element&>(std::as_const(*this).element(k, id));
}

IdSet BasisLedger::live_ids(int k) const {
  IdSet ids;
  const auto& elems = elements_[dim_index(k)];
  for (CellId c = 0; c < elems.size(); ++c) {
    if (elems[c].status == ElementStatus::kCritical) ids.push_back(c);
  }
  return ids;
}

void BasisLedger::attach_values(int k, std::vector<Scalar> values) {
  if (values.size() != count(k)) {
    throw Error(ErrorCode::kDimensionMismatch, "expected " + std::to_string(count(k)) + " values, got " +
                                                   std::to_string(values.size()));
  }
  values_[dim_index(k)] = std::move(values);
}

const Scalar& BasisLedger::value(int k, CellId id) const {
  const auto& vals = values_[dim_index(k)];
  if (vals.empty()) throw Error(ErrorCode::kMissingValue, "no values attached in dimension " + std::to_string(k));
  if (id >= vals.size()) throw Error(ErrorCode::kUnknownIndex, std::to_string(k) + "-element " + std::to_string(id));
  return vals[id];
}

const SparseVec& BasisLedger::expansion(int k, CellId id) const {
  if (!options_.track_expansions) throw Error(ErrorCode::kInternal, "ledger does not track canonical expansions");
  element(k, id);  // bounds check
  return expansions_[dim_index(k)][id];
}

std::size_t BasisLedger::max_live_support(int k) const {
  std::size_t best = 0;
  for (const auto& e : elements_[dim_index(k)]) {
    if (e.status == ElementStatus::kCritical) best = std::max(best, e.boundary.nnz());
  }
  return best;
}

namespace {

void erase_one(std::vector<CellId>& list, CellId id) {
  auto it = std::find(list.begin(), list.end(), id);
  if (it != list.end()) {
    *it = list.back();
    list.pop_back();
  }
}

void note_touched(std::vector<CellId>& touched, CellId id) {
  if (std::find(touched.begin(), touched.end(), id) == touched.end()) touched.push_back(id);
}

}  // namespace

void BasisLedger::detach_from_boundary(int k, CellId id) {
  if (k == 0) return;
  for (const auto& t : element(k, id).boundary.entries()) erase_one(element(k - 1, t.id).cofaces, id);
}

void BasisLedger::check_boundary_squared(int k, CellId id) {
  if (k < 2) return;
  ++boundary_checks_;
  std::vector<SparseEntry> acc;
  for (const auto& t : element(k, id).boundary.entries()) {
    for (const auto& u : element(k - 1, t.id).boundary.entries()) acc.push_back({u.id, t.value * u.value});
  }
  if (!SparseVec(std::move(acc)).empty()) {
    throw Error(ErrorCode::kInternal,
                "boundary of boundary is nonzero on " + std::to_string(k) + "-element " + std::to_string(id));
  }
}

std::vector<CellId> BasisLedger::collapse_pair(int k, CellId sigma, CellId tau) {
  if (k < 0 || k >= CellComplex::kMaxDim) throw Error(ErrorCode::kDimensionMismatch, "pair dimension " + std::to_string(k));
  if (!is_live(k, sigma)) throw Error(ErrorCode::kNotLive, std::to_string(k) + "-element " + std::to_string(sigma));
  if (!is_live(k + 1, tau)) throw Error(ErrorCode::kNotLive, std::to_string(k + 1) + "-element " + std::to_string(tau));
  const Scalar* pivot_ptr = element(k + 1, tau).boundary.find(sigma);
  if (!pivot_ptr) {
    throw Error(ErrorCode::kNotIncident, std::to_string(k) + "-element " + std::to_string(sigma) +
                                             " is not in the boundary of " + std::to_string(tau));
  }
  const Scalar pivot = *pivot_ptr;
  const auto ku = static_cast<std::size_t>(k);
  const auto up = ku + 1;

  std::vector<CellId> others;
  for (CellId t : element(k, sigma).cofaces) {
    if (t != tau) others.push_back(t);
  }
  const PairKind kind = pair_kind_from_degree(others.size() + 1);
  std::sort(others.begin(), others.end());

  std::vector<CellId> touched;
  std::vector<CellId> appeared;
  std::vector<CellId> vanished;
  const SparseVec tau_boundary = element(k + 1, tau).boundary;
  for (CellId other : others) {
    Element& target = element(k + 1, other);
    const Scalar factor = -(target.boundary.coeff(sigma) / pivot);
    appeared.clear();
    vanished.clear();
    target.boundary = target.boundary.axpy(factor, tau_boundary, &appeared, &vanished);
    for (CellId rho : appeared) {
      element(k, rho).cofaces.push_back(other);
      if (rho != sigma && is_live(k, rho)) note_touched(touched, rho);
    }
    for (CellId rho : vanished) {
      erase_one(element(k, rho).cofaces, other);
      if (rho != sigma && is_live(k, rho)) note_touched(touched, rho);
    }
    if (!values_[up].empty()) values_[up][other] += factor * values_[up][tau];
    if (options_.track_expansions) {
      auto& ex = expansions_[up];
      ex[other] = ex[other].axpy(factor, ex[tau]);
    }
    ++rewrites_;
  }

  // sigma and tau leave the live set.
  detach_from_boundary(k, sigma);
  for (const auto& t : tau_boundary.entries()) {
    erase_one(element(k, t.id).cofaces, tau);
    if (t.id != sigma && is_live(k, t.id)) note_touched(touched, t.id);
  }
  element(k, sigma).status = ElementStatus::kMatchedD;
  element(k + 1, tau).status = ElementStatus::kMatchedU;
  --live_[ku];
  --live_[up];
  pairs_.push_back(PairRecord{k, sigma, tau, kind, level_, pairs_.size()});

  if (options_.debug_checks) {
    check_boundary_squared(k + 1, tau);
    for (CellId other : others) check_boundary_squared(k + 1, other);
    if (!element(k, sigma).cofaces.empty()) {
      throw Error(ErrorCode::kInternal, "matched element still has live cofaces");
    }
  }
  return touched;
}

}  // namespace curlinv
