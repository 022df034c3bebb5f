#include "curlinv/eliminate.hpp"

#include <limits>
#include <set>
#include <string>
#include <tuple>

#include "curlinv/errors.hpp"

namespace curlinv {
namespace {

struct Pivot {
  std::size_t row;  // local row index
  CellId col;       // local column index
};

class Eliminator {
 public:
  Eliminator(const SignedSparseMatrix& a, const Cochain* rhs) : a_(a) {
    const std::size_t m = a.rows();
    rows_.reserve(m);
    col_rows_.resize(a.cols());
    rhs_.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<SparseEntry> entries;
      for (const auto& e : a.row(a.row_ids()[r]).entries()) {
        const auto c = static_cast<CellId>(local_col(e.id));
        entries.push_back({c, e.value});
        col_rows_[c].insert(r);
      }
      rows_.emplace_back(std::move(entries));
      if (rhs) rhs_[r] = rhs->values()[r];
      active_.insert(r);
    }
  }

  void run() {
    while (auto p = choose_pivot()) eliminate(*p);
  }

  std::size_t rank() const { return pivots_.size(); }

  std::optional<Cochain> solve() const {
    for (std::size_t r : active_) {
      if (!rhs_[r].is_zero()) return std::nullopt;
    }
    std::vector<Scalar> x(a_.cols());
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const SparseVec& row = rows_[it->row];
      Scalar acc = rhs_[it->row];
      Scalar diag;
      for (const auto& e : row.entries()) {
        if (e.id == it->col) {
          diag = e.value;
        } else if (!x[e.id].is_zero()) {
          acc -= e.value * x[e.id];
        }
      }
      x[it->col] = acc / diag;
    }
    return Cochain(a_.col_dim(), a_.col_ids(), std::move(x));
  }

 private:
  std::size_t local_col(CellId id) const {
    const auto& ids = a_.col_ids();
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  }

  std::optional<Pivot> choose_pivot() const {
    std::optional<Pivot> best;
    auto best_key = std::make_tuple(std::numeric_limits<std::size_t>::max(), CellId{0}, CellId{0});
    for (std::size_t r : active_) {
      const std::size_t rn = rows_[r].nnz();
      if (rn == 0) continue;
      for (const auto& e : rows_[r].entries()) {
        const std::size_t cn = col_rows_[e.id].size();
        auto key = std::make_tuple((rn - 1) * (cn - 1), a_.row_ids()[r], a_.col_ids()[e.id]);
        if (!best || key < best_key) {
          best_key = key;
          best = Pivot{r, e.id};
        }
      }
      if (best && std::get<0>(best_key) == 0 && std::get<1>(best_key) <= a_.row_ids()[r]) {
        // Cost 0 at the smallest possible row id cannot be beaten.
        break;
      }
    }
    return best;
  }

  void eliminate(const Pivot& p) {
    active_.erase(p.row);
    for (const auto& e : rows_[p.row].entries()) col_rows_[e.id].erase(p.row);
    const Scalar diag = rows_[p.row].coeff(p.col);
    const std::vector<std::size_t> targets(col_rows_[p.col].begin(), col_rows_[p.col].end());
    for (std::size_t r : targets) {
      const Scalar factor = -(rows_[r].coeff(p.col) / diag);
      std::vector<CellId> appeared;
      std::vector<CellId> vanished;
      rows_[r] = rows_[r].axpy(factor, rows_[p.row], &appeared, &vanished);
      for (CellId c : appeared) col_rows_[c].insert(r);
      for (CellId c : vanished) col_rows_[c].erase(r);
      rhs_[r] += factor * rhs_[p.row];
    }
    pivots_.push_back(p);
  }

  const SignedSparseMatrix& a_;
  std::vector<SparseVec> rows_;
  std::vector<std::set<std::size_t>> col_rows_;
  std::vector<Scalar> rhs_;
  std::set<std::size_t> active_;
  std::vector<Pivot> pivots_;
};

}  // namespace

EliminationResult exact_eliminate_solve(const SignedSparseMatrix& a, const Cochain& rhs) {
  if (rhs.ids() != a.row_ids()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "right-hand side with " + std::to_string(rhs.size()) +
                    " entries does not match the matrix rows");
  }
  Eliminator elim(a, &rhs);
  elim.run();
  return EliminationResult{elim.solve(), elim.rank()};
}

std::size_t exact_rank(const SignedSparseMatrix& a) {
  Eliminator elim(a, nullptr);
  elim.run();
  return elim.rank();
}

}  // namespace curlinv
