#include "curlinv/solver.hpp"

#include <chrono>
#include <string>

#include "curlinv/eliminate.hpp"
#include "curlinv/errors.hpp"

namespace curlinv {

std::string_view terminal_action_name(TerminalAction action) {
  switch (action) {
    case TerminalAction::kCompleteMatching:
      return "complete-matching";
    case TerminalAction::kFallbackSolver:
      return "fallback-solver";
    case TerminalAction::kEmpty:
      return "empty";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Dense solve state for one dimension.
struct DenseValues {
  std::vector<Scalar> x;
  std::vector<char> known;

  explicit DenseValues(std::size_t n) : x(n), known(n, 0) {}

  void supply(const Cochain& c) {
    const auto vals = c.values();
    for (std::size_t i = 0; i < c.size(); ++i) {
      const CellId id = c.ids()[i];
      if (id >= x.size()) throw Error(ErrorCode::kUnknownIndex, "supplied value for element " + std::to_string(id));
      x[id] = vals[i];
      known[id] = 1;
    }
  }
};

template <typename Facets, typename Rhs>
void back_substitute(const std::vector<MatchedPair>& pairs, Facets&& facets, Rhs&& rhs, DenseValues& vals) {
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
    Scalar acc = rhs(it->tau);
    Scalar pivot;
    facets(it->tau, [&](CellId s, const Scalar& coef) {
      if (s == it->sigma) {
        pivot = coef;
      } else if (!vals.known[s]) {
        throw Error(ErrorCode::kMissingValue, "element " + std::to_string(s) + " needed by " +
                                                  std::to_string(it->tau) + " has no value");
      } else {
        acc -= coef * vals.x[s];
      }
    });
    if (pivot.is_zero()) {
      throw Error(ErrorCode::kNotIncident,
                  std::to_string(it->sigma) + " is not in the boundary of " + std::to_string(it->tau));
    }
    vals.x[it->sigma] = acc / pivot;
    vals.known[it->sigma] = 1;
  }
}

Cochain collect(const Matching& m, const DenseValues& vals) {
  IdSet ids = m.lower();
  std::vector<Scalar> out;
  out.reserve(ids.size());
  for (CellId id : ids) out.push_back(vals.x[id]);
  return Cochain(m.k, std::move(ids), std::move(out));
}

}  // namespace

Cochain back_substitution(const Matching& m, const BasisLedger& ledger, const Cochain& rhs,
                          const Cochain& supplied) {
  DenseValues vals(ledger.count(m.k));
  vals.supply(supplied);
  back_substitute(
      m.pairs,
      [&](CellId tau, auto&& fn) {
        for (const auto& e : ledger.boundary(m.k + 1, tau).entries()) fn(e.id, e.value);
      },
      [&](CellId tau) { return rhs.at(tau); }, vals);
  return collect(m, vals);
}

Cochain back_substitution(const Matching& m, const CellComplex& complex, const Cochain& rhs,
                          const Cochain& supplied) {
  DenseValues vals(complex.count(m.k));
  vals.supply(supplied);
  back_substitute(
      m.pairs,
      [&](CellId tau, auto&& fn) {
        for (const auto& t : complex.boundary(m.k + 1, tau)) fn(t.id, Scalar(t.sign));
      },
      [&](CellId tau) { return rhs.at(tau); }, vals);
  return collect(m, vals);
}

std::size_t zero_block_violations(const BasisLedger& ledger) {
  std::size_t bad = 0;
  for (CellId f = 0; f < ledger.count(2); ++f) {
    if (!ledger.is_live(2, f)) continue;
    for (const auto& e : ledger.boundary(2, f).entries()) {
      if (!ledger.is_live(1, e.id)) ++bad;
    }
  }
  return bad;
}

ResidualSystem split_residual(const BasisLedger& ledger, const Matching& m1) {
  if (const auto bad = zero_block_violations(ledger); bad != 0) {
    throw Error(ErrorCode::kZeroBlockViolation, std::to_string(bad) + " nonzeros in the C_2 x D_1 block");
  }
  const IdSet live_faces = ledger.live_ids(2);
  const IdSet live_edges = ledger.live_ids(1);

  std::vector<SignedSparseMatrix::Triplet> trip;
  std::vector<Scalar> rhs;
  rhs.reserve(live_faces.size());
  for (CellId f : live_faces) {
    for (const auto& e : ledger.boundary(2, f).entries()) trip.push_back({f, e.id, e.value});
    rhs.push_back(ledger.value(2, f));
  }
  ResidualSystem out;
  out.a_res = SignedSparseMatrix(2, live_faces, 1, live_edges, std::move(trip));
  out.b_res = Cochain(2, live_faces, std::move(rhs));

  trip.clear();
  const IdSet u2 = m1.upper();
  for (CellId f : u2) {
    for (const auto& e : ledger.boundary(2, f).entries()) {
      if (ledger.is_live(1, e.id)) trip.push_back({f, e.id, e.value});
    }
  }
  out.coupling = SignedSparseMatrix(2, u2, 1, live_edges, std::move(trip));
  return out;
}

VectorPotential solve_vector_potential(const CellComplex& complex, const Cochain& field,
                                       const SolveOptions& options) {
  const auto t_start = Clock::now();
  const std::size_t ne = complex.edges();
  const std::size_t nf = complex.faces();
  if (field.dim() != 2 || field.ids() != iota_ids(nf)) {
    throw Error(ErrorCode::kDimensionMismatch, "field must be a dense cochain on the " + std::to_string(nf) + " faces");
  }
  if (complex.volumes() > 0 && !apply(incidence_matrix(complex, 2), field).is_zero()) {
    throw Error(ErrorCode::kNotSolenoidal, "D i is not zero");
  }

  VectorPotential result;
  SolveTrace& trace = result.trace;
  BasisLedger ledger(complex, LedgerOptions{options.track_expansions, options.debug_checks});
  ledger.attach_values(2, std::vector<Scalar>(field.values().begin(), field.values().end()));

  if (nf == 0) {
    trace.terminal = TerminalAction::kEmpty;
    result.h = Cochain::zeros(1, ne);
    trace.seconds = seconds_since(t_start);
    return result;
  }

  for (int level = 0;; ++level) {
    const auto t_level = Clock::now();
    ledger.set_level(level);
    LevelTrace lt;
    lt.level = level;
    lt.basis_1 = ledger.live_count(1);
    lt.basis_2 = ledger.live_count(2);

    if (level == 0 && complex.volumes() > 0) {
      const Matching m2 = greedy_matching(ledger, 2, GreedyOptions{options.seed, true});
      lt.pairs_2 = m2.size();
      if (ledger.live_count(3) != 0) {
        throw Error(ErrorCode::kInternal,
                    std::to_string(ledger.live_count(3)) + " volumes left unmatched by the 2-collapse pass");
      }
    }
    const Matching m1 = greedy_matching(ledger, 1, GreedyOptions{options.seed, false});
    lt.pairs_1 = m1.size();
    lt.free_pairs = m1.count(PairKind::kFree);
    lt.flat_pairs = m1.count(PairKind::kFlat);
    lt.internal_pairs = m1.count(PairKind::kInternal);
    lt.critical_1 = ledger.live_count(1);
    lt.critical_2 = ledger.live_count(2);
    for (CellId f = 0; f < nf; ++f) {
      if (ledger.is_live(2, f) && !ledger.boundary(2, f).empty()) ++lt.residual_rows;
    }
    lt.max_face_support = ledger.max_live_support(2);

    if (lt.residual_rows == 0) {
      lt.seconds = seconds_since(t_level);
      trace.levels.push_back(lt);
      trace.terminal = TerminalAction::kCompleteMatching;
      break;
    }
    // Residual split: the zero block is what lets the child level ignore
    // the edges matched here.
    if (const auto bad = zero_block_violations(ledger); bad != 0) {
      throw Error(ErrorCode::kZeroBlockViolation,
                  std::to_string(bad) + " nonzeros in the C_2 x D_1 block at level " + std::to_string(level));
    }
    lt.zero_block_checked = true;
    ++trace.zero_block_checks;
    lt.seconds = seconds_since(t_level);
    trace.levels.push_back(lt);
    if (m1.empty()) {
      trace.terminal = TerminalAction::kFallbackSolver;
      break;
    }
  }

  DenseValues h(ne);
  const IdSet live_edges = ledger.live_ids(1);
  for (CellId e : live_edges) h.known[e] = 1;  // zero unless the fallback says otherwise

  if (trace.terminal == TerminalAction::kFallbackSolver) {
    const Matching m1_last = matching_from_ledger(ledger, 1, trace.depth());
    ResidualSystem rs = split_residual(ledger, m1_last);
    trace.fallback_rows = rs.a_res.rows();
    trace.fallback_cols = rs.a_res.cols();
    EliminationResult er = exact_eliminate_solve(rs.a_res, rs.b_res);
    trace.fallback_rank = er.rank;
    if (!er.solution) {
      throw Error(ErrorCode::kInconsistentInput, "residual system has no solution");
    }
    const auto vals = er.solution->values();
    for (std::size_t j = 0; j < er.solution->size(); ++j) h.x[er.solution->ids()[j]] = vals[j];
  }

  // One reverse pass over every M_1 pair of every level: children were
  // matched later, so their values are ready when a parent pair needs them.
  const Matching all_m1 = matching_from_ledger(ledger, 1);
  back_substitute(
      all_m1.pairs,
      [&](CellId tau, auto&& fn) {
        for (const auto& e : ledger.boundary(2, tau).entries()) fn(e.id, e.value);
      },
      [&](CellId tau) { return ledger.value(2, tau); }, h);

  result.h = Cochain(1, iota_ids(ne), std::move(h.x));
  const Cochain residual = apply(incidence_matrix(complex, 1), result.h);
  if (residual != field) {
    if (complex.euler_characteristic() == 1) throw Error(ErrorCode::kInternal, "C h differs from i");
    throw Error(ErrorCode::kInconsistentInput, "field is not a curl on this complex (nontrivial topology)");
  }
  trace.boundary_checks = ledger.boundary_checks();
  trace.rewrites = ledger.rewrites();
  trace.seconds = seconds_since(t_start);
  return result;
}

Cochain solve_gradient_potential(const CellComplex& complex, const Cochain& w) {
  if (w.dim() != 1 || w.ids() != iota_ids(complex.edges())) {
    throw Error(ErrorCode::kDimensionMismatch, "w must be a dense cochain on the edges");
  }
  if (complex.faces() > 0 && !apply(incidence_matrix(complex, 1), w).is_zero()) {
    throw Error(ErrorCode::kNotCurlFree, "C w is not zero");
  }
  if (complex.vertices() == 0) return Cochain(0, {});
  const Matching m0 = spanning_tree_matching_0(complex, 0);
  Cochain root(0, IdSet{0});
  const Cochain matched = back_substitution(m0, complex, w, root);
  std::vector<Scalar> v(complex.vertices());
  for (std::size_t i = 0; i < matched.size(); ++i) v[matched.ids()[i]] = matched.values()[i];
  Cochain out(0, iota_ids(complex.vertices()), std::move(v));
  if (apply(incidence_matrix(complex, 0), out) != w) {
    throw Error(ErrorCode::kInconsistentInput, "w is curl-free but not a gradient on this complex");
  }
  return out;
}

Cochain solve_divergence_potential(const CellComplex& complex, const Cochain& q) {
  if (q.dim() != 3 || q.ids() != iota_ids(complex.volumes())) {
    throw Error(ErrorCode::kDimensionMismatch, "q must be a dense cochain on the volumes");
  }
  const Matching m2 = spanning_tree_matching_2(complex);
  const Cochain critical(2, m2.critical_lower(complex.faces()));
  const Cochain matched = back_substitution(m2, complex, q, critical);
  std::vector<Scalar> v(complex.faces());
  for (std::size_t i = 0; i < matched.size(); ++i) v[matched.ids()[i]] = matched.values()[i];
  Cochain out(2, iota_ids(complex.faces()), std::move(v));
  if (apply(incidence_matrix(complex, 2), out) != q) throw Error(ErrorCode::kInternal, "D v differs from q");
  return out;
}

}  // namespace curlinv
