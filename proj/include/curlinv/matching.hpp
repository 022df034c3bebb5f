#pragma once

#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

#include "curlinv/complex.hpp"
#include "curlinv/ledger.hpp"
#include "curlinv/sparse.hpp"

namespace curlinv {

inline constexpr CellId kNoCell = std::numeric_limits<CellId>::max();

struct MatchedPair {
  CellId sigma;  // k-element
  CellId tau;    // (k+1)-element
  PairKind kind = PairKind::kFree;
  int level = 0;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

// Pairs are stored in an order witnessing acyclicity: sigma_i is not
// incident to tau_j for any j > i.
struct Matching {
  int k = 0;
  std::vector<MatchedPair> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  IdSet lower() const;  // D_k
  IdSet upper() const;  // U_{k+1}
  IdSet critical_lower(std::size_t count_k) const;
  IdSet critical_upper(std::size_t count_k1) const;
  std::size_t count(PairKind kind) const;
};

// The pairs of one dimension (and optionally one level) from a ledger's log.
Matching matching_from_ledger(const BasisLedger& ledger, int k, int level = -1);

struct GreedyOptions {
  // 0 keeps ascending-id selection inside each degree bucket; any other
  // value draws a seeded random priority per element.
  std::uint64_t seed = 0;
  // Run free and flat phases again until neither finds a pair. The k = 2
  // pass at level 0 needs this to reach every volume.
  bool until_stable = false;
};

// Free pairs until exhaustion, then flat pairs until exhaustion, each pair
// collapsed in the ledger as it is taken. A flat sigma is paired with the
// coface whose current boundary is shorter (ties: smaller id).
Matching greedy_matching(BasisLedger& ledger, int k, const GreedyOptions& options = {});

// Rooted tree over mesh vertices (primal) or volumes plus v_inf (dual).
// In the dual case node id volumes() stands for v_inf and parent_edge holds
// the face realising the dual edge.
struct SpanningTree {
  bool dual = false;
  CellId root = 0;
  std::vector<CellId> parent;
  std::vector<CellId> parent_edge;
  std::vector<CellId> order;  // BFS order, root first

  std::size_t nodes() const { return parent.size(); }
  IdSet edges() const;
};

struct DualEdge {
  CellId a;
  CellId b;  // volumes() for v_inf
  CellId face;
};

struct DualGraph {
  std::size_t volumes = 0;  // node `volumes` is v_inf
  std::vector<DualEdge> edges;
  std::vector<std::vector<std::uint32_t>> adjacency;  // edge indices per node
};

DualGraph dual_graph(const CellComplex& complex);

// BFS tree of the vertex-edge graph. seed != 0 shuffles neighbour order.
SpanningTree bfs_spanning_tree(const CellComplex& complex, CellId root, std::uint64_t seed = 0);
SpanningTree bfs_dual_tree(const CellComplex& complex, std::uint64_t seed = 0);
// Spanning tree from an explicit list of edge ids, rooted at vertex 0.
SpanningTree tree_from_edges(const CellComplex& complex, const IdSet& tree_edges);

Matching spanning_tree_matching_0(const CellComplex& complex, CellId root, std::uint64_t seed = 0);
Matching spanning_tree_matching_2(const CellComplex& complex, std::uint64_t seed = 0);

// Kahn's algorithm on the pair digraph, arcs i -> j when sigma_i lies in
// the boundary of tau_j. The ledger form reads match-time snapshots, the
// complex form the canonical boundaries.
bool verify_acyclic(const Matching& m, const BasisLedger& ledger);
bool verify_acyclic(const Matching& m, const CellComplex& complex);

struct TriangularCheck {
  std::size_t below_diagonal = 0;  // nonzeros (tau_i, sigma_j) with j < i
  std::size_t zero_diagonal = 0;
  bool ok() const { return below_diagonal == 0 && zero_diagonal == 0; }
};

// block(D_k, U x D) in pair order, from snapshots / canonical boundaries.
TriangularCheck check_triangular(const Matching& m, const BasisLedger& ledger);
TriangularCheck check_triangular(const Matching& m, const CellComplex& complex);

// |M| against rank D_k: counting formulas when Euler = 1, exact rank otherwise.
std::size_t incidence_rank(const CellComplex& complex, int k);
bool is_complete(const Matching& m, const CellComplex& complex);

// Pair kinds for a matching applied to the canonical basis in stored
// order: degree of sigma_i counts upper cells not yet consumed.
void classify_kinds(Matching& m, const CellComplex& complex);

struct SttTerminated {
  Cochain h;
  Matching used;  // reverse use order, so the stored order is acyclic
};

struct SttStalled {
  IdSet unresolved_faces;
  std::size_t sweeps = 0;
};

using SttResult = std::variant<SttTerminated, SttStalled>;

// Spanning Tree Technique: h = 0 on tree edges, then faces with exactly one
// unknown edge are resolved in ascending-id sweeps. Faces whose edges are
// all known are checked for consistency (InconsistentInput on mismatch).
SttResult stt_run(const CellComplex& complex, const SpanningTree& tree, const Cochain& field);

// Critical edges of a complete M_1 on the canonical basis.
SpanningTree tree_from_matching(const Matching& m1, const CellComplex& complex);

}  // namespace curlinv
