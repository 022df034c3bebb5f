#include "curlinv/matching.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <random>
#include <set>
#include <string>

#include "curlinv/eliminate.hpp"
#include "curlinv/errors.hpp"

namespace curlinv {

IdSet Matching::lower() const {
  std::vector<CellId> ids;
  for (const auto& p : pairs) ids.push_back(p.sigma);
  return make_id_set(std::move(ids));
}

IdSet Matching::upper() const {
  std::vector<CellId> ids;
  for (const auto& p : pairs) ids.push_back(p.tau);
  return make_id_set(std::move(ids));
}

namespace {

IdSet complement(const IdSet& taken, std::size_t count) {
  IdSet out;
  auto it = taken.begin();
  for (CellId c = 0; c < count; ++c) {
    if (it != taken.end() && *it == c) {
      ++it;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

IdSet Matching::critical_lower(std::size_t count_k) const { return complement(lower(), count_k); }
IdSet Matching::critical_upper(std::size_t count_k1) const { return complement(upper(), count_k1); }

std::size_t Matching::count(PairKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(), [&](const MatchedPair& p) { return p.kind == kind; }));
}

Matching matching_from_ledger(const BasisLedger& ledger, int k, int level) {
  Matching m;
  m.k = k;
  for (const auto& rec : ledger.pair_log()) {
    if (rec.k != k || (level >= 0 && rec.level != level)) continue;
    m.pairs.push_back({rec.sigma, rec.tau, rec.kind, rec.level});
  }
  return m;
}

// ---------------------------------------------------------------- greedy

Matching greedy_matching(BasisLedger& ledger, int k, const GreedyOptions& options) {
  if (k < 0 || k >= CellComplex::kMaxDim) throw Error(ErrorCode::kDimensionMismatch, "greedy k=" + std::to_string(k));
  Matching m;
  m.k = k;
  const std::size_t n = ledger.count(k);

  std::vector<std::uint64_t> prio;
  if (options.seed != 0) {
    std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(k));
    prio.resize(n);
    for (auto& p : prio) p = rng();
  }
  auto key = [&](CellId c) -> std::uint64_t { return prio.empty() ? c : prio[c]; };

  using Item = std::pair<std::uint64_t, CellId>;
  using Heap = std::priority_queue<Item, std::vector<Item>, std::greater<>>;

  auto run_phase = [&](std::size_t degree) {
    Heap heap;
    for (CellId c = 0; c < n; ++c) {
      if (ledger.is_live(k, c) && ledger.degree(k, c) == degree) heap.emplace(key(c), c);
    }
    std::size_t made = 0;
    while (!heap.empty()) {
      const CellId sigma = heap.top().second;
      heap.pop();
      if (!ledger.is_live(k, sigma) || ledger.degree(k, sigma) != degree) continue;
      auto cof = ledger.live_coboundary(k, sigma);
      CellId tau = cof[0];
      if (degree == 2) {
        const CellId other = cof[1];
        const auto na = ledger.boundary(k + 1, tau).nnz();
        const auto nb = ledger.boundary(k + 1, other).nnz();
        if (nb < na || (nb == na && other < tau)) tau = other;
      }
      const auto touched = ledger.collapse_pair(k, sigma, tau);
      const auto& rec = ledger.pair_log().back();
      m.pairs.push_back({sigma, tau, rec.kind, rec.level});
      ++made;
      for (CellId t : touched) {
        if (ledger.is_live(k, t) && ledger.degree(k, t) == degree) heap.emplace(key(t), t);
      }
    }
    return made;
  };

  for (;;) {
    std::size_t made = run_phase(1);
    made += run_phase(2);
    if (!options.until_stable || made == 0) break;
  }
  return m;
}

// ---------------------------------------------------------------- trees

IdSet SpanningTree::edges() const {
  std::vector<CellId> ids;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] != kNoCell) ids.push_back(parent_edge[v]);
  }
  return make_id_set(std::move(ids));
}

namespace {

CellId other_endpoint(const CellComplex& complex, CellId edge, CellId v) {
  auto bd = complex.boundary(1, edge);
  return bd[0].id == v ? bd[1].id : bd[0].id;
}

}  // namespace

SpanningTree bfs_spanning_tree(const CellComplex& complex, CellId root, std::uint64_t seed) {
  const std::size_t nv = complex.vertices();
  if (root >= nv) throw Error(ErrorCode::kUnknownIndex, "root vertex " + std::to_string(root));
  SpanningTree t;
  t.root = root;
  t.parent.assign(nv, kNoCell);
  t.parent_edge.assign(nv, kNoCell);
  std::vector<char> seen(nv, 0);
  std::mt19937_64 rng(seed);
  std::vector<CellId> nbr_edges;

  std::deque<CellId> queue{root};
  seen[root] = 1;
  while (!queue.empty()) {
    const CellId v = queue.front();
    queue.pop_front();
    t.order.push_back(v);
    nbr_edges.clear();
    for (const auto& term : complex.coboundary(0, v)) nbr_edges.push_back(term.id);
    if (seed != 0) std::shuffle(nbr_edges.begin(), nbr_edges.end(), rng);
    for (CellId e : nbr_edges) {
      const CellId w = other_endpoint(complex, e, v);
      if (seen[w]) continue;
      seen[w] = 1;
      t.parent[w] = v;
      t.parent_edge[w] = e;
      queue.push_back(w);
    }
  }
  if (t.order.size() != nv) {
    throw Error(ErrorCode::kDisconnectedGraph, "vertex-edge graph reaches " + std::to_string(t.order.size()) +
                                                   " of " + std::to_string(nv) + " vertices");
  }
  return t;
}

DualGraph dual_graph(const CellComplex& complex) {
  DualGraph g;
  g.volumes = complex.volumes();
  const auto inf = static_cast<CellId>(g.volumes);
  g.adjacency.resize(g.volumes + 1);
  for (CellId f = 0; f < complex.faces(); ++f) {
    auto cof = complex.coboundary(2, f);
    if (cof.size() > 2) {
      throw Error(ErrorCode::kNonManifoldFace,
                  "face " + std::to_string(f) + " bounds " + std::to_string(cof.size()) + " volumes");
    }
    if (cof.empty()) continue;
    const CellId b = cof.size() == 2 ? cof[1].id : inf;
    const auto idx = static_cast<std::uint32_t>(g.edges.size());
    g.edges.push_back({cof[0].id, b, f});
    g.adjacency[cof[0].id].push_back(idx);
    g.adjacency[b].push_back(idx);
  }
  return g;
}

SpanningTree bfs_dual_tree(const CellComplex& complex, std::uint64_t seed) {
  const DualGraph g = dual_graph(complex);
  const std::size_t nodes = g.volumes + 1;
  const auto inf = static_cast<CellId>(g.volumes);
  SpanningTree t;
  t.dual = true;
  t.root = inf;
  t.parent.assign(nodes, kNoCell);
  t.parent_edge.assign(nodes, kNoCell);
  std::vector<char> seen(nodes, 0);
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> nbr;

  std::deque<CellId> queue{inf};
  seen[inf] = 1;
  while (!queue.empty()) {
    const CellId v = queue.front();
    queue.pop_front();
    t.order.push_back(v);
    nbr = g.adjacency[v];
    if (seed != 0) std::shuffle(nbr.begin(), nbr.end(), rng);
    for (auto idx : nbr) {
      const auto& e = g.edges[idx];
      const CellId w = e.a == v ? e.b : e.a;
      if (seen[w]) continue;
      seen[w] = 1;
      t.parent[w] = v;
      t.parent_edge[w] = e.face;
      queue.push_back(w);
    }
  }
  if (t.order.size() != nodes) {
    throw Error(ErrorCode::kDisconnectedGraph, "dual graph reaches " + std::to_string(t.order.size()) + " of " +
                                                   std::to_string(nodes) + " nodes");
  }
  return t;
}

SpanningTree tree_from_edges(const CellComplex& complex, const IdSet& tree_edges) {
  const std::size_t nv = complex.vertices();
  if (tree_edges.size() + 1 != nv) {
    throw Error(ErrorCode::kNotASpanningTree,
                std::to_string(tree_edges.size()) + " edges for " + std::to_string(nv) + " vertices");
  }
  std::vector<std::vector<CellId>> adj(nv);
  for (CellId e : tree_edges) {
    if (e >= complex.edges()) throw Error(ErrorCode::kUnknownIndex, "edge " + std::to_string(e));
    auto bd = complex.boundary(1, e);
    adj[bd[0].id].push_back(e);
    adj[bd[1].id].push_back(e);
  }
  SpanningTree t;
  t.root = 0;
  t.parent.assign(nv, kNoCell);
  t.parent_edge.assign(nv, kNoCell);
  if (nv == 0) return t;
  std::vector<char> seen(nv, 0);
  std::deque<CellId> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const CellId v = queue.front();
    queue.pop_front();
    t.order.push_back(v);
    for (CellId e : adj[v]) {
      const CellId w = other_endpoint(complex, e, v);
      if (seen[w]) continue;
      seen[w] = 1;
      t.parent[w] = v;
      t.parent_edge[w] = e;
      queue.push_back(w);
    }
  }
  if (t.order.size() != nv) {
    throw Error(ErrorCode::kNotASpanningTree, "edge set is not connected");
  }
  return t;
}

Matching spanning_tree_matching_0(const CellComplex& complex, CellId root, std::uint64_t seed) {
  const SpanningTree t = bfs_spanning_tree(complex, root, seed);
  Matching m;
  m.k = 0;
  // Reverse BFS order peels leaves first.
  for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
    if (*it == t.root) continue;
    m.pairs.push_back({*it, t.parent_edge[*it]});
  }
  classify_kinds(m, complex);
  return m;
}

Matching spanning_tree_matching_2(const CellComplex& complex, std::uint64_t seed) {
  const SpanningTree t = bfs_dual_tree(complex, seed);
  Matching m;
  m.k = 2;
  // Each volume takes the face towards its parent. Root-first order: a
  // face is shared only with its parent, which comes earlier.
  for (CellId c : t.order) {
    if (c == t.root) continue;
    m.pairs.push_back({t.parent_edge[c], c});
  }
  classify_kinds(m, complex);
  return m;
}

// ---------------------------------------------------------------- checks

namespace {

using FacetVisitor = std::function<void(CellId tau, const std::function<void(CellId, const Scalar&)>&)>;

FacetVisitor ledger_facets(const BasisLedger& ledger, int k) {
  return [&ledger, k](CellId tau, const std::function<void(CellId, const Scalar&)>& fn) {
    for (const auto& e : ledger.boundary(k + 1, tau).entries()) fn(e.id, e.value);
  };
}

FacetVisitor complex_facets(const CellComplex& complex, int k) {
  return [&complex, k](CellId tau, const std::function<void(CellId, const Scalar&)>& fn) {
    for (const auto& t : complex.boundary(k + 1, tau)) fn(t.id, Scalar(t.sign));
  };
}

// Position of each sigma in the pair list; nullopt when a cell is matched
// twice.
std::optional<std::vector<std::uint32_t>> sigma_positions(const Matching& m, std::size_t count_k,
                                                          std::size_t count_k1) {
  std::vector<std::uint32_t> pos(count_k, kNoCell);
  std::vector<char> tau_seen(count_k1, 0);
  for (std::uint32_t i = 0; i < m.pairs.size(); ++i) {
    const auto& p = m.pairs[i];
    if (p.sigma >= count_k || p.tau >= count_k1) return std::nullopt;
    if (pos[p.sigma] != kNoCell || tau_seen[p.tau]) return std::nullopt;
    pos[p.sigma] = i;
    tau_seen[p.tau] = 1;
  }
  return pos;
}

bool acyclic_impl(const Matching& m, std::size_t count_k, std::size_t count_k1, const FacetVisitor& facets) {
  auto pos = sigma_positions(m, count_k, count_k1);
  if (!pos) return false;
  const std::size_t np = m.pairs.size();
  std::vector<std::vector<std::uint32_t>> out(np);
  std::vector<std::uint32_t> indeg(np, 0);
  bool incident = true;
  for (std::uint32_t j = 0; j < np; ++j) {
    bool has_own = false;
    facets(m.pairs[j].tau, [&](CellId s, const Scalar&) {
      const auto i = (*pos)[s];
      if (i == kNoCell) return;
      if (i == j) {
        has_own = true;
        return;
      }
      out[i].push_back(j);
      ++indeg[j];
    });
    incident = incident && has_own;
  }
  if (!incident) return false;
  std::vector<std::uint32_t> ready;
  for (std::uint32_t i = 0; i < np; ++i) {
    if (indeg[i] == 0) ready.push_back(i);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto i = ready.back();
    ready.pop_back();
    ++visited;
    for (auto j : out[i]) {
      if (--indeg[j] == 0) ready.push_back(j);
    }
  }
  return visited == np;
}

TriangularCheck triangular_impl(const Matching& m, std::size_t count_k, std::size_t count_k1,
                                const FacetVisitor& facets) {
  TriangularCheck check;
  auto pos = sigma_positions(m, count_k, count_k1);
  if (!pos) {
    check.zero_diagonal = m.pairs.size();
    return check;
  }
  for (std::uint32_t i = 0; i < m.pairs.size(); ++i) {
    bool diag = false;
    facets(m.pairs[i].tau, [&](CellId s, const Scalar& v) {
      const auto j = (*pos)[s];
      if (j == kNoCell || v.is_zero()) return;
      if (j == i) diag = true;
      if (j < i) ++check.below_diagonal;
    });
    if (!diag) ++check.zero_diagonal;
  }
  return check;
}

}  // namespace

bool verify_acyclic(const Matching& m, const BasisLedger& ledger) {
  return acyclic_impl(m, ledger.count(m.k), ledger.count(m.k + 1), ledger_facets(ledger, m.k));
}

bool verify_acyclic(const Matching& m, const CellComplex& complex) {
  return acyclic_impl(m, complex.count(m.k), complex.count(m.k + 1), complex_facets(complex, m.k));
}

TriangularCheck check_triangular(const Matching& m, const BasisLedger& ledger) {
  return triangular_impl(m, ledger.count(m.k), ledger.count(m.k + 1), ledger_facets(ledger, m.k));
}

TriangularCheck check_triangular(const Matching& m, const CellComplex& complex) {
  return triangular_impl(m, complex.count(m.k), complex.count(m.k + 1), complex_facets(complex, m.k));
}

std::size_t incidence_rank(const CellComplex& complex, int k) {
  if (k < 0 || k > 2) throw Error(ErrorCode::kDimensionMismatch, "rank of D_" + std::to_string(k));
  if (complex.euler_characteristic() == 1 && complex.vertices() > 0) {
    switch (k) {
      case 0:
        return complex.vertices() - 1;
      case 1:
        return complex.faces() - complex.volumes();
      default:
        return complex.volumes();
    }
  }
  return exact_rank(incidence_matrix(complex, k));
}

bool is_complete(const Matching& m, const CellComplex& complex) {
  return m.size() == incidence_rank(complex, m.k);
}

void classify_kinds(Matching& m, const CellComplex& complex) {
  std::vector<char> consumed(complex.count(m.k + 1), 0);
  for (auto& p : m.pairs) {
    std::size_t degree = 0;
    for (const auto& t : complex.coboundary(m.k, p.sigma)) degree += consumed[t.id] ? 0 : 1;
    p.kind = pair_kind_from_degree(degree);
    consumed[p.tau] = 1;
  }
}

// ---------------------------------------------------------------- STT

SttResult stt_run(const CellComplex& complex, const SpanningTree& tree, const Cochain& field) {
  const std::size_t ne = complex.edges();
  const std::size_t nf = complex.faces();
  if (tree.dual || tree.nodes() != complex.vertices()) {
    throw Error(ErrorCode::kNotASpanningTree, "tree does not span the mesh vertices");
  }
  if (field.dim() != 2 || field.size() != nf) {
    throw Error(ErrorCode::kDimensionMismatch, "field must be a dense 2-cochain");
  }

  std::vector<Scalar> h(ne);
  std::vector<char> known(ne, 0);
  for (CellId e : tree.edges()) known[e] = 1;

  std::vector<std::uint32_t> unknown(nf, 0);
  std::set<CellId> ready;
  for (CellId f = 0; f < nf; ++f) {
    for (const auto& t : complex.boundary(2, f)) unknown[f] += known[t.id] ? 0 : 1;
    if (unknown[f] <= 1) ready.insert(f);
  }

  std::vector<char> done(nf, 0);
  std::size_t remaining = nf;
  std::vector<MatchedPair> used;
  CellId cursor = 0;
  std::size_t sweeps = 1;
  while (remaining > 0) {
    if (ready.empty()) {
      SttStalled stalled;
      stalled.sweeps = sweeps;
      for (CellId f = 0; f < nf; ++f) {
        if (!done[f]) stalled.unresolved_faces.push_back(f);
      }
      return stalled;
    }
    auto it = ready.lower_bound(cursor);
    if (it == ready.end()) {
      ++sweeps;
      cursor = 0;
      continue;
    }
    const CellId f = *it;
    ready.erase(it);
    cursor = f + 1;
    done[f] = 1;
    --remaining;

    Scalar acc = field.at(f);
    CellId target = kNoCell;
    int target_sign = 0;
    for (const auto& t : complex.boundary(2, f)) {
      if (known[t.id]) {
        acc -= Scalar(t.sign) * h[t.id];
      } else {
        target = t.id;
        target_sign = t.sign;
      }
    }
    if (target == kNoCell) {
      if (!acc.is_zero()) {
        throw Error(ErrorCode::kInconsistentInput,
                    "face " + std::to_string(f) + " has all edges known but its equation fails by " + acc.to_string());
      }
      continue;
    }
    h[target] = acc / Scalar(target_sign);
    known[target] = 1;
    used.push_back({target, f});
    for (const auto& t : complex.coboundary(1, target)) {
      if (done[t.id]) continue;
      if (--unknown[t.id] <= 1) ready.insert(t.id);
    }
  }

  SttTerminated result{Cochain(1, iota_ids(ne), std::move(h)), Matching{1, {}}};
  result.used.pairs.assign(used.rbegin(), used.rend());
  classify_kinds(result.used, complex);
  return result;
}

SpanningTree tree_from_matching(const Matching& m1, const CellComplex& complex) {
  if (m1.k != 1) throw Error(ErrorCode::kDimensionMismatch, "tree_from_matching needs a matching of 1-chains");
  return tree_from_edges(complex, m1.critical_lower(complex.edges()));
}

}  // namespace curlinv
