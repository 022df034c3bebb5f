#include "curlinv/complex.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "curlinv/errors.hpp"

namespace curlinv {
namespace {

constexpr CellId kUnused = ~CellId{0};
using Tuple = std::array<CellId, 4>;

Tuple facet_of(const Tuple& t, int k, int omit) {
  Tuple out;
  out.fill(kUnused);
  int w = 0;
  for (int i = 0; i <= k; ++i) {
    if (i != omit) out[static_cast<std::size_t>(w++)] = t[static_cast<std::size_t>(i)];
  }
  return out;
}

std::string tuple_string(const Tuple& t, int k) {
  std::string s = "(";
  for (int i = 0; i <= k; ++i) {
    if (i) s += ",";
    s += std::to_string(t[static_cast<std::size_t>(i)]);
  }
  return s + ")";
}

// Union-find for connectivity checks.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

CellComplex build_simplicial(std::size_t vertex_count, int dim, std::vector<CellId> flat,
                             std::optional<std::vector<Point3>> coordinates) {
  const std::size_t stride = static_cast<std::size_t>(dim) + 1;
  if (coordinates && coordinates->size() != vertex_count) {
    throw Error(ErrorCode::kDimensionMismatch, "expected " + std::to_string(vertex_count) +
                                                   " coordinates, got " +
                                                   std::to_string(coordinates->size()));
  }
  std::vector<Tuple> top;
  top.reserve(flat.size() / stride);
  for (std::size_t s = 0; s < flat.size() / stride; ++s) {
    Tuple t;
    t.fill(kUnused);
    for (std::size_t i = 0; i < stride; ++i) {
      const CellId v = flat[s * stride + i];
      if (v >= vertex_count) {
        throw Error(ErrorCode::kDanglingVertexId,
                    "simplex " + std::to_string(s) + " references vertex " + std::to_string(v) +
                        " (vertex count " + std::to_string(vertex_count) + ")");
      }
      t[i] = v;
    }
    std::sort(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(stride));
    if (std::adjacent_find(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(stride)) !=
        t.begin() + static_cast<std::ptrdiff_t>(stride)) {
      throw Error(ErrorCode::kDegenerateTet, "simplex " + std::to_string(s) + " " + tuple_string(t, dim) +
                                                 " repeats a vertex");
    }
    top.push_back(t);
  }
  std::sort(top.begin(), top.end());
  if (auto dup = std::adjacent_find(top.begin(), top.end()); dup != top.end()) {
    throw Error(ErrorCode::kDuplicateTet, "simplex " + tuple_string(*dup, dim) + " appears twice");
  }

  CellComplex cx;
  cx.simplicial_ = true;
  cx.coordinates_ = std::move(coordinates);
  cx.counts_[0] = vertex_count;
  cx.simplices_[0].resize(vertex_count);
  std::iota(cx.simplices_[0].begin(), cx.simplices_[0].end(), CellId{0});

  std::vector<Tuple> current = std::move(top);
  for (int k = dim; k >= 1; --k) {
    std::vector<Tuple> facets;
    if (k - 1 >= 1) {
      facets.reserve(current.size() * static_cast<std::size_t>(k + 1));
      for (const Tuple& t : current) {
        for (int j = 0; j <= k; ++j) facets.push_back(facet_of(t, k, j));
      }
      std::sort(facets.begin(), facets.end());
      facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    }
    const auto ku = static_cast<std::size_t>(k);
    cx.counts_[ku] = current.size();
    auto& csr = cx.boundary_[ku];
    csr.terms.reserve(current.size() * (ku + 1));
    csr.offsets.reserve(current.size() + 1);
    auto& simp = cx.simplices_[ku];
    simp.reserve(current.size() * (ku + 1));
    for (const Tuple& t : current) {
      for (int j = 0; j <= k; ++j) {
        const Tuple f = facet_of(t, k, j);
        CellId fid;
        if (k == 1) {
          fid = f[0];
        } else {
          fid = static_cast<CellId>(std::lower_bound(facets.begin(), facets.end(), f) - facets.begin());
        }
        csr.terms.push_back({fid, (j % 2 == 0) ? 1 : -1});
      }
      // Keep facets in ascending id order for deterministic iteration.
      std::sort(csr.terms.end() - (k + 1), csr.terms.end(),
                [](const BoundaryTerm& a, const BoundaryTerm& b) { return a.id < b.id; });
      csr.offsets.push_back(static_cast<std::uint32_t>(csr.terms.size()));
      simp.insert(simp.end(), t.begin(), t.begin() + k + 1);
    }
    current = std::move(facets);
  }
  cx.derive_coboundaries();
  return cx;
}

CellComplex CellComplex::from_boundaries(std::size_t vertex_count,
                                         std::array<std::vector<std::vector<BoundaryTerm>>, 3> boundaries) {
  CellComplex cx;
  cx.counts_[0] = vertex_count;
  for (int k = 1; k <= kMaxDim; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const auto& cells = boundaries[ku - 1];
    cx.counts_[ku] = cells.size();
    auto& csr = cx.boundary_[ku];
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::vector<BoundaryTerm> terms = cells[c];
      std::sort(terms.begin(), terms.end(),
                [](const BoundaryTerm& a, const BoundaryTerm& b) { return a.id < b.id; });
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].id >= cx.counts_[ku - 1]) {
          throw Error(ErrorCode::kUnknownIndex, std::to_string(k) + "-cell " + std::to_string(c) +
                                                    " references missing " + std::to_string(k - 1) +
                                                    "-cell " + std::to_string(terms[i].id));
        }
        if (terms[i].sign != 1 && terms[i].sign != -1) {
          throw Error(ErrorCode::kValidationError, "boundary signs must be +1 or -1");
        }
        if (i > 0 && terms[i].id == terms[i - 1].id) {
          throw Error(ErrorCode::kValidationError, std::to_string(k) + "-cell " + std::to_string(c) +
                                                       " lists a facet twice");
        }
      }
      csr.terms.insert(csr.terms.end(), terms.begin(), terms.end());
      csr.offsets.push_back(static_cast<std::uint32_t>(csr.terms.size()));
    }
  }
  cx.derive_coboundaries();
  return cx;
}

void CellComplex::derive_coboundaries() {
  for (int k = 0; k < kMaxDim; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    auto& co = coboundary_[ku];
    co = Csr{};
    std::vector<std::uint32_t> deg(counts_[ku] + 1, 0);
    const auto& up = boundary_[ku + 1];
    for (const auto& t : up.terms) ++deg[t.id + 1];
    co.offsets.assign(counts_[ku] + 1, 0);
    for (std::size_t i = 0; i < counts_[ku]; ++i) co.offsets[i + 1] = co.offsets[i] + deg[i + 1];
    co.terms.resize(up.terms.size());
    std::vector<std::uint32_t> fill(co.offsets.begin(), co.offsets.end() - 1);
    for (CellId c = 0; c < counts_[ku + 1]; ++c) {
      for (const auto& t : up.at(c)) co.terms[fill[t.id]++] = {c, t.sign};
    }
  }
}

int CellComplex::top_dimension() const {
  for (int k = kMaxDim; k >= 0; --k) {
    if (count(k) > 0) return k;
  }
  return -1;
}

std::int64_t CellComplex::euler_characteristic() const {
  return static_cast<std::int64_t>(count(0)) - static_cast<std::int64_t>(count(1)) +
         static_cast<std::int64_t>(count(2)) - static_cast<std::int64_t>(count(3));
}

std::span<const BoundaryTerm> CellComplex::boundary(int k, CellId cell) const {
  if (k < 1 || k > kMaxDim || cell >= count(k)) {
    throw Error(ErrorCode::kUnknownIndex, std::to_string(k) + "-cell " + std::to_string(cell));
  }
  return boundary_[static_cast<std::size_t>(k)].at(cell);
}

std::span<const BoundaryTerm> CellComplex::coboundary(int k, CellId cell) const {
  if (k < 0 || k >= kMaxDim || cell >= count(k)) {
    throw Error(ErrorCode::kUnknownIndex, std::to_string(k) + "-cell " + std::to_string(cell));
  }
  return coboundary_[static_cast<std::size_t>(k)].at(cell);
}

std::span<const CellId> CellComplex::simplex(int k, CellId cell) const {
  if (!simplicial_) return {};
  const auto stride = static_cast<std::size_t>(k) + 1;
  const auto& s = simplices_[static_cast<std::size_t>(k)];
  return {s.data() + cell * stride, stride};
}

std::optional<CellId> CellComplex::find_simplex(std::span<const CellId> sorted_vertices) const {
  if (!simplicial_ || sorted_vertices.empty() || sorted_vertices.size() > 4) return std::nullopt;
  const int k = static_cast<int>(sorted_vertices.size()) - 1;
  std::size_t lo = 0;
  std::size_t hi = count(k);
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto s = simplex(k, static_cast<CellId>(mid));
    if (std::lexicographical_compare(s.begin(), s.end(), sorted_vertices.begin(), sorted_vertices.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < count(k)) {
    auto s = simplex(k, static_cast<CellId>(lo));
    if (std::equal(s.begin(), s.end(), sorted_vertices.begin(), sorted_vertices.end())) {
      return static_cast<CellId>(lo);
    }
  }
  return std::nullopt;
}

CellComplex build_from_tetrahedra(std::size_t vertex_count, std::span<const Tet> tets,
                                  std::optional<std::vector<Point3>> coordinates) {
  std::vector<CellId> flat;
  flat.reserve(tets.size() * 4);
  for (const Tet& t : tets) flat.insert(flat.end(), t.begin(), t.end());
  return build_simplicial(vertex_count, 3, std::move(flat), std::move(coordinates));
}

CellComplex build_from_triangles(std::size_t vertex_count, std::span<const Triangle> triangles,
                                 std::optional<std::vector<Point3>> coordinates) {
  std::vector<CellId> flat;
  flat.reserve(triangles.size() * 3);
  for (const Triangle& t : triangles) flat.insert(flat.end(), t.begin(), t.end());
  return build_simplicial(vertex_count, 2, std::move(flat), std::move(coordinates));
}

SignedSparseMatrix incidence_matrix(const CellComplex& complex, int k) {
  if (k < 0 || k > 2) throw Error(ErrorCode::kDimensionMismatch, "incidence matrix index must be 0, 1 or 2");
  std::vector<SignedSparseMatrix::Triplet> trips;
  const auto rows = complex.count(k + 1);
  for (CellId r = 0; r < rows; ++r) {
    for (const auto& t : complex.boundary(k + 1, r)) trips.push_back({r, t.id, Scalar(t.sign)});
  }
  return SignedSparseMatrix(k + 1, iota_ids(rows), k, iota_ids(complex.count(k)), std::move(trips));
}

std::vector<std::size_t> coboundary_degrees(const CellComplex& complex, int k) {
  std::vector<std::size_t> deg(complex.count(k), 0);
  if (k >= CellComplex::kMaxDim) return deg;
  for (CellId c = 0; c < complex.count(k); ++c) deg[c] = complex.coboundary(k, c).size();
  return deg;
}

ValidationReport validate(const CellComplex& complex) {
  ValidationReport report;

  // Boundary of boundary, one cell at a time.
  for (int k = 2; k <= CellComplex::kMaxDim && report.boundary_squared_zero; ++k) {
    for (CellId c = 0; c < complex.count(k); ++c) {
      std::vector<SparseEntry> acc;
      for (const auto& f : complex.boundary(k, c)) {
        for (const auto& g : complex.boundary(k - 1, f.id)) acc.push_back({g.id, Scalar(f.sign * g.sign)});
      }
      if (!SparseVec(std::move(acc)).empty()) {
        report.boundary_squared_zero = false;
        break;
      }
    }
  }

  std::size_t boundary_faces = 0;
  for (CellId f = 0; f < complex.faces(); ++f) {
    const auto cof = complex.volumes() ? complex.coboundary(2, f).size() : 0;
    if (cof > 2) report.manifold_with_boundary = false;
    if (cof == 1) ++boundary_faces;
  }
  report.boundary_faces = boundary_faces;

  DisjointSets graph(complex.vertices());
  std::size_t components = complex.vertices();
  for (CellId e = 0; e < complex.edges(); ++e) {
    auto b = complex.boundary(1, e);
    if (b.size() == 2 && graph.unite(b[0].id, b[1].id)) --components;
  }
  report.connected = components <= 1;
  report.euler = complex.euler_characteristic();
  report.topology_warning = report.euler != 1;

  // Boundary surface: faces with exactly one volume, glued along edges.
  if (complex.volumes() > 0) {
    std::vector<CellId> bfaces;
    for (CellId f = 0; f < complex.faces(); ++f) {
      if (complex.coboundary(2, f).size() == 1) bfaces.push_back(f);
    }
    std::vector<std::int32_t> edge_owner(complex.edges(), -1);
    std::vector<char> edge_seen(complex.edges(), 0);
    std::vector<char> vertex_seen(complex.vertices(), 0);
    DisjointSets surf(bfaces.size());
    std::size_t surf_components = bfaces.size();
    std::int64_t bv = 0;
    std::int64_t be = 0;
    for (std::size_t i = 0; i < bfaces.size(); ++i) {
      for (const auto& e : complex.boundary(2, bfaces[i])) {
        if (!edge_seen[e.id]) {
          edge_seen[e.id] = 1;
          ++be;
          for (const auto& v : complex.boundary(1, e.id)) {
            if (!vertex_seen[v.id]) {
              vertex_seen[v.id] = 1;
              ++bv;
            }
          }
        }
        if (edge_owner[e.id] < 0) {
          edge_owner[e.id] = static_cast<std::int32_t>(i);
        } else if (surf.unite(static_cast<std::size_t>(edge_owner[e.id]), i)) {
          --surf_components;
        }
      }
    }
    report.boundary_surface_connected = surf_components <= 1;
    report.boundary_euler = bv - be + static_cast<std::int64_t>(bfaces.size());
  }
  return report;
}

}  // namespace curlinv
