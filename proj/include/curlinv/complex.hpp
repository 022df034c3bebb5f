#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "curlinv/sparse.hpp"

namespace curlinv {

using Point3 = std::array<double, 3>;
using Tet = std::array<CellId, 4>;
using Triangle = std::array<CellId, 3>;

struct BoundaryTerm {
  CellId id;
  int sign;  // +1 or -1

  friend bool operator==(const BoundaryTerm&, const BoundaryTerm&) = default;
};

// Immutable oriented cell complex of dimension <= 3.
//
// Each k-cell (k >= 1) stores its signed boundary over (k-1)-cells; the
// coboundary incidences are derived once at construction. Complexes built
// from simplices also keep the sorted vertex tuple of every cell, and cell
// ids follow the lexicographic order of those tuples.
class CellComplex {
 public:
  static constexpr int kMaxDim = 3;

  CellComplex() = default;

  // Polyhedral entry point: boundaries[k-1][cell] lists the signed
  // (k-1)-facets of each k-cell, k = 1..3. Only reference validity is
  // checked here; use validate() for the topological checks.
  static CellComplex from_boundaries(std::size_t vertex_count,
                                     std::array<std::vector<std::vector<BoundaryTerm>>, 3> boundaries);

  std::size_t count(int k) const { return counts_[static_cast<std::size_t>(k)]; }
  std::size_t vertices() const { return count(0); }
  std::size_t edges() const { return count(1); }
  std::size_t faces() const { return count(2); }
  std::size_t volumes() const { return count(3); }
  int top_dimension() const;
  std::int64_t euler_characteristic() const;

  std::span<const BoundaryTerm> boundary(int k, CellId cell) const;
  std::span<const BoundaryTerm> coboundary(int k, CellId cell) const;

  bool is_simplicial() const { return simplicial_; }
  // Sorted vertex tuple of a simplicial cell (k+1 entries).
  std::span<const CellId> simplex(int k, CellId cell) const;
  // Id of the simplex with the given (sorted) vertex tuple.
  std::optional<CellId> find_simplex(std::span<const CellId> sorted_vertices) const;

  const std::optional<std::vector<Point3>>& coordinates() const { return coordinates_; }

  friend bool operator==(const CellComplex&, const CellComplex&) = default;

 private:
  friend CellComplex build_simplicial(std::size_t, int, std::vector<CellId>, std::optional<std::vector<Point3>>);

  struct Csr {
    std::vector<std::uint32_t> offsets{0};
    std::vector<BoundaryTerm> terms;

    std::span<const BoundaryTerm> at(CellId cell) const {
      return {terms.data() + offsets[cell], terms.data() + offsets[cell + 1]};
    }
    friend bool operator==(const Csr&, const Csr&) = default;
  };

  void derive_coboundaries();

  std::array<std::size_t, 4> counts_{};
  std::array<Csr, 4> boundary_;    // index k: boundary of k-cells (k >= 1)
  std::array<Csr, 4> coboundary_;  // index k: cofacets of k-cells (k <= 2)
  bool simplicial_ = false;
  std::array<std::vector<CellId>, 4> simplices_;  // flattened, stride k+1
  std::optional<std::vector<Point3>> coordinates_;
};

// Builds the complex of a tetrahedral mesh. Edges and faces are the sorted
// vertex sub-tuples, oriented by increasing vertex order; the facet that
// omits the vertex at position j of a sorted simplex has sign (-1)^j.
CellComplex build_from_tetrahedra(std::size_t vertex_count, std::span<const Tet> tets,
                                  std::optional<std::vector<Point3>> coordinates = std::nullopt);

// Same construction for a purely two-dimensional triangle complex.
CellComplex build_from_triangles(std::size_t vertex_count, std::span<const Triangle> triangles,
                                 std::optional<std::vector<Point3>> coordinates = std::nullopt);

// D_k: rows are (k+1)-cells, columns k-cells, entries <sigma, boundary tau>.
SignedSparseMatrix incidence_matrix(const CellComplex& complex, int k);

struct ValidationReport {
  bool boundary_squared_zero = true;
  bool manifold_with_boundary = true;
  bool connected = true;
  bool boundary_surface_connected = true;
  std::int64_t euler = 0;
  std::int64_t boundary_euler = 0;
  std::size_t boundary_faces = 0;
  // Euler characteristic differs from 1: the solver still runs but rank
  // expectations come from elimination rather than counting formulas.
  bool topology_warning = false;

  bool admissible() const {
    return boundary_squared_zero && manifold_with_boundary && connected &&
           boundary_surface_connected && !topology_warning;
  }
};

ValidationReport validate(const CellComplex& complex);

// Number of k+1 cells containing each k-cell.
std::vector<std::size_t> coboundary_degrees(const CellComplex& complex, int k);

}  // namespace curlinv
