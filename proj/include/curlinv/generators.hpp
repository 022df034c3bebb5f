#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "curlinv/complex.hpp"
#include "curlinv/sparse.hpp"

namespace curlinv {

using LatticeCell = std::array<int, 3>;  // unit cube by its lowest corner

// Blind tunnel through unit cubes, dug from the top face (z = n-1) down.
struct KnotPath {
  std::string name;
  std::vector<LatticeCell> cells;
};

// (n+1)^3 vertices, six tets per cube (Kuhn split along the main diagonal).
CellComplex cube_grid(int n);

// Vertex id of lattice point (x, y, z) in cube_grid(n).
inline CellId grid_vertex(int n, int x, int y, int z) {
  return static_cast<CellId>(x + (n + 1) * (y + (n + 1) * z));
}

// Throws InvalidPath. Cells must stay in 1..n-2 for x, y and in 1..n-1
// for z; only the first cell may sit in the top layer. Cells two steps
// apart may share an edge (a turn); anything further must not touch.
void validate_path(int n, const KnotPath& path);
// Same, plus no cell of one path may touch a cell of another.
void validate_paths(int n, std::span<const KnotPath> paths);

// Shipped paths: "none", "straight", "trefoil-1", "trefoil-K" (K copies).
KnotPath trefoil_path();
KnotPath straight_path(int n);
std::vector<KnotPath> named_paths(const std::string& name, int n);

// cube_grid(n) minus the six tets of every path cell. Throws InvalidPath
// or TopologyBroken.
CellComplex furch_ball(int n, std::span<const KnotPath> paths);
CellComplex furch_ball(int n, const KnotPath& path);

// Integers drawn uniformly from [-magnitude, magnitude] (mt19937_64).
Cochain random_integer_cochain(int dim, std::size_t count, std::uint64_t seed, std::int64_t magnitude);

// i = C h0 for a random integer edge cochain h0, so D i = 0 exactly.
Cochain random_solenoidal_field(const CellComplex& complex, std::uint64_t seed, std::int64_t magnitude);

}  // namespace curlinv
