#pragma once

#include <vector>

#include "curlinv/complex.hpp"
#include "curlinv/sparse.hpp"

namespace fixtures {

using namespace curlinv;

inline CellComplex single_tet() {
  const std::vector<Tet> t{{0, 1, 2, 3}};
  return build_from_tetrahedra(4, t);
}

inline CellComplex two_tets() {
  const std::vector<Tet> t{{0, 1, 2, 3}, {1, 2, 3, 4}};
  return build_from_tetrahedra(5, t);
}

// Two triangles sharing the edge 1-2: edges (0,1) (0,2) (1,2) (1,3) (2,3),
// so e_2 = (1,2) is the shared one; f_0 = (0,1,2), f_1 = (1,2,3).
inline CellComplex double_triangle() {
  const std::vector<Triangle> t{{0, 1, 2}, {1, 2, 3}};
  return build_from_triangles(4, t);
}

// Path graph v0 - v1 - v2.
inline CellComplex path_graph() {
  std::array<std::vector<std::vector<BoundaryTerm>>, 3> b;
  b[0] = {{{0, -1}, {1, 1}}, {{1, -1}, {2, 1}}};
  return CellComplex::from_boundaries(3, b);
}

inline Cochain dense(int dim, std::vector<std::int64_t> v) {
  std::vector<Scalar> s(v.begin(), v.end());
  IdSet ids = iota_ids(s.size());
  return Cochain(dim, std::move(ids), std::move(s));
}

}  // namespace fixtures
