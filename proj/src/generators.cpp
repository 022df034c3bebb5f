#include "curlinv/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

#include "curlinv/errors.hpp"

namespace curlinv {

namespace {

constexpr std::array<std::array<int, 3>, 6> kAxisOrders{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

constexpr CellId kUnused = 0xFFFFFFFFu;

std::string cell_string(const LatticeCell& c) {
  return "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + ")";
}

int chebyshev(const LatticeCell& a, const LatticeCell& b) {
  return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

int manhattan(const LatticeCell& a, const LatticeCell& b) {
  return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) + std::abs(a[2] - b[2]);
}

std::vector<Tet> grid_tets(int n, const std::set<LatticeCell>& skip) {
  std::vector<Tet> tets;
  tets.reserve(6 * static_cast<std::size_t>(n) * n * n);
  for (int z = 0; z < n; ++z) {
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        if (skip.count({x, y, z})) continue;
        for (const auto& order : kAxisOrders) {
          std::array<int, 3> p{x, y, z};
          Tet t{};
          t[0] = grid_vertex(n, p[0], p[1], p[2]);
          for (int s = 0; s < 3; ++s) {
            ++p[order[s]];
            t[s + 1] = grid_vertex(n, p[0], p[1], p[2]);
          }
          tets.push_back(t);
        }
      }
    }
  }
  return tets;
}

std::vector<Point3> grid_points(int n) {
  std::vector<Point3> pts;
  pts.reserve(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1));
  for (int z = 0; z <= n; ++z) {
    for (int y = 0; y <= n; ++y) {
      for (int x = 0; x <= n; ++x) pts.push_back({double(x), double(y), double(z)});
    }
  }
  return pts;
}

}  // namespace

CellComplex cube_grid(int n) {
  if (n < 1) throw Error(ErrorCode::kValidationError, "grid size must be >= 1");
  const auto tets = grid_tets(n, {});
  return build_from_tetrahedra(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1), tets, grid_points(n));
}

void validate_path(int n, const KnotPath& path) {
  const auto& c = path.cells;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kInvalidPath, "path '" + path.name + "': " + why);
  };
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& p = c[i];
    if (p[0] < 1 || p[0] > n - 2 || p[1] < 1 || p[1] > n - 2 || p[2] < 1 || p[2] > n - 1) {
      fail("cell " + cell_string(p) + " is not interior for n=" + std::to_string(n));
    }
    if ((i == 0) != (p[2] == n - 1)) {
      fail(i == 0 ? "first cell must touch the top face" : "cell " + cell_string(p) + " reaches the top face");
    }
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i + 1 < c.size() && manhattan(c[i], c[i + 1]) != 1) {
      fail("cells " + cell_string(c[i]) + " and " + cell_string(c[i + 1]) + " are not face-adjacent");
    }
    for (std::size_t j = i + 2; j < c.size(); ++j) {
      const int d = chebyshev(c[i], c[j]);
      if (d == 0) fail("cell " + cell_string(c[i]) + " repeats");
      if (j == i + 2 ? manhattan(c[i], c[j]) < 2 : d < 2) {
        fail("cells " + cell_string(c[i]) + " and " + cell_string(c[j]) + " touch");
      }
    }
  }
}

void validate_paths(int n, std::span<const KnotPath> paths) {
  for (const auto& p : paths) validate_path(n, p);
  for (std::size_t a = 0; a < paths.size(); ++a) {
    for (std::size_t b = a + 1; b < paths.size(); ++b) {
      for (const auto& x : paths[a].cells) {
        for (const auto& y : paths[b].cells) {
          if (chebyshev(x, y) < 2) {
            throw Error(ErrorCode::kInvalidPath, "paths '" + paths[a].name + "' and '" + paths[b].name +
                                                     "' touch at " + cell_string(x) + " / " + cell_string(y));
          }
        }
      }
    }
  }
}

// Trefoil from a 5x5 grid diagram (arc index 5): the horizontal arcs run in
// layer z=5, the vertical arcs in z=7 and cross over them. The loop is cut
// open on the front row y=1 and both ends run straight out, up to the top
// face and down to z=1. Every coarse step is two unit cells. Knot
// determinant of the closed curve: 3.
KnotPath trefoil_path() {
  static const std::vector<LatticeCell> cells{
      {5, 1, 11}, {5, 1, 10}, {5, 1, 9}, {5, 1, 8}, {5, 1, 7}, {5, 1, 6}, {5, 1, 5}, {6, 1, 5}, {7, 1, 5},
      {7, 1, 6},  {7, 1, 7},  {7, 2, 7}, {7, 3, 7}, {7, 4, 7}, {7, 5, 7}, {7, 6, 7}, {7, 7, 7}, {7, 7, 6},
      {7, 7, 5},  {6, 7, 5},  {5, 7, 5}, {4, 7, 5}, {3, 7, 5}, {3, 7, 6}, {3, 7, 7}, {3, 6, 7}, {3, 5, 7},
      {3, 4, 7},  {3, 3, 7},  {3, 3, 6}, {3, 3, 5}, {4, 3, 5}, {5, 3, 5}, {6, 3, 5}, {7, 3, 5}, {8, 3, 5},
      {9, 3, 5},  {9, 3, 6},  {9, 3, 7}, {9, 4, 7}, {9, 5, 7}, {9, 6, 7}, {9, 7, 7}, {9, 8, 7}, {9, 9, 7},
      {9, 9, 6},  {9, 9, 5},  {8, 9, 5}, {7, 9, 5}, {6, 9, 5}, {5, 9, 5}, {5, 9, 6}, {5, 9, 7}, {5, 8, 7},
      {5, 7, 7},  {5, 6, 7},  {5, 5, 7}, {5, 5, 6}, {5, 5, 5}, {4, 5, 5}, {3, 5, 5}, {2, 5, 5}, {1, 5, 5},
      {1, 5, 6},  {1, 5, 7},  {1, 4, 7}, {1, 3, 7}, {1, 2, 7}, {1, 1, 7}, {1, 1, 6}, {1, 1, 5}, {2, 1, 5},
      {3, 1, 5},  {3, 1, 4},  {3, 1, 3}, {3, 1, 2}, {3, 1, 1},
  };
  return KnotPath{"trefoil-1", cells};
}

KnotPath straight_path(int n) {
  KnotPath p{"straight", {}};
  for (int z = n - 1; z >= 1; --z) p.cells.push_back({n / 2, n / 2, z});
  return p;
}

std::vector<KnotPath> named_paths(const std::string& name, int n) {
  if (name == "none") return {};
  if (name == "straight") return {straight_path(n)};
  if (name.rfind("trefoil-", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(name.substr(8));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidPath, "unknown knot '" + name + "'");
    }
    // Copies sit on a 10-cell pitch in x and y; the base path spans 9 cells
    // and copies must keep one solid cell between them.
    const int per_row = (n - 1) / 10;
    if (k < 1 || k > per_row * per_row) {
      throw Error(ErrorCode::kInvalidPath, std::to_string(k) + " trefoils do not fit in n=" + std::to_string(n));
    }
    const KnotPath base = trefoil_path();
    std::vector<KnotPath> out;
    for (int j = 0; j < k; ++j) {
      KnotPath p{"trefoil#" + std::to_string(j), base.cells};
      const int dx = 10 * (j % per_row);
      const int dy = 10 * (j / per_row);
      for (auto& c : p.cells) {
        c[0] += dx;
        c[1] += dy;
        c[2] += n - 12;  // entry stays in the top layer
      }
      out.push_back(std::move(p));
    }
    return out;
  }
  throw Error(ErrorCode::kInvalidPath, "unknown knot '" + name + "'");
}

CellComplex furch_ball(int n, std::span<const KnotPath> paths) {
  if (n < 1) throw Error(ErrorCode::kValidationError, "grid size must be >= 1");
  validate_paths(n, paths);
  std::set<LatticeCell> skip;
  for (const auto& p : paths) skip.insert(p.cells.begin(), p.cells.end());
  auto tets = grid_tets(n, skip);
  auto points = grid_points(n);

  // Drop vertices no tet uses (cannot happen for valid paths; kept so the
  // vertex count always matches the tets).
  std::vector<CellId> remap(points.size(), kUnused);
  for (const auto& t : tets) {
    for (CellId v : t) remap[v] = 0;
  }
  std::vector<Point3> kept;
  for (std::size_t v = 0; v < points.size(); ++v) {
    if (remap[v] == kUnused) continue;
    remap[v] = static_cast<CellId>(kept.size());
    kept.push_back(points[v]);
  }
  for (auto& t : tets) {
    for (auto& v : t) v = remap[v];
  }
  const std::size_t nv = kept.size();
  CellComplex k = build_from_tetrahedra(nv, tets, std::move(kept));
  const auto report = validate(k);
  if (!report.admissible()) {
    throw Error(ErrorCode::kTopologyBroken, "dug ball fails validation (euler " + std::to_string(report.euler) + ")");
  }
  return k;
}

CellComplex furch_ball(int n, const KnotPath& path) { return furch_ball(n, std::span<const KnotPath>(&path, 1)); }

Cochain random_integer_cochain(int dim, std::size_t count, std::uint64_t seed, std::int64_t magnitude) {
  if (magnitude < 0) throw Error(ErrorCode::kValidationError, "magnitude must be >= 0");
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(2 * magnitude + 1);
  std::vector<Scalar> vals(count);
  for (auto& v : vals) v = Scalar(static_cast<std::int64_t>(rng() % span) - magnitude);
  return Cochain(dim, iota_ids(count), std::move(vals));
}

Cochain random_solenoidal_field(const CellComplex& complex, std::uint64_t seed, std::int64_t magnitude) {
  const Cochain h0 = random_integer_cochain(1, complex.edges(), seed, magnitude);
  return apply(incidence_matrix(complex, 1), h0);
}

}  // namespace curlinv
