#pragma once

// Independent reference implementations for the tests. Nothing here calls
// into the library's algebra: dense mpq matrices, plain Gaussian
// elimination, boundary matrices rebuilt from vertex tuples.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "curlinv/complex.hpp"
#include "curlinv/sparse.hpp"

namespace oracle {

using Dense = std::vector<std::vector<mpq_class>>;
using Vec = std::vector<mpq_class>;

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, Vec(c, mpq_class(0))); }

// Row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> echelon(Dense& a, Vec* rhs = nullptr) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    if (rhs) std::swap((*rhs)[p], (*rhs)[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      if (rhs) (*rhs)[i] -= f * (*rhs)[r];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Dense a) { return echelon(a).size(); }

// Some x with a x = b, free variables zero; nullopt when inconsistent.
inline std::optional<Vec> solve(Dense a, Vec b) {
  const auto pivots = echelon(a, &b);
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t i = pivots.size(); i < a.size(); ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  Vec x(cols, mpq_class(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r] / a[r][pivots[r]];
  return x;
}

inline mpq_class det(Dense a) {
  const std::size_t n = a.size();
  mpq_class d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const mpq_class f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return d;
}

inline Vec mul(const Dense& a, const Vec& x) {
  Vec y(a.size(), mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  }
  return y;
}

inline Dense matmul(const Dense& a, const Dense& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = inner ? b[0].size() : 0;
  Dense c = zeros(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

inline Dense to_dense(const curlinv::SignedSparseMatrix& m) {
  Dense d = zeros(m.rows(), m.cols());
  std::map<curlinv::CellId, std::size_t> rpos, cpos;
  for (std::size_t i = 0; i < m.rows(); ++i) rpos[m.row_ids()[i]] = i;
  for (std::size_t j = 0; j < m.cols(); ++j) cpos[m.col_ids()[j]] = j;
  for (const auto& t : m.triplets()) d[rpos[t.row]][cpos[t.col]] = t.value.to_mpq();
  return d;
}

inline Vec to_vec(const curlinv::Cochain& c) {
  Vec v;
  for (const auto& s : c.values()) v.push_back(s.to_mpq());
  return v;
}

// Boundary matrices of a simplicial complex rebuilt from its top simplices:
// faces of a sorted tuple with sign (-1)^j for the omitted position j.
// Returned keyed by vertex tuples so ids can be matched independently.
struct TupleComplex {
  std::array<std::map<std::vector<curlinv::CellId>, std::size_t>, 4> index;
  std::array<std::vector<std::vector<curlinv::CellId>>, 4> cells;

  explicit TupleComplex(const std::vector<std::vector<curlinv::CellId>>& top) {
    for (auto t : top) {
      std::sort(t.begin(), t.end());
      add_closure(t);
    }
    for (int k = 0; k < 4; ++k) {
      for (const auto& [tuple, unused] : index[k]) cells[k].push_back(tuple);
      std::size_t i = 0;
      for (auto& [tuple, id] : index[k]) id = i++;
    }
  }

  void add_closure(const std::vector<curlinv::CellId>& t) {
    const int k = static_cast<int>(t.size()) - 1;
    if (index[k].count(t)) return;
    index[k][t] = 0;
    if (k == 0) return;
    for (std::size_t j = 0; j < t.size(); ++j) {
      auto f = t;
      f.erase(f.begin() + static_cast<long>(j));
      add_closure(f);
    }
  }

  // Rows (k+1)-cells, columns k-cells, both in tuple order.
  Dense coboundary(int k) const {
    Dense d = zeros(cells[k + 1].size(), cells[k].size());
    for (std::size_t r = 0; r < cells[k + 1].size(); ++r) {
      const auto& t = cells[k + 1][r];
      for (std::size_t j = 0; j < t.size(); ++j) {
        auto f = t;
        f.erase(f.begin() + static_cast<long>(j));
        d[r][index[k].at(f)] = (j % 2 == 0) ? 1 : -1;
      }
    }
    return d;
  }
};

// Determinant of the knot in a closed polygon, from the Fox colouring
// matrix of a generic projection. 1 for the unknot, 3 for a trefoil.
inline long knot_determinant(const std::vector<std::array<double, 3>>& loop) {
  const double ax = 0.31, ay = 0.17, az = 0.23;
  auto rotate = [&](std::array<double, 3> p) {
    double y = p[1] * std::cos(ax) - p[2] * std::sin(ax);
    double z = p[1] * std::sin(ax) + p[2] * std::cos(ax);
    p[1] = y;
    p[2] = z;
    double x = p[0] * std::cos(ay) + p[2] * std::sin(ay);
    z = -p[0] * std::sin(ay) + p[2] * std::cos(ay);
    p[0] = x;
    p[2] = z;
    x = p[0] * std::cos(az) - p[1] * std::sin(az);
    y = p[0] * std::sin(az) + p[1] * std::cos(az);
    return std::array<double, 3>{x, y, z};
  };
  std::vector<std::array<double, 3>> pts;
  for (const auto& p : loop) pts.push_back(rotate(p));
  const std::size_t m = pts.size();

  struct Crossing {
    double over;
    double under;
  };
  std::vector<Crossing> xs;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;
      const auto& a = pts[i];
      const auto& b = pts[(i + 1) % m];
      const auto& c = pts[j];
      const auto& d = pts[(j + 1) % m];
      const double rx = b[0] - a[0], ry = b[1] - a[1];
      const double sx = d[0] - c[0], sy = d[1] - c[1];
      const double den = rx * sy - ry * sx;
      if (std::abs(den) < 1e-12) continue;
      const double qx = c[0] - a[0], qy = c[1] - a[1];
      const double t = (qx * sy - qy * sx) / den;
      const double u = (qx * ry - qy * rx) / den;
      if (t <= 0 || t >= 1 || u <= 0 || u >= 1) continue;
      const double zi = a[2] + t * (b[2] - a[2]);
      const double zj = c[2] + u * (d[2] - c[2]);
      if (zi > zj) {
        xs.push_back({double(i) + t, double(j) + u});
      } else {
        xs.push_back({double(j) + u, double(i) + t});
      }
    }
  }
  const std::size_t nc = xs.size();
  if (nc < 2) return 1;
  std::vector<double> unders;
  for (const auto& x : xs) unders.push_back(x.under);
  std::sort(unders.begin(), unders.end());
  auto arc_of = [&](double pos) {
    const auto k = static_cast<std::size_t>(std::lower_bound(unders.begin(), unders.end(), pos) - unders.begin());
    return k % nc;
  };
  Dense colour = zeros(nc, nc);
  for (std::size_t r = 0; r < nc; ++r) {
    const auto k = static_cast<std::size_t>(
        std::lower_bound(unders.begin(), unders.end(), xs[r].under) - unders.begin());
    colour[r][arc_of(xs[r].over)] += 2;
    colour[r][k] -= 1;
    colour[r][(k + 1) % nc] -= 1;
  }
  Dense minor = zeros(nc - 1, nc - 1);
  for (std::size_t i = 1; i < nc; ++i) {
    for (std::size_t j = 1; j < nc; ++j) minor[i - 1][j - 1] = colour[i][j];
  }
  const mpq_class d = abs(det(minor));
  return d.get_num().get_si();
}

}  // namespace oracle
