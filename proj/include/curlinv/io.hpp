#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "curlinv/complex.hpp"
#include "curlinv/generators.hpp"
#include "curlinv/matching.hpp"
#include "curlinv/solver.hpp"
#include "curlinv/sparse.hpp"

namespace curlinv {

// Mesh text: `vertices N tets M`, N lines `x y z` (or `- - -`), M lines of
// four 0-based vertex ids. `#` starts a comment.
CellComplex read_mesh(std::istream& in);
CellComplex read_mesh(const std::string& path);
void write_mesh(const CellComplex& complex, std::ostream& out);
void write_mesh(const CellComplex& complex, const std::string& path);

// Cochain text: `cochain k N`, then N lines `cell_id p/q`. Reading checks
// k and N against the complex and requires every cell exactly once.
Cochain read_cochain(std::istream& in, const CellComplex& complex, int k);
Cochain read_cochain(const std::string& path, const CellComplex& complex, int k);
void write_cochain(const Cochain& v, std::ostream& out);
void write_cochain(const Cochain& v, const std::string& path);

// Matching dump: one `pair k sigma tau kind order` line per pair.
void write_matching(const Matching& m, std::ostream& out);
Matching read_matching(std::istream& in);

// Lattice path: one `x y z` line per cell.
KnotPath read_knot_path(const std::string& path);

// Edge list of a spanning tree: one `a b` vertex pair per line.
IdSet read_tree_edges(const std::string& path, const CellComplex& complex);

using Json = nlohmann::ordered_json;

Json mesh_json(const CellComplex& complex);
Json validation_json(const ValidationReport& report);
Json trace_json(const SolveTrace& trace);

}  // namespace curlinv
