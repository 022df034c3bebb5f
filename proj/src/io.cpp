#include "curlinv/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "curlinv/errors.hpp"

namespace curlinv {

namespace {

// Splits input into whitespace tokens per non-empty line, comments removed.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // False at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::size_t line() const { return line_no_; }

  [[noreturn]] void fail(const std::string& why) const { throw ParseError(line_no_, why); }

  void require(std::vector<std::string>& tokens, const char* what) {
    if (!next(tokens)) throw ParseError(line_no_ + 1, std::string("unexpected end of input, expected ") + what);
  }

  std::uint64_t to_count(const std::string& tok) const {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      fail("expected a non-negative integer, got '" + tok + "'");
    }
    if (used != tok.size() || tok[0] == '-') fail("expected a non-negative integer, got '" + tok + "'");
    return v;
  }

  long long to_int(const std::string& tok) const {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      fail("expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) fail("expected an integer, got '" + tok + "'");
    return v;
  }

  double to_double(const std::string& tok) const {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      fail("expected a coordinate, got '" + tok + "'");
    }
    if (used != tok.size()) fail("expected a coordinate, got '" + tok + "'");
    return v;
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kParseError, "cannot write '" + path + "'");
  return f;
}

std::string fraction(const Scalar& s) {
  std::string out = s.to_string();
  if (out.find('/') == std::string::npos) out += "/1";
  return out;
}

}  // namespace

CellComplex read_mesh(std::istream& in) {
  LineReader r(in);
  std::vector<std::string> tok;
  r.require(tok, "header");
  if (tok.size() != 4 || tok[0] != "vertices" || tok[2] != "tets") r.fail("expected 'vertices N tets M'");
  const auto nv = r.to_count(tok[1]);
  const auto nt = r.to_count(tok[3]);

  std::vector<Point3> pts;
  bool has_coords = true;
  for (std::uint64_t v = 0; v < nv; ++v) {
    r.require(tok, "vertex line");
    if (tok.size() != 3) r.fail("vertex line needs 3 fields");
    if (tok[0] == "-" && tok[1] == "-" && tok[2] == "-") {
      has_coords = false;
      continue;
    }
    pts.push_back({r.to_double(tok[0]), r.to_double(tok[1]), r.to_double(tok[2])});
  }
  if (!has_coords && !pts.empty()) throw ParseError(r.line(), "mixed coordinate and '- - -' vertex lines");

  std::vector<Tet> tets;
  tets.reserve(nt);
  for (std::uint64_t t = 0; t < nt; ++t) {
    r.require(tok, "tet line");
    if (tok.size() != 4) r.fail("tet line needs 4 vertex ids");
    Tet tet{};
    for (int j = 0; j < 4; ++j) tet[j] = static_cast<CellId>(r.to_count(tok[j]));
    tets.push_back(tet);
  }
  if (r.next(tok)) r.fail("trailing content after " + std::to_string(nt) + " tets");
  std::optional<std::vector<Point3>> coords;
  if (has_coords) coords = std::move(pts);
  return build_from_tetrahedra(nv, tets, std::move(coords));
}

CellComplex read_mesh(const std::string& path) {
  auto f = open_in(path);
  return read_mesh(f);
}

void write_mesh(const CellComplex& complex, std::ostream& out) {
  if (!complex.is_simplicial() || complex.top_dimension() != 3) {
    throw Error(ErrorCode::kValidationError, "only tetrahedral complexes can be written");
  }
  out << "vertices " << complex.vertices() << " tets " << complex.volumes() << "\n";
  const auto& coords = complex.coordinates();
  for (std::size_t v = 0; v < complex.vertices(); ++v) {
    if (coords) {
      const auto& p = (*coords)[v];
      out << p[0] << " " << p[1] << " " << p[2] << "\n";
    } else {
      out << "- - -\n";
    }
  }
  for (CellId c = 0; c < complex.volumes(); ++c) {
    auto s = complex.simplex(3, c);
    out << s[0] << " " << s[1] << " " << s[2] << " " << s[3] << "\n";
  }
}

void write_mesh(const CellComplex& complex, const std::string& path) {
  auto f = open_out(path);
  write_mesh(complex, f);
}

Cochain read_cochain(std::istream& in, const CellComplex& complex, int k) {
  LineReader r(in);
  std::vector<std::string> tok;
  r.require(tok, "header");
  if (tok.size() != 3 || tok[0] != "cochain") r.fail("expected 'cochain k N'");
  const auto dim = r.to_int(tok[1]);
  const auto n = r.to_count(tok[2]);
  if (dim != k) throw Error(ErrorCode::kDimensionMismatch, "file holds a " + tok[1] + "-cochain, expected " + std::to_string(k));
  const std::size_t count = complex.count(k);
  if (n != count) {
    throw Error(ErrorCode::kDimensionMismatch,
                "file lists " + tok[2] + " values, the complex has " + std::to_string(count) + " " + std::to_string(k) + "-cells");
  }
  std::vector<Scalar> vals(count);
  std::vector<char> seen(count, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    r.require(tok, "cochain entry");
    if (tok.size() != 2) r.fail("cochain entry needs 'cell_id value'");
    const auto id = r.to_count(tok[0]);
    if (id >= count) throw Error(ErrorCode::kDimensionMismatch, "cell id " + tok[0] + " does not exist");
    if (seen[id]) r.fail("cell id " + tok[0] + " listed twice");
    seen[id] = 1;
    try {
      vals[id] = Scalar::parse(tok[1]);
    } catch (const Error& e) {
      r.fail(e.what());
    }
  }
  if (r.next(tok)) r.fail("trailing content after " + std::to_string(n) + " entries");
  return Cochain(k, iota_ids(count), std::move(vals));
}

Cochain read_cochain(const std::string& path, const CellComplex& complex, int k) {
  auto f = open_in(path);
  return read_cochain(f, complex, k);
}

void write_cochain(const Cochain& v, std::ostream& out) {
  out << "cochain " << v.dim() << " " << v.size() << "\n";
  const auto vals = v.values();
  for (std::size_t i = 0; i < v.size(); ++i) out << v.ids()[i] << " " << fraction(vals[i]) << "\n";
}

void write_cochain(const Cochain& v, const std::string& path) {
  auto f = open_out(path);
  write_cochain(v, f);
}

void write_matching(const Matching& m, std::ostream& out) {
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    const auto& p = m.pairs[i];
    out << "pair " << m.k << " " << p.sigma << " " << p.tau << " " << pair_kind_name(p.kind) << " " << i << "\n";
  }
}

Matching read_matching(std::istream& in) {
  LineReader r(in);
  std::vector<std::string> tok;
  Matching m;
  bool first = true;
  while (r.next(tok)) {
    if (tok.size() != 6 || tok[0] != "pair") r.fail("expected 'pair k sigma tau kind order'");
    const int k = static_cast<int>(r.to_int(tok[1]));
    if (first) {
      m.k = k;
      first = false;
    } else if (k != m.k) {
      r.fail("mixed dimensions in one matching");
    }
    if (r.to_count(tok[5]) != m.pairs.size()) r.fail("order index out of sequence");
    MatchedPair p{static_cast<CellId>(r.to_count(tok[2])), static_cast<CellId>(r.to_count(tok[3]))};
    if (tok[4] == "free") {
      p.kind = PairKind::kFree;
    } else if (tok[4] == "flat") {
      p.kind = PairKind::kFlat;
    } else if (tok[4] == "internal") {
      p.kind = PairKind::kInternal;
    } else {
      r.fail("unknown pair kind '" + tok[4] + "'");
    }
    m.pairs.push_back(p);
  }
  return m;
}

KnotPath read_knot_path(const std::string& path) {
  auto f = open_in(path);
  LineReader r(f);
  std::vector<std::string> tok;
  KnotPath p{path, {}};
  while (r.next(tok)) {
    if (tok.size() != 3) r.fail("path line needs 'x y z'");
    p.cells.push_back({static_cast<int>(r.to_int(tok[0])), static_cast<int>(r.to_int(tok[1])),
                       static_cast<int>(r.to_int(tok[2]))});
  }
  return p;
}

IdSet read_tree_edges(const std::string& path, const CellComplex& complex) {
  auto f = open_in(path);
  LineReader r(f);
  std::vector<std::string> tok;
  std::vector<CellId> edges;
  while (r.next(tok)) {
    if (tok.size() != 2) r.fail("tree line needs 'a b'");
    std::array<CellId, 2> e{static_cast<CellId>(r.to_count(tok[0])), static_cast<CellId>(r.to_count(tok[1]))};
    if (e[0] > e[1]) std::swap(e[0], e[1]);
    auto id = complex.find_simplex(e);
    if (!id) r.fail("no edge " + tok[0] + "-" + tok[1] + " in the mesh");
    edges.push_back(*id);
  }
  return make_id_set(std::move(edges));
}

Json mesh_json(const CellComplex& complex) {
  Json j;
  j["vertices"] = complex.vertices();
  j["edges"] = complex.edges();
  j["faces"] = complex.faces();
  j["volumes"] = complex.volumes();
  j["euler"] = complex.euler_characteristic();
  return j;
}

Json validation_json(const ValidationReport& report) {
  Json j;
  j["admissible"] = report.admissible();
  j["boundary_squared_zero"] = report.boundary_squared_zero;
  j["manifold_with_boundary"] = report.manifold_with_boundary;
  j["connected"] = report.connected;
  j["boundary_surface_connected"] = report.boundary_surface_connected;
  j["euler"] = report.euler;
  j["boundary_euler"] = report.boundary_euler;
  j["boundary_faces"] = report.boundary_faces;
  j["topology_warning"] = report.topology_warning;
  return j;
}

Json trace_json(const SolveTrace& trace) {
  Json j;
  j["depth"] = trace.depth();
  j["terminal"] = std::string(terminal_action_name(trace.terminal));
  j["basis_2_level_1"] = trace.basis_2_level_1();
  Json levels = Json::array();
  for (const auto& lt : trace.levels) {
    Json l;
    l["level"] = lt.level;
    l["basis_1"] = lt.basis_1;
    l["basis_2"] = lt.basis_2;
    l["pairs_2"] = lt.pairs_2;
    l["pairs_1"] = lt.pairs_1;
    l["free"] = lt.free_pairs;
    l["flat"] = lt.flat_pairs;
    l["internal"] = lt.internal_pairs;
    l["critical_1"] = lt.critical_1;
    l["critical_2"] = lt.critical_2;
    l["residual_rows"] = lt.residual_rows;
    l["max_face_support"] = lt.max_face_support;
    l["zero_block_checked"] = lt.zero_block_checked;
    l["seconds"] = lt.seconds;
    levels.push_back(l);
  }
  j["levels"] = levels;
  if (trace.terminal == TerminalAction::kFallbackSolver) {
    j["fallback"] = Json{{"rows", trace.fallback_rows}, {"cols", trace.fallback_cols}, {"rank", trace.fallback_rank}};
  }
  j["zero_block_checks"] = trace.zero_block_checks;
  j["boundary_checks"] = trace.boundary_checks;
  j["rewrites"] = trace.rewrites;
  j["seconds"] = trace.seconds;
  return j;
}

}  // namespace curlinv
