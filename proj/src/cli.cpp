#include "curlinv/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "curlinv/errors.hpp"
#include "curlinv/generators.hpp"
#include "curlinv/io.hpp"
#include "curlinv/matching.hpp"
#include "curlinv/solver.hpp"

namespace curlinv {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<KnotPath> knot_paths(const CommandConfig& c, int n) {
  const std::string name = c.knot.value_or("trefoil-1");
  if (name.rfind("file:", 0) == 0) return {read_knot_path(name.substr(5))};
  return named_paths(name, n);
}

// Mesh from --mesh, --grid or --furch (exactly one).
CellComplex load_mesh(const CommandConfig& c) {
  const int sources = int(!c.mesh.empty()) + int(c.grid.has_value()) + int(c.furch.has_value());
  if (sources != 1) throw UsageError("give exactly one of --mesh, --grid, --furch");
  if (!c.mesh.empty()) return read_mesh(c.mesh);
  if (c.grid) {
    if (*c.grid < 1) throw UsageError("--grid must be >= 1");
    return cube_grid(*c.grid);
  }
  if (*c.furch < 1) throw UsageError("--furch must be >= 1");
  const auto paths = knot_paths(c, *c.furch);
  return furch_ball(*c.furch, paths);
}

Cochain load_field(const CommandConfig& c, const CellComplex& k) {
  if (!c.field.empty()) return read_cochain(c.field, k, 2);
  return random_solenoidal_field(k, c.seed, c.magnitude);
}

void print(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::kNotSolenoidal || e.code() == ErrorCode::kNotCurlFree) return kExitPrecondition;
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

int cmd_gen(const CommandConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CellComplex k = load_mesh(c);
    if (!c.out.empty()) write_mesh(k, c.out);
    if (!c.field.empty()) write_cochain(random_solenoidal_field(k, c.seed, c.magnitude), c.field);
    Json j;
    j["command"] = "gen";
    j["mesh"] = mesh_json(k);
    j["validation"] = validation_json(validate(k));
    print(out, j);
    return int(kExitOk);
  });
}

int cmd_solve(const CommandConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CellComplex k = load_mesh(c);
    const Cochain field = load_field(c, k);
    const auto report = validate(k);
    SolveOptions opts;
    opts.seed = c.seed;
    const VectorPotential vp = solve_vector_potential(k, field, opts);
    // Independent check on the canonical basis before reporting success.
    const bool residual_zero = apply(incidence_matrix(k, 1), vp.h) == field;
    if (!c.out.empty()) write_cochain(vp.h, c.out);

    Json j;
    j["command"] = "solve";
    j["mesh"] = mesh_json(k);
    j["validation"] = validation_json(report);
    Json t = trace_json(vp.trace);
    if (!c.timings) {
      t.erase("seconds");
      for (auto& l : t["levels"]) l.erase("seconds");
    }
    j["trace"] = t;
    j["residual_zero"] = residual_zero;
    print(out, j);
    if (!residual_zero) {
      err << "error: C h - i is not zero\n";
      return int(kExitFailure);
    }
    return int(kExitOk);
  });
}

int cmd_stt(const CommandConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CellComplex k = load_mesh(c);
    const Cochain field = load_field(c, k);
    if (k.volumes() > 0 && !apply(incidence_matrix(k, 2), field).is_zero()) {
      throw Error(ErrorCode::kNotSolenoidal, "D i is not zero");
    }
    SpanningTree tree;
    if (c.tree == "bfs" || c.tree == "from-matching") {
      tree = bfs_spanning_tree(k, 0, c.seed);
    } else if (c.tree.rfind("file:", 0) == 0) {
      tree = tree_from_edges(k, read_tree_edges(c.tree.substr(5), k));
    } else {
      throw UsageError("--tree must be bfs, file:PATH or from-matching");
    }

    Json j;
    j["command"] = "stt";
    j["mesh"] = mesh_json(k);
    j["tree"] = c.tree;
    auto describe = [&](const SttResult& r) {
      Json s;
      if (const auto* t = std::get_if<SttTerminated>(&r)) {
        s["status"] = "terminated";
        s["pairs"] = t->used.size();
        s["acyclic"] = verify_acyclic(t->used, k);
        s["complete"] = is_complete(t->used, k);
        s["residual_zero"] = apply(incidence_matrix(k, 1), t->h) == field;
      } else {
        const auto& st = std::get<SttStalled>(r);
        s["status"] = "stalled";
        s["unresolved_faces"] = st.unresolved_faces.size();
        s["sweeps"] = st.sweeps;
      }
      return s;
    };

    const SttResult first = stt_run(k, tree, field);
    j["run"] = describe(first);
    const auto* done = std::get_if<SttTerminated>(&first);
    std::optional<SttResult> second;
    if (done && c.tree == "from-matching") {
      second = stt_run(k, tree_from_matching(done->used, k), field);
      j["round_trip"] = describe(*second);
      done = std::get_if<SttTerminated>(&*second);
    }
    if (done && !c.out.empty()) write_cochain(done->h, c.out);
    print(out, j);
    if (!done) return int(kExitStall);
    return apply(incidence_matrix(k, 1), done->h) == field ? int(kExitOk) : int(kExitFailure);
  });
}

int cmd_bench(const CommandConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (c.sizes.empty()) throw UsageError("bench needs a non-empty --sizes list");
    if (c.runs < 1) throw UsageError("--runs must be >= 1");
    std::ofstream file;
    if (!c.out.empty()) {
      file.open(c.out);
      if (!file) throw Error(ErrorCode::kParseError, "cannot write '" + c.out + "'");
    }
    std::ostream& csv = c.out.empty() ? out : file;
    csv << "n,tets,runs,median_seconds,max_depth,max_basis_2_level_1,ratio\n";
    double prev = 0.0;
    for (int n : c.sizes) {
      if (n < 1) throw UsageError("sizes must be >= 1");
      CellComplex k;
      if (c.knot) {
        const auto paths = knot_paths(c, n);
        k = furch_ball(n, paths);
      } else {
        k = cube_grid(n);
      }
      std::vector<double> times;
      int max_depth = 0;
      std::size_t max_b2 = 0;
      for (int r = 0; r < c.runs; ++r) {
        const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(r) + 1;
        const Cochain field = random_solenoidal_field(k, seed, c.magnitude);
        SolveOptions opts;
        opts.seed = seed;
        const auto t0 = std::chrono::steady_clock::now();
        const VectorPotential vp = solve_vector_potential(k, field, opts);
        times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        max_depth = std::max(max_depth, vp.trace.depth());
        max_b2 = std::max(max_b2, vp.trace.basis_2_level_1());
      }
      const double med = median(times);
      csv << n << "," << k.volumes() << "," << c.runs << "," << std::setprecision(6) << med << "," << max_depth
          << "," << max_b2 << ",";
      if (prev > 0.0) csv << med / prev;
      csv << "\n";
      prev = med;
    }
    return int(kExitOk);
  });
}

int run_command(const CommandConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "gen") return cmd_gen(c, out, err);
  if (c.command == "solve") return cmd_solve(c, out, err);
  if (c.command == "stt") return cmd_stt(c, out, err);
  if (c.command == "bench") return cmd_bench(c, out, err);
  err << "usage: unknown command '" << c.command << "'\n";
  return kExitFailure;
}

}  // namespace curlinv
