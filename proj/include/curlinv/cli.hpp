#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace curlinv {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // internal, IO or usage
  kExitPrecondition = 2,
  kExitStall = 3,
};

struct CommandConfig {
  std::string command;  // gen | solve | stt | bench
  std::string mesh;
  std::string field;
  std::string out;
  std::uint64_t seed = 0;
  std::optional<int> grid;
  std::optional<int> furch;
  std::optional<std::string> knot;  // name, or file:PATH
  std::int64_t magnitude = 10;
  int runs = 1;
  std::string tree = "bfs";  // bfs | file:PATH | from-matching
  std::vector<int> sizes;
  bool timings = false;
};

// Each command writes its report to `out`, diagnostics to `err`, and
// returns an ExitCode.
int cmd_gen(const CommandConfig& config, std::ostream& out, std::ostream& err);
int cmd_solve(const CommandConfig& config, std::ostream& out, std::ostream& err);
int cmd_stt(const CommandConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const CommandConfig& config, std::ostream& out, std::ostream& err);

int run_command(const CommandConfig& config, std::ostream& out, std::ostream& err);

}  // namespace curlinv
