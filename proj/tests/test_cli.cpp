#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "curlinv/complex.hpp"
#include "curlinv/io.hpp"
#include "oracle.hpp"

using namespace curlinv;

namespace {

namespace fs = std::filesystem;

struct Cli : testing::Test {
  fs::path dir;

  void SetUp() override {
    dir = fs::path(testing::TempDir()) /
          ("cli_" + std::string(testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }

  std::string file(const std::string& name) const { return (dir / name).string(); }

  // Runs the built binary, stdout to `stdout_name`, and returns its exit status.
  int run(const std::string& args, const std::string& stdout_name = "stdout.txt") const {
    const std::string cmd =
        std::string(CURLINV_CLI_PATH) + " " + args + " > " + file(stdout_name) + " 2> " + file("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(file(name));
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
};

}  // namespace

TEST_F(Cli, GenThenSolveRoundTrip) {
  ASSERT_EQ(run("gen --grid 3 --seed 2 --out " + file("m.txt") + " --field " + file("f.txt")), 0);
  const auto report = nlohmann::json::parse(slurp("stdout.txt"));
  EXPECT_EQ(report["mesh"]["volumes"], 162);
  EXPECT_EQ(report["validation"]["euler"], 1);

  ASSERT_EQ(run("solve --mesh " + file("m.txt") + " --field " + file("f.txt") + " --seed 5 --out " + file("h.txt")), 0);
  const auto k = read_mesh(file("m.txt"));
  const auto i = read_cochain(file("f.txt"), k, 2);
  const auto h = read_cochain(file("h.txt"), k, 1);
  EXPECT_EQ(oracle::mul(oracle::to_dense(incidence_matrix(k, 1)), oracle::to_vec(h)), oracle::to_vec(i));
}

TEST_F(Cli, FixedSeedIsByteIdentical) {
  const std::string args = "solve --furch 12 --knot trefoil-1 --seed 7 --out ";
  ASSERT_EQ(run(args + file("h1.txt"), "r1.txt"), 0);
  ASSERT_EQ(run(args + file("h2.txt"), "r2.txt"), 0);
  EXPECT_EQ(slurp("h1.txt"), slurp("h2.txt"));
  EXPECT_EQ(slurp("r1.txt"), slurp("r2.txt"));
  EXPECT_FALSE(slurp("h1.txt").empty());
}

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("gen --grid 0"), 1);
  EXPECT_EQ(run("gen"), 1);
  EXPECT_EQ(run("gen --grid 2 --furch 12"), 1);
  EXPECT_EQ(run("bogus"), 1);
  EXPECT_EQ(run("solve --mesh " + file("missing.txt")), 1);
}

TEST_F(Cli, TamperedFieldExitsTwo) {
  ASSERT_EQ(run("gen --grid 2 --seed 1 --out " + file("m.txt") + " --field " + file("f.txt")), 0);
  const auto k = read_mesh(file("m.txt"));
  auto i = read_cochain(file("f.txt"), k, 2);
  i.values()[0] += Scalar(1);
  write_cochain(i, file("f.txt"));
  EXPECT_EQ(run("solve --mesh " + file("m.txt") + " --field " + file("f.txt")), 2);
  EXPECT_NE(slurp("stderr.txt").find("NotSolenoidal"), std::string::npos);
}

TEST_F(Cli, SttStallExitsThree) {
  EXPECT_EQ(run("stt --furch 12 --knot trefoil-1 --seed 1"), 3);
  const auto report = nlohmann::json::parse(slurp("stdout.txt"));
  EXPECT_EQ(report["run"]["status"], "stalled");
  EXPECT_GT(report["run"]["unresolved_faces"].get<int>(), 0);
}

TEST_F(Cli, SttRoundTripThroughMatching) {
  ASSERT_EQ(run("stt --grid 4 --seed 3 --tree from-matching --out " + file("h.txt")), 0);
  const auto report = nlohmann::json::parse(slurp("stdout.txt"));
  EXPECT_EQ(report["run"]["status"], "terminated");
  EXPECT_EQ(report["round_trip"]["status"], "terminated");
}

TEST_F(Cli, BenchWritesCsv) {
  ASSERT_EQ(run("bench --sizes 2,4 --runs 2 --seed 1 --out " + file("b.csv")), 0);
  std::istringstream csv(slurp("b.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "n,tets,runs,median_seconds,max_depth,max_basis_2_level_1,ratio");
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("2,48,2,", 0), 0u);
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("4,384,2,", 0), 0u);
  EXPECT_EQ(run("bench --sizes \"\""), 1);
}
