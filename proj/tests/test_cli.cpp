// End-to-end checks of the installed CLI surface: artifact schemas, exit
// codes, determinism. argv[1] is the path to the folner binary.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace {

std::string g_cli;
std::filesystem::path g_dir;

struct RunOutcome {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

RunOutcome run(const std::string& args, const std::string& env = "") {
  const std::filesystem::path out = g_dir / "stdout.txt";
  const std::filesystem::path err = g_dir / "stderr.txt";
  const std::string cmd =
      env + (env.empty() ? "" : " ") + g_cli + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return RunOutcome{code, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("profile emits the documented CSV and is deterministic") {
  const RunOutcome first = run("profile --op zoo:shift --dims 1,4,100 --p 2");
  REQUIRE(first.exit_code == 0);
  std::istringstream is(first.out);
  std::string line;
  std::getline(is, line);
  CHECK(line.rfind("# spec_hash: ", 0) == 0);
  std::getline(is, line);
  CHECK(line == "window_start,window_len,ratio1,ratio2,opnorm_comm");
  std::getline(is, line);
  CHECK(line == "0,1,,1,");
  std::getline(is, line);
  CHECK(line == "0,4,,0.5,");
  std::getline(is, line);
  CHECK(line == "0,100,,0.10000000000000001,");

  const RunOutcome second = run("profile --op zoo:shift --dims 1,4,100 --p 2");
  CHECK(first.out == second.out);
}

TEST_CASE("profile json format parses") {
  const RunOutcome r = run("profile --op zoo:shift --dims 1,4 --format json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][0]["ratio2"] == 1.0);
  CHECK(j["rows"][0].contains("ratio1"));
  CHECK(j["rows"][0].contains("opnorm_comm"));
}

TEST_CASE("malformed DSL exits 2 with the JSON pointer") {
  const RunOutcome r =
      run(R"(profile --op '{"op":"sum","args":[{"op":"shift"},{"op":"nope"}]}' --dims 4)");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("/args/1/op") != std::string::npos);
}

TEST_CASE("size cap violations exit 3 and name the cap") {
  const RunOutcome r =
      run("profile --op zoo:shift --dims 100", "FOLNER_SIZE_CAP=8");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("8") != std::string::npos);
}

TEST_CASE("verify reports the exact Cuntz deviation") {
  const RunOutcome r = run("verify --op zoo:cuntz-family:2 --window 64");
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.find("max deviation 0") != std::string::npos);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["max_deviation"] == 0.0);
}

TEST_CASE("szego KS column decreases toward the symbol") {
  const RunOutcome r = run("szego --op zoo:toeplitz:1,0,1 --dims 64,256,1024 --ref symbol");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);  // hash comment
  std::getline(is, line);  // header
  CHECK(line.rfind("d,ks_dist,m1_err", 0) == 0);
  double prev = 1.0;
  double last = 1.0;
  while (std::getline(is, line)) {
    std::stringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    std::getline(row, cell, ',');
    last = std::atof(cell.c_str());
    CHECK(last < prev);
    prev = last;
  }
  CHECK(last <= 0.02);
}

TEST_CASE("trace rows carry the exact band diagonal sums") {
  const RunOutcome r = run("trace --op zoo:toeplitz:1,0,1 --dims 10 --kmax 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\n10,1,0,0\n") != std::string::npos);
  CHECK(r.out.find("\n10,2,1.8999999999999999,0\n") != std::string::npos);
}

TEST_CASE("search probe flags the Cuntz family as flat") {
  const RunOutcome r =
      run("search --ops zoo:cuntz-family:2 --dims 8,16,32 --window 128");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["decay_flag"] == "flat");
  CHECK(j["best_ratio"].get<double>() >= 0.7);
  CHECK(j["projection_family"] == "coordinate");
  CHECK(j["per_dim"].size() == 3);
  CHECK(j["best_window"].is_array());
}

TEST_CASE("nrange emits the polygon and distance") {
  const RunOutcome r = run("nrange --op zoo:shift --size 12 --angles 24 --probe-samples 2");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["vertices"].size() >= 3);
  CHECK(j["distance_to_origin"].get<double>() >= 0.0);
  CHECK(j["finiteness_probe"].size() == 1);
}

TEST_CASE("artifacts land atomically at --out") {
  const std::filesystem::path out = g_dir / "profile.csv";
  std::filesystem::remove(out);
  const RunOutcome r =
      run("profile --op zoo:shift --dims 4 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  CHECK(std::filesystem::exists(out));
  CHECK_FALSE(std::filesystem::exists(out.string() + ".tmp"));
  CHECK(r.out.find("profile spec=") != std::string::npos);  // summary on stdout
  CHECK(slurp(out).find("window_start") != std::string::npos);
}

TEST_CASE("inline JSON operators round through the CLI") {
  const RunOutcome r = run(
      R"(profile --op '{"op":"sum","args":[{"op":"shift"},{"op":"adjoint","args":[{"op":"shift"}]}]}' --dims 10 --p 2)");
  REQUIRE(r.exit_code == 0);
  // Tridiagonal 2cos boundary: ratio2 = sqrt(2/10).
  CHECK(r.out.find("0,10,,0.44721359549995793,") != std::string::npos);
}

TEST_CASE("operator files load through @path") {
  const std::filesystem::path opfile = g_dir / "op.json";
  std::ofstream(opfile) << R"({"op":"toeplitz","c":[1,0,1]})";
  const RunOutcome r = run("profile --op @" + opfile.string() + " --dims 8 --p 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("0,8,,0.5,") != std::string::npos);  // sqrt(2/8)
}

TEST_CASE("szego artifacts are byte-identical across runs") {
  const RunOutcome a = run("szego --op zoo:toeplitz:1,0,1 --dims 32,64 --ref symbol");
  const RunOutcome b = run("szego --op zoo:toeplitz:1,0,1 --dims 32,64 --ref symbol");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-folner-cli>\n", argv[0]);
    return 1;
  }
  g_cli = argv[1];
  char tmpl[] = "/tmp/folner_cli_test_XXXXXX";
  g_dir = mkdtemp(tmpl);
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  const int rc = ctx.run();
  std::filesystem::remove_all(g_dir);
  return rc;
}
