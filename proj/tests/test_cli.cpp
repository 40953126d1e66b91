#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smqka/cli.hpp"
#include "smqka/report.hpp"

using namespace smqka;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("smqka_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path / name);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
};

const char* kHonest = "N = 5\nn = 16\nk = 1\nthreshold = 0\nattack = none\nseed = 42\ntrials = 20\n";

}  // namespace

TEST_CASE("run writes a report") {
  TempDir dir;
  const auto scenario = dir.write("honest5.cfg", kHonest);

  const auto text = cli({"run", "--scenario", scenario});
  CHECK(text.code == kExitOk);
  CHECK(text.out.find("correctness_rate") != std::string::npos);
  CHECK(text.out.find("1.0000") != std::string::npos);

  const auto out_path = (dir.path / "r.jsonl").string();
  const auto rec = cli({"run", "--scenario", scenario, "--format", "records", "--out", out_path,
                        "--trials", "7", "--seed", "3"});
  CHECK(rec.code == kExitOk);
  const auto doc = read_records(dir.read("r.jsonl"));
  CHECK(doc.trials.size() == 7);
  CHECK(doc.config.seed == 3);
  CHECK(doc.aggregate.correctness_rate == 1.0);
}

TEST_CASE("records are byte-identical for identical arguments") {
  TempDir dir;
  const auto scenario = dir.write("s.cfg", kHonest);
  const auto a = cli({"run", "--scenario", scenario, "--format", "records"});
  const auto b = cli({"run", "--scenario", scenario, "--format", "records", "--threads", "3"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("error paths exit 2 and name the culprit") {
  TempDir dir;
  const auto missing = cli({"run", "--scenario", (dir.path / "nope.cfg").string()});
  CHECK(missing.code == kExitConfigError);
  CHECK(missing.err.find("nope.cfg") != std::string::npos);

  const auto bad = dir.write("bad.cfg", "N = 5\nn = 4\nk = 0.3\n");
  const auto bad_run = cli({"run", "--scenario", bad});
  CHECK(bad_run.code == kExitConfigError);
  CHECK(bad_run.err.find("k: k*n not an integer") != std::string::npos);

  const auto adjacent = dir.write(
      "adj.cfg", "N = 4\nn = 4\nk = 1\nattack = fairness_nonadjacent\nhonest_set = 0,1\n");
  const auto adj_run = cli({"run", "--scenario", adjacent});
  CHECK(adj_run.code == kExitConfigError);
  CHECK(adj_run.err.find("honest_set") != std::string::npos);
  CHECK(adj_run.err.find("0 and 1") != std::string::npos);

  CHECK(cli({"run", "--scenario", bad, "--bogus"}).code == kExitConfigError);
  CHECK(cli({}).code == kExitConfigError);
  CHECK(cli({"run"}).code == kExitConfigError);
  CHECK(cli({"efficiency", "--N", "1", "--k", "1"}).code == kExitConfigError);
  CHECK(cli({"efficiency", "--N", "5", "--k", "abc"}).code == kExitConfigError);

  const auto good = dir.write("good.cfg", kHonest);
  const auto unwritable =
      cli({"run", "--scenario", good, "--out", (dir.path / "no" / "such" / "dir.txt").string()});
  CHECK(unwritable.code == kExitConfigError);
  CHECK(unwritable.err.find("dir.txt") != std::string::npos);
}

TEST_CASE("--fail-on-abort") {
  TempDir dir;
  const auto eve = dir.write("eve.cfg",
                             "N = 3\nn = 16\nk = 1\nattack = outside_intercept_resend\ntrials = 30\n");
  CHECK(cli({"run", "--scenario", eve}).code == kExitOk);
  CHECK(cli({"run", "--scenario", eve, "--fail-on-abort"}).code == kExitAborted);
  const auto honest = dir.write("h.cfg", kHonest);
  CHECK(cli({"run", "--scenario", honest, "--fail-on-abort"}).code == kExitOk);
}

TEST_CASE("efficiency and oracle tables") {
  const auto eff = cli({"efficiency", "--N", "5", "--k", "1"});
  CHECK(eff.code == kExitOk);
  CHECK(eff.out.find("1/10") != std::string::npos);
  CHECK(eff.out.find("1/40") != std::string::npos);
  CHECK(eff.out.find("ratio SMQKA/LiuMQKA = 4") != std::string::npos);

  const auto eff_rec = cli({"efficiency", "--N", "5", "--k", "2", "--format", "records"});
  CHECK(eff_rec.out.find("\"value\":\"1/15\"") != std::string::npos);

  const auto oracle = cli({"oracle"});
  CHECK(oracle.code == kExitOk);
  CHECK(oracle.out.find("X       Z     0.5000") != std::string::npos);
  CHECK(oracle.out.find("X       X     0.0000") != std::string::npos);
  const auto oracle_rec = cli({"oracle", "--format", "records"});
  std::istringstream lines(oracle_rec.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    const bool same = j["decoy_basis"] == j["tap_basis"];
    CHECK(j["p_error"].get<double>() == doctest::Approx(same ? 0.0 : 0.5));
    ++rows;
  }
  CHECK(rows == 6);
}

TEST_CASE("sweep over N and k") {
  TempDir dir;
  const auto scenario = dir.write("s.cfg", "N = 3\nn = 4\nk = 1\ntrials = 5\n");
  const auto byN = cli({"sweep", "--scenario", scenario, "--vary", "N", "--from", "3", "--to", "6"});
  CHECK(byN.code == kExitOk);
  std::size_t lines = 0;
  for (char ch : byN.out) lines += ch == '\n';
  CHECK(lines == 5);

  const auto byK = cli({"sweep", "--scenario", scenario, "--vary", "k", "--from", "0", "--to", "1",
                        "--step", "0.25", "--format", "records"});
  CHECK(byK.code == kExitOk);
  CHECK(byK.out.find("\"k\":0.75") != std::string::npos);

  const auto frac = cli({"sweep", "--scenario", scenario, "--vary", "k", "--from", "0", "--to",
                         "1", "--step", "0.3"});
  CHECK(frac.code == kExitConfigError);
}

TEST_CASE("default output directory from the environment") {
  TempDir dir;
  const auto scenario = dir.write("envcase.cfg", kHonest);
  ::setenv(kOutDirEnv, dir.path.c_str(), 1);
  const auto r = cli({"run", "--scenario", scenario, "--format", "records"});
  ::unsetenv(kOutDirEnv);
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  CHECK(read_records(dir.read("envcase.jsonl")).trials.size() == 20);
}
