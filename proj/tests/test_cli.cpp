#include "lagnewton/commands.hpp"
#include "lagnewton/matrix_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using lagnewton::cli::run_main;

namespace {

const std::string kData = LAGNEWTON_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "lagnewton");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string field(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  return "";
}

struct ScratchDir {
  fs::path path;
  ScratchDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("lagnewton_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("solve the toy problem with defaults") {
  const Result r = run({"solve", "--problem", kData + "/toy_l1.json"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "status") == "Converged");
  CHECK(std::stoi(field(r.out, "iterations")) <= 3);
  CHECK(field(r.out, "x") == "1");
  CHECK(field(r.out, "lambda") == "1");
  CHECK(field(r.out, "formulation") == "activeset");
}

TEST_CASE("solve exit codes") {
  CHECK(run({"solve", "--problem", kData + "/toy_l1.json", "--max-iter", "0"}).code == 2);
  CHECK(run({"solve", "--problem", kData + "/rank_deficient.json"}).code == 3);
  CHECK(run({"solve"}).code == 1);
  CHECK(run({"solve", "--problem", kData + "/nope.json"}).code == 1);
  CHECK(run({"solve", "--problem", kData + "/toy_l1.json", "--formulation", "secant"}).code == 1);
  CHECK(run({"solve", "--problem", kData + "/toy_l1.json", "--c", "-1"}).code == 1);
  CHECK(run({"solve", "--problem", kData + "/toy_l1.json", "--x0", kData + "/toy_a.txt",
             "--lambda0", "zeros"}).code == 0);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"solve", "--help"}).code == 0);
}

TEST_CASE("direction and full-step runs agree") {
  for (const char* file : {"/small_qp_box.json", "/small_qp_l1.json", "/softplus_l1.json"}) {
    ScratchDir dir;
    CHECK(run({"solve", "--problem", kData + file, "--formulation", "direction", "--x-out", dir / "xd"}).code == 0);
    CHECK(run({"solve", "--problem", kData + file, "--formulation", "fullstep", "--x-out", dir / "xf"}).code == 0);
    const auto xd = lagnewton::read_vector(dir / "xd"), xf = lagnewton::read_vector(dir / "xf");
    CHECK((xd - xf).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}

TEST_CASE("problem defaults apply unless a flag overrides them") {
  const Result r = run({"solve", "--problem", kData + "/small_qp_l1.json"});
  CHECK(field(r.out, "c") == "2");
  const Result s = run({"solve", "--problem", kData + "/small_qp_l1.json", "--c", "0.5"});
  CHECK(field(s.out, "c") == "0.5");
}

TEST_CASE("solve then check") {
  ScratchDir dir;
  const std::string problem = kData + "/small_qp_box.json";
  REQUIRE(run({"solve", "--problem", problem, "--x-out", dir / "x", "--lambda-out", dir / "l"}).code == 0);
  const Result ok = run({"check", "--problem", problem, "--x", dir / "x", "--lambda", dir / "l"});
  CHECK(ok.code == 0);
  CHECK(field(ok.out, "certified") == "yes");

  // Perturb x for f = x^2/2 - 2x with E = I: the stationarity residual is the perturbation.
  std::ofstream(dir / "xp") << "1 1\n1.25\n";
  std::ofstream(dir / "lp") << "1 1\n1\n";
  const Result bad = run({"check", "--problem", kData + "/toy_l1.json", "--x", dir / "xp", "--lambda", dir / "lp"});
  CHECK(bad.code == 5);
  CHECK(std::stod(field(bad.out, "kkt_stationarity")) == doctest::Approx(0.25));

  const Result mismatch = run({"check", "--problem", problem, "--x", dir / "lp", "--lambda", dir / "l"});
  CHECK(mismatch.code == 1);
}

TEST_CASE("json report") {
  ScratchDir dir;
  const Result r = run({"solve", "--problem", kData + "/toy_box.json", "--output", dir / "r.json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "r.json"));
  CHECK(doc.at("status") == "Converged");
  CHECK(doc.at("lambda").at(0).get<double>() == 1.0);
}

TEST_CASE("reports are deterministic") {
  ScratchDir dir;
  for (int k = 0; k < 2; ++k)
    REQUIRE(run({"solve", "--problem", kData + "/softplus_l1.json", "--warm-start", "3",
                 "--output", dir / ("r" + std::to_string(k))}).code == 0);
  CHECK(slurp(dir / "r0") == slurp(dir / "r1"));
}

TEST_CASE("bench") {
  const Result toy = run({"bench", "--suite", "toy"});
  CHECK(toy.code == 0);
  CHECK(toy.out.find("toy-l1") != std::string::npos);

  ScratchDir dir;
  const Result qp = run({"bench", "--suite", "qp-box", "--sizes", "30x10,30x40", "--seeds", "1,2",
                         "--output", dir / "t.tsv"});
  CHECK(qp.code == 0);
  const std::string table = slurp(dir / "t.tsv");
  CHECK(std::count(table.begin(), table.end(), '\n') == 5);
  CHECK(table.rfind("id\tn\tm\tnewton_iterations", 0) == 0);

  CHECK(run({"bench", "--suite", "qp-l1", "--sizes", ""}).code == 1);
  CHECK(run({"bench", "--suite", "qp-l1"}).code == 1);
  CHECK(run({"bench", "--suite", "lp"}).code == 1);
  CHECK(run({"bench", "--suite", "qp-l1", "--sizes", "10by5"}).code == 1);
}
