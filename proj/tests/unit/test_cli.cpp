#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "planarcut/graph.hpp"
#include "planarcut/instance_io.hpp"

using namespace planarcut;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

const char* cli() {
  const char* p = std::getenv("PLANARCUT_CLI");
  return p ? p : "planarcut";
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("planarcut_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& f) {
  std::ifstream in(f, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const std::string cmd = std::string("'") + cli() + "' " + args + " > '" + out.string() + "' 2>/dev/null";
  const int st = std::system(cmd.c_str());
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, slurp(out)};
}

std::string write(const std::string& name, const GraphSpec& s) {
  const fs::path f = scratch() / name;
  write_instance_file(f.string(), s);
  return "'" + f.string() + "'";
}

}  // namespace

TEST_CASE("generate writes valid grids") {
  for (auto [r, c, n, m, f] : {std::array{2, 2, 4, 4, 2}, std::array{3, 3, 9, 12, 5}}) {
    const Run res = run("generate grid --rows " + std::to_string(r) + " --cols " + std::to_string(c) + " --seed 4");
    REQUIRE(res.code == 0);
    const auto g = EmbeddedPlanarGraph::build(parse_instance(res.out));
    CHECK(g.num_vertices() == n);
    CHECK(g.num_edges() == m);
    CHECK(g.num_faces() == f);
  }
  CHECK(run("generate wheel --spokes 5").code == 0);
  CHECK(run("generate random-planar --rows 3 --cols 3 --keep 0.7 --seed 2").code == 0);
  CHECK(run("generate hexagon").code == 2);
}

TEST_CASE("solve reports the oracle gap") {
  const Run res = run("solve " + write("c4.json", fixtures::c4()) + " --oracle --json " +
                      "'" + (scratch() / "c4_report.json").string() + "'");
  REQUIRE(res.code == 0);
  CHECK(res.out.find("gap=1.000000000") != std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(scratch() / "c4_report.json"));
  CHECK(doc["gap"].get<double>() == doctest::Approx(1.0));
  CHECK(doc.contains("cut"));
  // Same seed twice: identical bytes.
  CHECK(run("solve " + write("c4.json", fixtures::c4()) + " --oracle").out ==
        run("solve " + write("c4.json", fixtures::c4()) + " --oracle").out);
}

TEST_CASE("exit codes") {
  GraphSpec none = fixtures::c4();
  none.demands.clear();
  CHECK(run("solve " + write("none.json", none)).code == 4);
  {
    std::ofstream(scratch() / "bad.json") << "{\"n\": 2}";
  }
  CHECK(run("solve '" + (scratch() / "bad.json").string() + "'").code == 3);
  CHECK(run("solve " + write("c4.json", fixtures::c4()) + " --epsilon 3").code == 2);
  CHECK(run("solve " + write("c4.json", fixtures::c4()) + " --single-guess --all-guesses").code == 2);
  CHECK(run("solve " + write("c4.json", fixtures::c4()) + " --cap-cycles 0").code == 2);
  CHECK(run("verify nothing").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("verify runs a suite") {
  const Run res = run("verify decoupling --samples 1000 --json '" + (scratch() / "dec.json").string() + "'");
  CHECK(res.code == 0);
  CHECK(res.out.find("result pass") != std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(scratch() / "dec.json"));
  CHECK(doc["passed"].get<bool>());
  CHECK(doc["suite"] == "decoupling");
}
