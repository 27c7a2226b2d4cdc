#include <cstdlib>
#include <filesystem>
#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"
#include "spa/graph_io.hpp"

namespace fs = std::filesystem;
using spa::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run spa_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name)
      : dir(fs::temp_directory_path() / ("spa-cli-" + std::to_string(::getpid()) + "-" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& leaf) const { return (dir / leaf).string(); }
};

// Triangle 3 -> 2 -> 1, 3 -> 1, with positions and full trajectories.
const char* kTriangle =
    "%spa-graph v1\n"
    "p=0.5\n"
    "a1=1\n"
    "a2=1\n"
    "dimension=1\n"
    "norm=linf\n"
    "n=3\n"
    "seed=1\n"
    "%edges\n"
    "2\t1\n"
    "3\t1\n"
    "3\t2\n"
    "%positions\n"
    "1\t0.1\n"
    "2\t0.2\n"
    "3\t0.3\n"
    "%trajectories\n"
    "1\t1\t0\n"
    "1\t2\t1\n"
    "1\t3\t2\n"
    "2\t2\t0\n"
    "2\t3\t1\n"
    "3\t3\t0\n";

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("generate writes graphs and a manifest") {
  Scratch s("generate");
  auto r = spa_run({"generate", "--n", "1000", "--out", s / "a"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(s / "a/graph_1.spa"));
  auto manifest = nlohmann::json::parse(slurp(s / "a/manifest.json"));
  CHECK(manifest["replicas"].size() == 1);
  CHECK(manifest["replicas"][0]["params"]["seed"] == 1);
  CHECK(manifest["replicas"][0]["params"]["n"] == 1000);
  CHECK(manifest.contains("version"));

  SUBCASE("deterministic output") {
    REQUIRE(spa_run({"generate", "--n", "1000", "--out", s / "b"}).code == 0);
    CHECK(slurp(s / "a/graph_1.spa") == slurp(s / "b/graph_1.spa"));
  }

  SUBCASE("manifest alone reproduces the graph") {
    const auto& params = manifest["replicas"][0]["params"];
    spa::ModelParams p;
    p.p = params["p"];
    p.a1 = params["a1"];
    p.a2 = params["a2"];
    p.n = params["n"];
    p.seed = params["seed"];
    p.dimension = params["dimension"];
    p.norm = spa::parse_norm(params["norm"].get<std::string>());
    CHECK(spa::load_graph(s / "a/graph_1.spa").params() == p);
  }

  SUBCASE("replicas get distinct seeds") {
    REQUIRE(spa_run({"generate", "--n", "200", "--replicas", "10", "--seed", "7", "--gzip", "--out",
                     s / "c"})
                .code == 0);
    auto m = nlohmann::json::parse(slurp(s / "c/manifest.json"));
    REQUIRE(m["replicas"].size() == 10);
    for (int i = 0; i < 10; ++i) {
      CHECK(m["replicas"][i]["params"]["seed"] == 7 + i);
      CHECK(fs::exists(s / ("c/graph_" + std::to_string(7 + i) + ".spa.gz")));
    }
  }

  SUBCASE("config file with flag override") {
    std::ofstream(s / "run.cfg") << "n=300\np=0.5\nseed=4\n";
    REQUIRE(spa_run({"generate", "--config", s / "run.cfg", "--seed", "9", "--out", s / "d"}).code == 0);
    auto g = spa::load_graph(s / "d/graph_9.spa");
    CHECK(g.vertex_count() == 300);
    CHECK(g.params().p == 0.5);
  }
}

TEST_CASE("stats on a handcrafted graph") {
  Scratch s("stats");
  std::ofstream(s / "tri.spa") << kTriangle;
  auto r = spa_run({"stats", s / "tri.spa", "--out", s / "out", "--ball-volume", "0.5"});
  REQUIRE(r.code == 0);
  auto curves = lines_of(slurp(s / "out/curves_tri.csv"));
  REQUIRE_FALSE(curves.empty());
  CHECK(curves[0] == "variant,d,count,mean_c");
  // Vertex 1: in-neighbors {2, 3} joined by 3 -> 2. Half split at t = 3 puts both in the old set.
  CHECK(std::find(curves.begin(), curves.end(), "directed,2,1,1") != curves.end());
  CHECK(std::find(curves.begin(), curves.end(), "undirected,2,3,1") != curves.end());
  CHECK(std::find(curves.begin(), curves.end(), "old,2,1,1") != curves.end());
  CHECK(std::find(curves.begin(), curves.end(), "new,2,1,0") != curves.end());
  CHECK(std::find(curves.begin(), curves.end(), "directed_band,2,1,1") != curves.end());

  auto census = lines_of(slurp(s / "out/census_tri.csv"));
  REQUIRE(census.size() == 4);
  CHECK(census[1].starts_with("0,1,"));
  CHECK(census[2].starts_with("1,1,"));
  CHECK(census[3].starts_with("2,1,"));

  auto global = lines_of(slurp(s / "out/global.csv"));
  CHECK(global[1] == "tri,3,3,1,1");
  auto scatter = slurp(s / "out/scatter_tri.csv");
  CHECK(scatter.find("directed,2,1\n") != std::string::npos);
  CHECK(fs::exists(s / "out/exponent.csv"));
  CHECK(fs::exists(s / "out/trajectory.csv"));
  CHECK(fs::exists(s / "out/balls.csv"));
}

TEST_CASE("stats pools replicas") {
  Scratch s("pool");
  REQUIRE(spa_run({"generate", "--n", "800", "--replicas", "2", "--out", s / "g"}).code == 0);
  auto r = spa_run({"stats", s / "g/graph_1.spa", s / "g/graph_2.spa", "--out", s / "out"});
  REQUIRE(r.code == 0);
  for (const char* f : {"curves_graph_1.csv", "curves_graph_2.csv", "curves_pooled.csv",
                        "census_pooled.csv"}) {
    CHECK(fs::exists(s / ("out/" + std::string(f))));
  }
  auto exponent = lines_of(slurp(s / "out/exponent.csv"));
  REQUIRE(exponent.size() == 4);
  CHECK(exponent[3].starts_with("pooled,"));
}

TEST_CASE("stats refuses a split without trajectories") {
  Scratch s("notraj");
  REQUIRE(spa_run({"generate", "--n", "300", "--tracking", "none", "--out", s / "g"}).code == 0);
  auto r = spa_run({"stats", s / "g/graph_1.spa", "--out", s / "out"});
  CHECK(r.code == 1);
  CHECK(r.err.find("trajectories") != std::string::npos);
  CHECK(spa_run({"stats", s / "g/graph_1.spa", "--no-split", "--out", s / "out"}).code == 0);
}

TEST_CASE("sweep") {
  Scratch s("sweep");
  auto r = spa_run({"sweep", "--ps", "0.5,0.7", "--n", "2000", "--replicas", "2", "--out", s / "w"});
  REQUIRE(r.code == 0);
  auto m = nlohmann::json::parse(slurp(s / "w/manifest.json"));
  REQUIRE(m["runs"].size() == 2);
  CHECK(m["runs"][0]["a2"] == 10.0);
  CHECK(m["runs"][0]["seeds"].size() == 2);
  auto lines = lines_of(slurp(s / "w/sweep.csv"));
  CHECK(lines[0] == "p,variant,d,count,mean_c");
  std::set<std::string> keys;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    keys.insert(lines[i].substr(0, lines[i].find(',', lines[i].find(',') + 1)));
  }
  CHECK(keys == std::set<std::string>{"0.5,directed", "0.5,directed_band", "0.5,undirected",
                                      "0.5,undirected_band", "0.7,directed", "0.7,directed_band",
                                      "0.7,undirected", "0.7,undirected_band"});
  CHECK(spa_run({"sweep", "--ps", "1.0", "--n", "100", "--out", s / "x"}).code == 1);
}

TEST_CASE("verify") {
  auto ok = spa_run({"verify", "--n", "1500", "--replicas", "2"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("verify: PASS") != std::string::npos);

  auto bad = spa_run({"verify", "--n", "500", "--fault-step", "20"});
  CHECK(bad.code == 3);
  CHECK(bad.out.find("first divergent step t=20") != std::string::npos);

  CHECK(spa_run({"verify", "--n", "400", "--p", "0"}).code == 0);
  CHECK(spa_run({"verify", "--n", "6000"}).code == 1);
}

TEST_CASE("trajectory and scatter") {
  Scratch s("traj");
  REQUIRE(spa_run({"generate", "--n", "2000", "--out", s / "g"}).code == 0);
  auto r = spa_run({"trajectory", s / "g/graph_1.spa", "--top", "3", "--out", s / "t"});
  REQUIRE(r.code == 0);
  CHECK(lines_of(slurp(s / "t/trajectory.csv")).size() == 4);
  CHECK(lines_of(slurp(s / "t/trajectories.csv"))[0] == "vertex,t,in_degree,expected,ratio");
  CHECK(spa_run({"trajectory", s / "g/graph_1.spa", "--vertex", "99999", "--out", s / "t"}).code == 1);

  REQUIRE(spa_run({"scatter", s / "g/graph_1.spa", "--variant", "directed", "--out", s / "sc"}).code == 0);
  auto lines = lines_of(slurp(s / "sc/scatter.csv"));
  CHECK(lines[0] == "variant,degree,c");
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].starts_with("directed,"));
  CHECK(spa_run({"scatter", s / "g/graph_1.spa", "--variant", "sideways"}).code == 1);
}

TEST_CASE("exit codes of the binary") {
  const char* binary = std::getenv("SPA_BINARY");
  REQUIRE(binary != nullptr);
  Scratch s("exit");
  auto run = [&](const std::string& args) {
    int status = std::system((std::string(binary) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(run("--version") == 0);
  CHECK(run("generate --n 50 --out " + (s / "ok")) == 0);
  CHECK(run("generate --p 0.8 --a1 2 --out " + (s / "x")) == 1);
  CHECK(run("generate --n fifty --out " + (s / "x")) == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("stats " + (s / "missing.spa")) == 2);
  std::ofstream(s / "bad.spa") << "%spa-graph v1\np=oops\n";
  CHECK(run("stats " + (s / "bad.spa") + " --out " + (s / "y")) == 2);
  std::ofstream(s / "blocker") << "file, not a directory";
  CHECK(run("generate --n 50 --out " + (s / "blocker")) == 2);
  CHECK(run("verify --n 300 --fault-step 10") == 3);
}
