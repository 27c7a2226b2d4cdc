#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "doctest.h"
#include "spa/config.hpp"
#include "spa/error.hpp"
#include "spa/generator.hpp"
#include "spa/graph_io.hpp"

using namespace spa;
namespace fs = std::filesystem;

namespace {

ModelParams small(std::uint64_t n, std::uint64_t seed = 1) {
  ModelParams p;
  p.n = n;
  p.seed = seed;
  return p;
}

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / ("spa-io-test-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::size_t offset_of(std::string_view text) {
  try {
    parse_graph(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return std::string::npos;
}

const char* kTiny =
    "%spa-graph v1\n"
    "p=0.5\n"
    "a1=1\n"
    "a2=2\n"
    "dimension=1\n"
    "norm=linf\n"
    "n=3\n"
    "seed=9\n"
    "%edges\n"
    "2\t1\n"
    "3\t1\n"
    "3\t2\n"
    "%positions\n"
    "1\t0.25\n"
    "2\t0.5\n"
    "3\t0.125\n";

}  // namespace

TEST_CASE("handwritten graph parses") {
  auto g = parse_graph(kTiny);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.params().p == 0.5);
  CHECK(g.params().seed == 9);
  CHECK(g.params().norm == Norm::Linf);
  CHECK(g.position(3)[0] == 0.125);
  CHECK(g.in_degree(1) == 2);
  CHECK(serialize_graph(g) == kTiny);
}

TEST_CASE("serialization round-trips byte for byte") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto params = small(400 + 50 * seed, seed);
    params.dimension = static_cast<int>(seed % 3) + 1;
    params.norm = seed % 2 ? Norm::L2 : Norm::Linf;
    params.p = 0.3 + 0.1 * static_cast<double>(seed);
    params.a2 = 1.0 / 3.0;
    auto g = generate(params, seed % 2 ? TrackPolicy::all() : TrackPolicy::top(5));
    auto text = serialize_graph(g);
    auto back = parse_graph(text);
    CHECK(back == g);
    CHECK(serialize_graph(back) == text);
  }

  SUBCASE("without positions or trajectories") {
    auto g = generate(small(100), TrackPolicy::none());
    std::vector<std::uint64_t> offsets{0};
    std::vector<VertexId> targets;
    for (VertexId v = 0; v <= g.vertex_count(); ++v) {
      if (v > 0)
        for (VertexId u : g.out_neighbors(v)) targets.push_back(u);
      offsets.push_back(targets.size());
    }
    GrownGraph stripped(g.params(), {}, offsets, targets);
    auto text = serialize_graph(stripped);
    CHECK(text.find("%positions") == std::string::npos);
    CHECK(serialize_graph(parse_graph(text)) == text);
  }
}

TEST_CASE("stream writer matches string serialization") {
  auto g = generate(small(200));
  std::ostringstream out;
  write_graph(out, g);
  CHECK(out.str() == serialize_graph(g));
}

TEST_CASE("real formatting is shortest round-trip") {
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(30.0 / 7.0) == "4.285714285714286");
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    double x = unif(gen);
    CHECK(std::stod(format_real(x)) == x);
  }
}

TEST_CASE("parse errors carry byte offsets") {
  const std::string good = kTiny;
  const auto edges_at = good.find("%edges\n") + 7;

  CHECK(offset_of("") == 0);
  CHECK(offset_of("%spa-graph v2\n") == 0);

  std::string bad_key = good;
  bad_key.replace(good.find("a1=1"), 4, "zz=1");
  CHECK(offset_of(bad_key) == good.find("a1=1"));

  std::string bad_value = good;
  bad_value.replace(good.find("p=0.5"), 5, "p=abc");
  CHECK(offset_of(bad_value) == good.find("p=0.5"));

  std::string backwards = good;
  backwards.replace(edges_at, 4, "1\t2\n");
  CHECK(offset_of(backwards) == edges_at);

  std::string out_of_order = good;
  out_of_order.replace(edges_at, 8, "3\t1\n2\t1\n");
  CHECK(offset_of(out_of_order) == edges_at + 4);

  std::string outside = good;
  outside.replace(good.find("2\t0.5"), 5, "2\t1.5");
  CHECK(offset_of(outside) == good.find("2\t0.5"));

  std::string truncated = good.substr(0, good.find("3\t0.125"));
  CHECK(offset_of(truncated) == truncated.size());

  std::string trailing = good + "%mystery\n";
  CHECK(offset_of(trailing) == good.size());

  std::string bad_domain = good;
  bad_domain.replace(good.find("a1=1"), 4, "a1=3");
  CHECK_THROWS_AS(parse_graph(bad_domain), ParseError);
}

TEST_CASE("trajectory section validation") {
  std::string good = std::string(kTiny) + "%trajectories\n1\t1\t0\n1\t2\t1\n1\t3\t2\n";
  auto g = parse_graph(good);
  CHECK(g.has_trajectory(1));
  CHECK_FALSE(g.has_trajectory(2));
  CHECK(g.trajectory(1).back() == TrajectorySample{3, 2});

  std::string decreasing = std::string(kTiny) + "%trajectories\n1\t2\t1\n1\t1\t0\n";
  CHECK_THROWS_AS(parse_graph(decreasing), ParseError);
  std::string early = std::string(kTiny) + "%trajectories\n2\t1\t0\n";
  CHECK_THROWS_AS(parse_graph(early), ParseError);
}

TEST_CASE("files, plain and gzip") {
  auto dir = scratch_dir();
  auto g = generate(small(1500, 4));
  for (const char* name : {"g.spa", "g.spa.gz"}) {
    auto path = dir / name;
    save_graph(path, g);
    CHECK(load_graph(path) == g);
  }
  CHECK(fs::file_size(dir / "g.spa.gz") < fs::file_size(dir / "g.spa"));

  std::ifstream plain(dir / "g.spa", std::ios::binary);
  std::string contents((std::istreambuf_iterator<char>(plain)), {});
  CHECK(contents == serialize_graph(g));

  CHECK_THROWS_AS(load_graph(dir / "missing.spa"), IoError);
  {
    std::ofstream junk(dir / "junk.gz", std::ios::binary);
    junk << "\x1f\x8b not really gzip";
  }
  CHECK_THROWS(load_graph(dir / "junk.gz"));
  CHECK_THROWS_AS(save_graph(dir / "no" / "such" / "dir.spa", g), IoError);

  for (const auto& entry : fs::directory_iterator(dir)) {
    CHECK(entry.path().filename().string().find(".tmp") == std::string::npos);
  }
  fs::remove_all(dir);
}

TEST_CASE("config parsing") {
  auto cfg = parse_config(
      "# sweep setup\n"
      "p = 0.6\n"
      "a2=2.5\n"
      "norm=l2\n"
      "dimension=3\n"
      "replicas=3\n"
      "seeds=5,9,11\n"
      "tracking=top:20\n"
      "split=log\n"
      "omega=1.5\n"
      "delta=0.2\n"
      "output_dir=out/run1\n");
  CHECK(cfg.model.p == 0.6);
  CHECK(cfg.model.a2 == 2.5);
  CHECK(cfg.model.norm == Norm::L2);
  CHECK(cfg.model.dimension == 3);
  CHECK(cfg.replica_seeds() == std::vector<std::uint64_t>{5, 9, 11});
  CHECK(cfg.tracking.kind == TrackPolicy::Kind::TopK);
  CHECK(cfg.tracking.k == 20);
  CHECK(cfg.split.mode == SplitPolicy::Mode::ThresholdLog);
  CHECK(cfg.split.omega == 1.5);
  CHECK(cfg.delta == 0.2);
  CHECK(cfg.output_dir == "out/run1");
  CHECK_NOTHROW(cfg.validate());

  SUBCASE("format round-trips") {
    auto text = format_config(cfg);
    CHECK(format_config(parse_config(text)) == text);
  }

  SUBCASE("default seeds count up") {
    RunConfig base;
    base.model.seed = 40;
    base.replicas = 3;
    CHECK(base.replica_seeds() == std::vector<std::uint64_t>{40, 41, 42});
  }

  SUBCASE("errors") {
    std::string text = "p=0.5\nbogus=1\n";
    try {
      parse_config(text);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 6);
    }
    CHECK_THROWS_AS(parse_config("p\n"), ParseError);
    CHECK_THROWS_AS(parse_config("n=ten\n"), ParseError);

    RunConfig dup = cfg;
    dup.seeds = {1, 1, 2};
    CHECK_THROWS_AS(dup.validate(), UsageError);
    RunConfig wide = cfg;
    wide.delta = 0.7;
    CHECK_THROWS_AS(wide.validate(), UsageError);
    CHECK_THROWS_AS(load_config("/nonexistent/spa.cfg"), IoError);
  }
}
