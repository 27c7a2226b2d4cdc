#include "doctest.h"
#include "spa/error.hpp"
#include "spa/generator.hpp"
#include "spa/graph_io.hpp"
#include "spa/reference.hpp"

using namespace spa;

namespace {

ModelParams defaults(std::uint64_t n, std::uint64_t seed = 1) {
  ModelParams p;
  p.n = n;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("sphere volume") {
  ModelParams p;
  p.a1 = 1.0;
  p.a2 = 1.0;
  CHECK(sphere_volume(4, 10, p) == 0.5);
  CHECK(sphere_volume(100, 50, p) == 1.0);
  CHECK(sphere_volume(0, 1000, p) == doctest::Approx(0.001).epsilon(1e-15));
  CHECK_THROWS_AS(sphere_volume(0, 0, p), UsageError);
}

TEST_CASE("parameter domain") {
  ModelParams p;
  p.p = 0.5;
  p.a1 = 2.0;
  CHECK_THROWS_WITH_AS(p.validate(), "p*A1 must be < 1", DomainError);
  p.a1 = 1.0;
  p.a2 = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.a2 = 1.0;
  p.p = 1.2;
  CHECK_THROWS_AS(p.validate(), DomainError);
  CHECK(a2_for_mean_degree(0.5) == 10.0);
  CHECK(a2_for_mean_degree(0.7) == doctest::Approx(30.0 / 7.0));
}

TEST_CASE("first step adds one isolated vertex and consumes no coins") {
  SpaProcess proc(defaults(10));
  proc.step();
  CHECK(proc.time() == 1);
  CHECK(proc.last_candidates().empty());
  const auto g = generate(defaults(1));
  CHECK(g.vertex_count() == 1);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("p = 0 never links") {
  auto p = defaults(3000);
  p.p = 0.0;
  const auto g = generate(p);
  CHECK(g.edge_count() == 0);
  CHECK(generate_naive(p).edge_count() == 0);
}

TEST_CASE("p = 1 links v2 to v1 when inside its sphere") {
  ModelParams p;
  p.p = 1.0;
  p.a1 = 0.5;
  p.a2 = 1.0;  // |S(v1,1)| = 1: v2 is always inside
  p.n = 2;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    p.seed = seed;
    const auto g = generate(p);
    REQUIRE(g.out_neighbors(2).size() == 1);
    REQUIRE(g.out_neighbors(2)[0] == 1);
  }
}

TEST_CASE("step-by-step process matches generate") {
  const auto p = defaults(500, 9);
  SpaProcess proc(p);
  while (!proc.done()) proc.step();
  CHECK_THROWS_AS(proc.step(), UsageError);
  CHECK(proc.finish() == generate(p));
}

TEST_CASE("indexed and naive generators are bit-identical") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    auto p = defaults(2000, seed);
    const auto a = generate(p);
    const auto b = generate_naive(p);
    CHECK_FALSE(reference::first_divergent_step(a, b).has_value());
    CHECK(serialize_graph(a) == serialize_graph(b));
  }
  // L2, a different dimension and heavier linking.
  ModelParams q;
  q.p = 0.9;
  q.a1 = 1.0;
  q.a2 = 2.0;
  q.dimension = 3;
  q.norm = Norm::L2;
  q.n = 1500;
  q.seed = 17;
  CHECK(generate(q) == generate_naive(q));
  q.dimension = 1;
  q.norm = Norm::Linf;
  CHECK(generate(q) == generate_naive(q));
}

TEST_CASE("naive guard") {
  CHECK_THROWS_AS(generate_naive(defaults(20000)), UsageError);
  CHECK_NOTHROW(generate_naive(defaults(50), TrackPolicy::none(), true, 10));
  CHECK_THROWS_AS(generate_naive(defaults(50), TrackPolicy::none(), false, 10), UsageError);
}

TEST_CASE("seed change moves positions") {
  const auto a = generate(defaults(100, 1), TrackPolicy::none());
  const auto b = generate(defaults(100, 2), TrackPolicy::none());
  CHECK(a.position(1)[0] != b.position(1)[0]);
}

TEST_CASE("determinism: identical params give byte-identical serializations") {
  const auto p = defaults(3000, 77);
  CHECK(serialize_graph(generate(p)) == serialize_graph(generate(p)));
}

TEST_CASE("structural invariants on generated graphs") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto g = generate(defaults(5000, seed), TrackPolicy::none());
    CHECK(check_invariants(g).empty());
    std::uint64_t in_sum = 0;
    for (VertexId v = 1; v <= g.vertex_count(); ++v) {
      for (VertexId u : g.out_neighbors(v)) REQUIRE(u < v);
      in_sum += g.in_degree(v);
    }
    CHECK(in_sum == g.edge_count());
  }
}

TEST_CASE("out-degree freeze: a prefix run reproduces every earlier out-edge list") {
  const auto full = generate(defaults(4000, 5), TrackPolicy::none());
  for (std::uint64_t t : {1ull, 10ull, 777ull, 2500ull}) {
    const auto prefix = generate(defaults(t, 5), TrackPolicy::none());
    for (VertexId v = 1; v <= t; ++v) {
      const auto a = prefix.out_neighbors(v), b = full.out_neighbors(v);
      REQUIRE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
      REQUIRE(prefix.position(v)[0] == full.position(v)[0]);
    }
    // In-degrees are non-decreasing in t.
    for (VertexId v = 1; v <= t; ++v) REQUIRE(prefix.in_degree(v) <= full.in_degree(v));
    for (VertexId v = 1; v <= t; ++v) REQUIRE(prefix.in_degree(v) == full.in_degree_at(v, t));
  }
}

TEST_CASE("injected index fault is detected at its step") {
  const auto p = defaults(800, 3);
  const auto clean = generate_naive(p);
  SpaProcess faulty(p);
  // Pick a step that certainly has candidates: early steps see whole-torus spheres.
  faulty.inject_fault_at(20);
  const auto broken = faulty.finish();
  const auto t = reference::first_divergent_step(clean, broken);
  REQUIRE(t.has_value());
  CHECK(*t == 20);
}

TEST_CASE("trajectories") {
  const auto g = generate(defaults(3000, 4));
  CHECK(g.tracked_count() == 3000);
  const auto& traj = g.trajectory(1);
  CHECK(traj.front().t == 1);
  CHECK(traj.front().in_degree == 0);
  CHECK(traj.back().t == 3000);
  CHECK(traj.back().in_degree == g.in_degree(1));
  for (std::size_t i = 1; i < traj.size(); ++i) {
    REQUIRE(traj[i].t > traj[i - 1].t);
    REQUIRE(traj[i].in_degree >= traj[i - 1].in_degree);
    REQUIRE(traj[i].in_degree == g.in_degree_at(1, traj[i].t));
  }
  // Every arrival is sampled.
  for (VertexId s : g.in_neighbors(1)) {
    REQUIRE(std::any_of(traj.begin(), traj.end(), [&](const auto& x) { return x.t == s; }));
  }

  const auto top = generate(defaults(3000, 4), TrackPolicy::top(5));
  CHECK(top.tracked_count() == 5);
  for (VertexId v : top.top_by_in_degree(5)) CHECK(top.has_trajectory(v));
  const auto none = generate(defaults(100, 4), TrackPolicy::none());
  CHECK(none.tracked_count() == 0);
  CHECK_THROWS_AS(none.trajectory(1), UsageError);
}

TEST_CASE("track policy parsing") {
  CHECK(TrackPolicy::parse("top:20").k == 20);
  CHECK(TrackPolicy::parse("all").kind == TrackPolicy::Kind::All);
  CHECK(TrackPolicy::parse("none").to_string() == "none");
  CHECK_THROWS_AS(TrackPolicy::parse("top:"), UsageError);
  CHECK_THROWS_AS(TrackPolicy::parse("some"), UsageError);
}
