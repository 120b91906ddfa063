#include <random>
#include <set>

#include "doctest.h"
#include "noneq/bass_serre.hpp"
#include "test_support.hpp"

using namespace noneq;
using namespace noneq::testing;

namespace {

struct Fixture {
  std::shared_ptr<FreeProductGroup> g = z2_z3();
  BassSerreTree tree{g};
  FPElement a = g->parse("Z2.1");
  FPElement b = g->parse("Z3.1");
  FPElement b2 = g->parse("Z3.2");
  FPElement el(std::string_view text) const { return g->parse(text); }
  FPElement mul(const FPElement& x, const FPElement& y) const { return g->multiply(x, y); }
  FPElement conj(const FPElement& c, const FPElement& x) const { return mul(mul(c, x), g->invert(c)); }
};

// Random cyclically reduced element with syllables in both factors.
FPElement random_cyclically_reduced(std::mt19937& rng, const FreeProductGroup& g, std::size_t max_syl) {
  const std::size_t syl = 2 * (1 + rng() % (max_syl / 2));
  return random_element(rng, g, syl);
}

// Vertices on the axis of a hyperbolic h are those moved by exactly tr(h).
bool on_axis(const BassSerreTree& tree, const FPElement& h, const TreeVertex& x) {
  return tree.distance(x, tree.act(h, x)) == tree.translation_length(h);
}

}  // namespace

TEST_CASE("canonicalize and act examples") {
  Fixture f;
  CHECK(f.tree.canonicalize(FPElement{}, 0) == f.tree.base(0));
  CHECK(f.tree.canonicalize(f.a, 0) == f.tree.base(0));
  CHECK(f.tree.canonicalize(f.mul(f.a, f.b), 1) == TreeVertex{f.a, 1});
  const auto v = f.tree.canonicalize(f.el("Z2.1 Z3.1 Z2.1"), 0);
  CHECK(f.tree.canonicalize(v.rep, v.side) == v);

  CHECK(f.tree.act(FPElement{}, TreeVertex{f.a, 1}) == TreeVertex{f.a, 1});
  CHECK(f.tree.act(f.a, f.tree.base(0)) == f.tree.base(0));
  CHECK(f.tree.act(f.mul(f.a, f.b), f.tree.base(0)) == TreeVertex{f.mul(f.a, f.b), 0});
}

TEST_CASE("distance and geodesic examples") {
  Fixture f;
  const auto g1 = f.tree.base(0);
  const auto g2 = f.tree.base(1);
  CHECK(f.tree.distance(g1, g2) == 1);
  CHECK(f.tree.distance(g1, g1) == 0);
  CHECK(f.tree.distance(g1, f.tree.act(f.mul(f.a, f.b), g1)) == 2);

  // G_1 and bG_1 are both adjacent to G_2; the BFS ball below confirms it.
  const auto bg1 = f.tree.act(f.b, g1);
  CHECK(f.tree.distance(g1, bg1) == 2);
  const TreeBall ball(f.tree, 4);
  CHECK(ball.bfs(0).first[ball.index.at(bg1)] == 2);

  CHECK(f.tree.geodesic(g1, g1) == std::vector<TreeVertex>{g1});
  CHECK(f.tree.geodesic(g1, g2) == std::vector<TreeVertex>{g1, g2});
  CHECK(f.tree.geodesic(g1, bg1) == std::vector<TreeVertex>{g1, g2, bg1});
}

TEST_CASE("classify examples") {
  Fixture f;
  auto c = f.tree.classify(f.a);
  REQUIRE(std::holds_alternative<Elliptic>(c));
  CHECK(std::get<Elliptic>(c).fixed == f.tree.base(0));

  c = f.tree.classify(f.mul(f.a, f.b));
  REQUIRE(std::holds_alternative<Hyperbolic>(c));
  CHECK(std::get<Hyperbolic>(c).translation == 2);

  c = f.tree.classify(f.conj(f.a, f.b));
  REQUIRE(std::holds_alternative<Elliptic>(c));
  CHECK(std::get<Elliptic>(c).fixed == TreeVertex{f.a, 1});

  c = f.tree.classify(FPElement{});
  REQUIRE(std::holds_alternative<Elliptic>(c));
  CHECK_FALSE(std::get<Elliptic>(c).fixed.has_value());
  CHECK_THROWS_AS((void)f.tree.fixed_vertex(FPElement{}), std::invalid_argument);
  CHECK_THROWS_AS((void)f.tree.fixed_vertex(f.mul(f.a, f.b)), std::invalid_argument);
  CHECK_THROWS_AS((void)f.tree.translation_length(f.a), std::invalid_argument);
  CHECK_THROWS_AS((void)f.tree.axis_segment(f.b, 1), std::invalid_argument);
}

TEST_CASE("axis segment examples") {
  Fixture f;
  const FPElement h = f.mul(f.a, f.b);
  const auto seg = f.tree.axis_segment(h, 1);
  CHECK(seg.size() == 5);
  CHECK(std::find(seg.begin(), seg.end(), f.tree.base(0)) != seg.end());
  CHECK(std::find(seg.begin(), seg.end(), f.tree.base(1)) != seg.end());
  for (std::size_t i = 0; i + 1 < seg.size(); ++i) CHECK(f.tree.adjacent(seg[i], seg[i + 1]));

  const FPElement gamma = f.mul(f.a, f.b2);
  const FPElement conjugate = f.conj(gamma, h);
  CHECK(f.g->cyclic_split(conjugate).conjugator == gamma);
  const auto moved = f.tree.axis_segment(conjugate, 1);
  REQUIRE(moved.size() == seg.size());
  for (std::size_t i = 0; i < seg.size(); ++i) CHECK(moved[i] == f.tree.act(gamma, seg[i]));

  const auto wide = f.tree.axis_segment(h, 2);
  CHECK(wide.size() == 9);
  for (std::size_t i = 0; i + 2 < wide.size(); ++i) CHECK(f.tree.act(h, wide[i]) == wide[i + 2]);
}

TEST_CASE("axis overlap examples") {
  Fixture f;
  const FPElement h = f.mul(f.a, f.b);
  for (std::size_t r = 1; r <= 4; ++r) CHECK(f.tree.axis_overlap_edges(h, h, r) == 2 * r * 2);

  // A conjugate by an element far from the axis: its axis misses Ax(h).
  const FPElement gamma = f.el("Z3.1 Z2.1 Z3.1 Z2.1 Z3.1");
  const FPElement far = f.conj(gamma, f.mul(f.a, f.b2));
  CHECK(f.tree.axis_overlap_edges(h, far, 6) == 0);
  const TreeBall ball(f.tree, 8);
  for (const auto& x : ball.vertices) CHECK_FALSE((on_axis(f.tree, h, x) && on_axis(f.tree, far, x)));

  const FPElement near = f.conj(f.b, h);
  const std::size_t overlap = f.tree.axis_overlap_edges(h, near, 4);
  CHECK(overlap < 4);
  CHECK(f.tree.axis_overlap_edges(h, near, 8) == overlap);
  for (std::size_t r = 1; r < 6; ++r) {
    CHECK(f.tree.axis_overlap_edges(h, near, r) <= f.tree.axis_overlap_edges(h, near, r + 1));
  }
}

TEST_CASE("property: distances and geodesics agree with BFS on the radius 6 ball") {
  Fixture f;
  const TreeBall ball(f.tree, 6);
  for (std::size_t s = 0; s < ball.vertices.size(); ++s) {
    const auto [dist, parent] = ball.bfs(s);
    for (std::size_t t = 0; t < ball.vertices.size(); ++t) {
      REQUIRE(f.tree.distance(ball.vertices[s], ball.vertices[t]) == dist[t]);
      std::vector<TreeVertex> path;
      for (std::size_t x = t; x != SIZE_MAX; x = parent[x]) path.push_back(ball.vertices[x]);
      std::reverse(path.begin(), path.end());
      REQUIRE(f.tree.geodesic(ball.vertices[s], ball.vertices[t]) == path);
    }
  }
}

TEST_CASE("property: the action is by isometries") {
  std::mt19937 rng(23);
  for (const auto& g : {z2_z3(), z3_f(2)}) {
    const BassSerreTree tree(g);
    for (int trial = 0; trial < 500; ++trial) {
      const auto h = random_element(rng, *g, rng() % 7);
      const TreeVertex x = tree.canonicalize(random_element(rng, *g, rng() % 6), rng() % 2);
      const TreeVertex y = tree.canonicalize(random_element(rng, *g, rng() % 6), rng() % 2);
      const auto d = tree.distance(x, y);
      CHECK(tree.distance(tree.act(h, x), tree.act(h, y)) == d);
      CHECK(tree.distance(y, x) == d);
      const auto path = tree.geodesic(x, y);
      CHECK(path.size() == d + 1);
      for (std::size_t i = 0; i + 1 < path.size(); ++i) CHECK(tree.adjacent(path[i], path[i + 1]));
    }
  }
}

TEST_CASE("property: translation of cyclically reduced elements") {
  std::mt19937 rng(29);
  for (const auto& g : {z2_z3(), z3_f(2)}) {
    const BassSerreTree tree(g);
    for (int trial = 0; trial < 200; ++trial) {
      const auto u = random_cyclically_reduced(rng, *g, 10);
      REQUIRE(g->cyclic_split(u).conjugator.is_identity());
      for (std::size_t side : {0, 1}) {
        const auto x = tree.base(side);
        CHECK(tree.distance(x, tree.act(u, x)) == u.syl());
        CHECK(tree.distance(x, tree.act(g->power(u, 2), x)) == 2 * u.syl());
      }
      CHECK(tree.translation_length(u) == u.syl());
      CHECK(tree.translation_length(u) % 2 == 0);
    }
  }
}

TEST_CASE("property: products of elliptic elements with distinct fixed points") {
  std::mt19937 rng(31);
  for (const auto& g : {z2_z3(), z3_f(2)}) {
    const BassSerreTree tree(g);
    int samples = 0;
    while (samples < 200) {
      const auto gamma1 = random_element(rng, *g, rng() % 4);
      const auto gamma2 = random_element(rng, *g, rng() % 4);
      const auto x1 = g->multiply(g->multiply(gamma1, random_element(rng, *g, 1)), g->invert(gamma1));
      const auto x2 = g->multiply(g->multiply(gamma2, random_element(rng, *g, 1)), g->invert(gamma2));
      const auto f1 = tree.fixed_vertex(x1);
      const auto f2 = tree.fixed_vertex(x2);
      if (f1 == f2) continue;
      ++samples;
      const auto c = tree.classify(g->multiply(x1, x2));
      REQUIRE(std::holds_alternative<Hyperbolic>(c));
      CHECK(std::get<Hyperbolic>(c).translation == 2 * tree.distance(f1, f2));
      CHECK(tree.act(x1, f1) == f1);
    }
  }
}

TEST_CASE("property: axis windows lie on the axis and overlaps match the displacement oracle") {
  std::mt19937 rng(37);
  Fixture f;
  for (int trial = 0; trial < 150; ++trial) {
    const auto c1 = random_element(rng, *f.g, rng() % 3);
    const auto c2 = random_element(rng, *f.g, rng() % 3);
    const auto u = f.conj(c1, random_cyclically_reduced(rng, *f.g, 4));
    const auto v = f.conj(c2, random_cyclically_reduced(rng, *f.g, 4));
    const auto seg = f.tree.axis_segment(u, 6);
    CHECK(seg.size() == 2 * 6 * f.tree.translation_length(u) + 1);
    for (const auto& x : seg) CHECK(on_axis(f.tree, u, x));
    if (f.g->commutes(u, v)) continue;
    std::size_t shared = 0;
    for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
      if (on_axis(f.tree, v, seg[i]) && on_axis(f.tree, v, seg[i + 1])) ++shared;
    }
    CHECK(f.tree.axis_overlap_edges(u, v, 6) == shared);
  }
}

TEST_CASE("property: long axis overlaps force commuting") {
  std::mt19937 rng(41);
  for (const auto& g : {z2_z3(), z3_f(2)}) {
    const BassSerreTree tree(g);
    int certified = 0;
    int trials = 0;
    while (certified < 100) {
      REQUIRE(++trials < 100000);
      const auto gamma = random_element(rng, *g, rng() % 3);
      const auto base = random_cyclically_reduced(rng, *g, 4);
      // Pairs built from a shared piece: powers of one element commute, the
      // rest mostly do not.
      FPElement x;
      FPElement y;
      switch (rng() % 3) {
        case 0:
          x = g->power(base, 1 + static_cast<int>(rng() % 2));
          y = g->power(base, -1 - static_cast<int>(rng() % 3));
          break;
        case 1:
          x = base;
          y = g->multiply(base, random_cyclically_reduced(rng, *g, 2));
          break;
        default:
          x = g->multiply(base, base);
          y = g->multiply(base, random_cyclically_reduced(rng, *g, 4));
      }
      if (!std::holds_alternative<Hyperbolic>(tree.classify(y))) continue;
      const auto u = g->multiply(g->multiply(gamma, x), g->invert(gamma));
      const auto v = g->multiply(g->multiply(gamma, y), g->invert(gamma));
      const std::size_t need = tree.translation_length(u) + tree.translation_length(v) + 1;
      if (tree.axis_overlap_edges(u, v, 4) < need) continue;
      ++certified;
      CHECK(g->commutes(u, v));
    }
  }
}

TEST_CASE("vertex text round trip") {
  Fixture f;
  const TreeVertex v{f.el("Z2.1 Z3.2"), 0};
  CHECK(f.tree.format_vertex(v) == "Z2.1 Z3.2.G1");
  CHECK(f.tree.parse_vertex("Z2.1 Z3.2.G1") == v);
  CHECK(f.tree.parse_vertex("Z2.1 Z3.2 . G1") == v);
  CHECK(f.tree.parse_vertex("1.G2") == f.tree.base(1));
  CHECK(f.tree.parse_vertex("Z3.1.G1") == f.tree.act(f.b, f.tree.base(0)));
  CHECK(f.tree.parse_vertex("Z3.1.G2") == f.tree.base(1));
  CHECK_THROWS_AS((void)f.tree.parse_vertex("Z3.1.G7"), ParseError);
  CHECK_THROWS_AS((void)f.tree.parse_vertex("Z3.1"), ParseError);
}
