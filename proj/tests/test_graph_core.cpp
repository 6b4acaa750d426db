#include <doctest.h>

#include <set>

#include "hcps/graph.hpp"
#include "hcps/lattice.hpp"

using namespace hcps;

namespace {

// 10x10 Z^2 window: requested side 2 plus frame_depth 4 margin on each side.
Generated z2_10() { return generate({Family::grid_zd, 2, 2, 0, 0, 4}); }

int grid_vertex(const Generated& g, int i, int j) {
  // Relies on the generator's row-major layout; sanity-checked in tests below.
  (void)g;
  return i * 10 + j;
}

}  // namespace

TEST_SUITE("graph_core") {

TEST_CASE("z2 window: 100 vertices, max degree 4, outermost frame") {
  auto g = z2_10();
  CHECK(g.window.n() == 100);
  CHECK(g.window.m() == 2 * 10 * 9);
  CHECK(g.window.max_degree == 4);
  int frame_count = 0;
  for (int v = 0; v < g.window.n(); ++v) frame_count += g.window.is_frame(v);
  CHECK(frame_count == 4 * 10 - 4);
  // Row-major layout assumption used by the helpers in this file.
  CHECK(g.window.edge_id(grid_vertex(g, 4, 4), grid_vertex(g, 4, 5)) >= 0);
  CHECK(g.window.edge_id(grid_vertex(g, 4, 4), grid_vertex(g, 5, 4)) >= 0);
  CHECK(g.window.edge_id(grid_vertex(g, 4, 4), grid_vertex(g, 5, 5)) == -1);
}

TEST_CASE("single-edge window with both endpoints frame is valid") {
  auto w = make_window({Parity::even, Parity::odd}, {1, 1}, {{0, 1}});
  CHECK(w.n() == 2);
  CHECK(w.max_degree == 1);
}

TEST_CASE("triangle input rejected as NonBipartite") {
  CHECK_THROWS_AS(make_window({Parity::even, Parity::odd, Parity::even}, {1, 1, 1}, {{0, 1}, {1, 2}, {0, 2}}),
                  NonBipartite);
}

TEST_CASE("parity classes partition V and every edge crosses") {
  auto g = generate({Family::dice, 2, 3, 0, 0, 2});
  for (auto [u, v] : g.window.edges) CHECK(g.window.parity[u] != g.window.parity[v]);
}

TEST_CASE("boundary_edges: single vertex, 2x2 square, empty patch") {
  auto g = z2_10();
  auto p1 = make_patch(g.window, {grid_vertex(g, 5, 5)});
  CHECK(boundary_edges(p1).size() == 4);

  auto p4 = make_patch(g.window, {grid_vertex(g, 4, 4), grid_vertex(g, 4, 5), grid_vertex(g, 5, 4),
                                  grid_vertex(g, 5, 5)});
  CHECK(p4.edges.size() == 4);
  CHECK(boundary_edges(p4).size() == 8);

  CHECK(boundary_edges(make_patch(g.window, {})).empty());
}

TEST_CASE("exterior_boundary: full boundary when complement connected") {
  auto g = z2_10();
  auto p = make_patch(g.window, {grid_vertex(g, 5, 5)});
  CHECK(exterior_boundary(p) == boundary_edges(p));
}

TEST_CASE("exterior_boundary: 3x3 ring excludes the 4 hole edges") {
  auto g = z2_10();
  std::vector<int> ring;
  for (int i = 4; i <= 6; ++i)
    for (int j = 4; j <= 6; ++j)
      if (i != 5 || j != 5) ring.push_back(grid_vertex(g, i, j));
  auto p = make_patch(g.window, ring);
  auto full = boundary_edges(p), ext = exterior_boundary(p);
  CHECK(full.size() == ext.size() + 4);
  // The excluded edges are exactly those into the hole vertex.
  std::set<int> exts(ext.begin(), ext.end());
  int hole = grid_vertex(g, 5, 5);
  for (int e : full) {
    auto [u, v] = g.window.edges[e];
    bool into_hole = u == hole || v == hole;
    CHECK(exts.count(e) == (into_hole ? 0u : 1u));
  }
}

TEST_CASE("exterior_boundary: patch touching frame rejected") {
  auto g = z2_10();
  CHECK_THROWS_AS(exterior_boundary(make_patch(g.window, {grid_vertex(g, 0, 3)})), WindowTooSmall);
}

TEST_CASE("balls: k=0, z2 k=1, dice degree-3 vertex k=1") {
  auto g = z2_10();
  int c = grid_vertex(g, 5, 5);
  CHECK(ball(g.window, c, 0).verts == std::vector<int>{c});
  auto b1 = ball(g.window, c, 1);
  CHECK(b1.size() == 5);
  CHECK(b1.edges.size() == 4);

  auto d = generate({Family::dice, 2, 4, 0, 0, 3});
  int center = -1;
  for (int v = 0; v < d.window.n(); ++v)
    if (d.window.parity[v] == Parity::even && d.window.dist_frame[v] > 1) {
      center = v;
      break;
    }
  REQUIRE(center >= 0);
  CHECK(d.window.adj[center].size() == 3);
  CHECK(ball(d.window, center, 1).size() == 4);
}

TEST_CASE("ball monotone in k; WindowTooSmall past the frame") {
  auto g = z2_10();
  int c = grid_vertex(g, 5, 5);
  int prev = 0;
  for (int k = 0; k <= 3; ++k) {
    auto b = ball(g.window, c, k);
    CHECK(b.size() > prev);
    prev = b.size();
    if (k > 0)
      for (int v : ball(g.window, c, k - 1).verts) CHECK(b.contains(v));
  }
  CHECK_THROWS_AS(ball(g.window, c, 4), WindowTooSmall);
}

TEST_CASE("isoperimetric profile on z2: 4, 3, 2; cap enforced") {
  auto g = generate({Family::grid_zd, 2, 4, 0, 0, 4});
  CHECK(isoperimetric_profile(g.window, 1) == Rat(4));
  CHECK(isoperimetric_profile(g.window, 2) == Rat(3));
  CHECK(isoperimetric_profile(g.window, 4) == Rat(2));
  CHECK_THROWS_AS(isoperimetric_profile(g.window, 9, 8), CapExceeded);
}

TEST_CASE("every cycle crosses an exterior boundary an even number of times") {
  auto g = z2_10();
  std::vector<Patch> patches;
  patches.push_back(make_patch(g.window, {grid_vertex(g, 5, 5)}));
  patches.push_back(make_patch(g.window, {grid_vertex(g, 4, 4), grid_vertex(g, 4, 5), grid_vertex(g, 5, 5),
                                          grid_vertex(g, 6, 5), grid_vertex(g, 6, 6)}));
  for (const auto& p : patches) {
    auto ext = exterior_boundary(p);
    std::set<int> exts(ext.begin(), ext.end());
    for (const auto& cyc : g.basis.cycles) {
      int crossings = 0;
      for (int e : cyc) crossings += exts.count(e);
      CHECK(crossings % 2 == 0);
    }
  }
}

}  // TEST_SUITE
