#include <doctest.h>

#include <random>
#include <set>

#include "hcps/cycle_space.hpp"
#include "hcps/lattice.hpp"

using namespace hcps;

TEST_SUITE("cycle_space") {

TEST_CASE("compute_D: z2 plaquettes and dice rhombi give 6") {
  CHECK(generate({Family::grid_zd, 2, 6, 0, 0, 3}).basis.D == 6);
  CHECK(generate({Family::dice, 2, 6, 0, 0, 3}).basis.D == 6);
}

TEST_CASE("compute_D: cylinder value stable across window sizes") {
  int d1 = generate({Family::cylinder, 2, 0, 4, 6, 3}).basis.D;
  int d2 = generate({Family::cylinder, 2, 0, 4, 10, 5}).basis.D;
  CHECK(d1 == d2);
}

TEST_CASE("basis_connected: base cases and z2 examples") {
  auto g = generate({Family::grid_zd, 2, 12, 0, 0, 4});
  const auto& w = g.window;
  auto vid = [&](int i, int j) { return i * 20 + j; };

  CHECK(basis_connected({}, g.basis));
  CHECK(basis_connected({w.edge_id(vid(5, 5), vid(5, 6))}, g.basis));
  // Two edges of one plaquette.
  CHECK(basis_connected({w.edge_id(vid(5, 5), vid(5, 6)), w.edge_id(vid(5, 5), vid(6, 5))}, g.basis));
  // Two far-apart edges.
  CHECK_FALSE(basis_connected({w.edge_id(vid(5, 5), vid(5, 6)), w.edge_id(vid(15, 15), vid(15, 16))}, g.basis));
}

TEST_CASE("auxiliary connectivity matches the bipartition definition (|E'| <= 12)") {
  std::mt19937 rng(7);
  for (auto spec : {HostSpec{Family::grid_zd, 2, 5, 0, 0, 2}, HostSpec{Family::dice, 2, 4, 0, 0, 2},
                    HostSpec{Family::cylinder, 2, 0, 4, 5, 2}}) {
    auto g = generate(spec);
    std::uniform_int_distribution<int> esz(2, 7), pick(0, g.window.m() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      std::set<int> es;
      // Mix of scattered edges and local clumps so both verdicts occur.
      int seed = pick(rng);
      es.insert(seed);
      int k = esz(rng);
      while (static_cast<int>(es.size()) < k) {
        if (rng() % 2) {
          es.insert(pick(rng));
        } else {
          int from = *std::next(es.begin(), rng() % es.size());
          const auto& nb = g.basis.aux[from];
          if (!nb.empty()) es.insert(nb[rng() % nb.size()]);
        }
      }
      std::vector<int> ev(es.begin(), es.end());
      CHECK(basis_connected(ev, g.basis) == basis_connected_bipartition_oracle(ev, g.basis));
    }
  }
}

TEST_CASE("basis_connected monotone under adding a co-cycle edge") {
  auto g = generate({Family::grid_zd, 2, 8, 0, 0, 3});
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, g.window.m() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    // Grow a basis-connected set, then extend by an auxiliary neighbor.
    std::vector<int> es{pick(rng)};
    for (int step = 0; step < 5; ++step) {
      const auto& nb = g.basis.aux[es[rng() % es.size()]];
      if (nb.empty()) break;
      es.push_back(nb[rng() % nb.size()]);
      CHECK(basis_connected(es, g.basis));
    }
  }
}

TEST_CASE("exterior boundaries of connected interior sets are basis connected") {
  for (auto spec : {HostSpec{Family::grid_zd, 2, 6, 0, 0, 3}, HostSpec{Family::dice, 2, 5, 0, 0, 3},
                    HostSpec{Family::slab_zd2, 2, 4, 0, 0, 3}}) {
    auto g = generate(spec);
    std::mt19937 rng(3);
    std::vector<int> deep;
    for (int v = 0; v < g.window.n(); ++v)
      if (g.window.dist_frame[v] >= 3) deep.push_back(v);
    REQUIRE(!deep.empty());
    for (int trial = 0; trial < 60; ++trial) {
      // Random connected set grown from a deep root, staying off the frame.
      std::vector<int> set{deep[rng() % deep.size()]};
      std::set<int> in(set.begin(), set.end());
      for (int step = 0; step < 6; ++step) {
        int v = set[rng() % set.size()];
        int u = g.window.adj[v][rng() % g.window.adj[v].size()];
        if (!g.window.is_frame(u)) {
          if (in.insert(u).second) set.push_back(u);
        }
      }
      CHECK(basis_connected(exterior_boundary(make_patch(g.window, set)), g.basis));
    }
  }
}

TEST_CASE("cycle validation rejects malformed input") {
  auto g = generate({Family::grid_zd, 2, 4, 0, 0, 2});
  CHECK_THROWS_AS(make_basis(g.window, {{0, 1}}), ConfigError);           // too short
  CHECK_THROWS_AS(make_basis(g.window, {{0, 1, 2}}), ConfigError);        // not closed
  std::vector<int> two_squares = g.basis.cycles[0];
  for (int e : g.basis.cycles[g.basis.n_cycles() - 1]) two_squares.push_back(e);
  CHECK_THROWS_AS(make_basis(g.window, {two_squares}), ConfigError);      // disconnected union
}

TEST_CASE("invariant_completion: z2 plaquettes are already complete") {
  auto g = generate({Family::grid_zd, 2, 4, 0, 0, 3});
  auto full = invariant_completion(g.basis);
  CHECK(full.cycles == g.basis.cycles);
}

TEST_CASE("invariant_completion: dice rhombi are all 4-cycles") {
  auto g = generate({Family::dice, 2, 4, 0, 0, 2});
  auto full = invariant_completion(g.basis);
  CHECK(full.cycles == g.basis.cycles);
  CHECK(full.D == g.basis.D);
}

TEST_CASE("invariant_completion: acyclic window yields empty basis") {
  // A path on 4 vertices with frame at one end.
  auto w = make_window({Parity::even, Parity::odd, Parity::even, Parity::odd}, {1, 0, 0, 0},
                       {{0, 1}, {1, 2}, {2, 3}});
  auto b = make_basis(w, {});
  CHECK(invariant_completion(b).n_cycles() == 0);
}

TEST_CASE("invariant_completion closed under declared symmetries") {
  auto g = generate({Family::slab_zd2, 2, 4, 0, 0, 2});
  auto full = invariant_completion(g.basis);
  std::set<std::vector<int>> cycset(full.cycles.begin(), full.cycles.end());
  const auto& pi = g.sym.matching;
  for (const auto& cyc : full.cycles) {
    std::vector<int> image;
    for (int e : cyc) {
      auto [u, v] = g.window.edges[e];
      image.push_back(g.window.edge_id(pi[u], pi[v]));
      REQUIRE(image.back() >= 0);
    }
    std::sort(image.begin(), image.end());
    CHECK(cycset.count(image) == 1);
  }
}

TEST_CASE("invariant_completion budget produces CapExceeded") {
  auto g = generate({Family::grid_zd, 2, 8, 0, 0, 3});
  CHECK_THROWS_AS(invariant_completion(g.basis, 10), CapExceeded);
}

TEST_CASE("validate_spans: plaquettes span; removing a square breaks it; trees trivial") {
  auto g = generate({Family::grid_zd, 2, 4, 0, 0, 3});
  std::vector<int> inner;
  for (int v = 0; v < g.window.n(); ++v)
    if (!g.window.is_frame(v)) inner.push_back(v);
  auto p = make_patch(g.window, inner);
  CHECK(validate_spans(g.basis, p));

  // Drop one deep-interior plaquette: rank deficit 1.
  auto cycles = g.basis.cycles;
  int drop = -1;
  for (int c = 0; c < static_cast<int>(cycles.size()); ++c) {
    bool deep = true;
    for (int e : cycles[c])
      for (int v : {g.window.edges[e].first, g.window.edges[e].second})
        if (g.window.dist_frame[v] < 3) deep = false;
    if (deep) {
      drop = c;
      break;
    }
  }
  REQUIRE(drop >= 0);
  cycles.erase(cycles.begin() + drop);
  CHECK_FALSE(validate_spans(make_basis(g.window, cycles), p));

  // Tree patch with empty basis.
  auto w = make_window({Parity::even, Parity::odd, Parity::even}, {1, 0, 0}, {{0, 1}, {1, 2}});
  CHECK(validate_spans(make_basis(w, {}), make_patch(w, {1, 2})));
}

TEST_CASE("cycle_exits: inside vs straddling vs outside") {
  auto g = generate({Family::grid_zd, 2, 6, 0, 0, 3});
  auto vid = [&](int i, int j) { return i * 12 + j; };
  std::vector<int> block;
  for (int i = 4; i <= 7; ++i)
    for (int j = 4; j <= 7; ++j) block.push_back(vid(i, j));
  auto p = make_patch(g.window, block);
  int fully_inside = 0, straddle = 0, outside = 0;
  for (const auto& cyc : g.basis.cycles) {
    bool in = false, out = false;
    for (int e : cyc)
      for (int v : {g.window.edges[e].first, g.window.edges[e].second}) (p.contains(v) ? in : out) = true;
    if (in && out) {
      ++straddle;
      CHECK(cycle_exits(cyc, p));
    } else if (in) {
      ++fully_inside;
      CHECK_FALSE(cycle_exits(cyc, p));
    } else {
      ++outside;
      CHECK_FALSE(cycle_exits(cyc, p));
    }
  }
  CHECK(fully_inside == 9);
  CHECK(straddle > 0);
  CHECK(outside > 0);
}

}  // TEST_SUITE
