#include <doctest.h>

#include <set>

#include "hcps/cycle_space.hpp"
#include "hcps/lattice.hpp"

using namespace hcps;

namespace {

// Interior (non-frame) vertices as a patch.
Patch interior(const HostWindow& w) {
  std::vector<int> vs;
  for (int v = 0; v < w.n(); ++v)
    if (!w.is_frame(v)) vs.push_back(v);
  return make_patch(w, vs);
}

}  // namespace

TEST_SUITE("lattice_gallery") {

TEST_CASE("grid_zd(2): vertex transitive, unit-square basis") {
  auto g = generate({Family::grid_zd, 2, 10, 0, 0, 4});
  CHECK(g.sym.kind == SymmetryKind::vertex_transitive);
  CHECK(g.window.max_degree == 4);
  for (const auto& c : g.basis.cycles) CHECK(c.size() == 4);
  CHECK(g.basis.n_cycles() == 17 * 17);
}

TEST_CASE("dice: degrees (3,6), parity transitive, rhombus basis") {
  auto g = generate({Family::dice, 2, 6, 0, 0, 3});
  CHECK(g.sym.kind == SymmetryKind::parity_transitive);
  CHECK(g.sym.deg_e == 3);
  CHECK(g.sym.deg_o == 6);
  int max_even = 0, max_odd = 0;
  for (int v = 0; v < g.window.n(); ++v) {
    int d = static_cast<int>(g.window.adj[v].size());
    (g.window.parity[v] == Parity::even ? max_even : max_odd) = std::max(
        g.window.parity[v] == Parity::even ? max_even : max_odd, d);
  }
  CHECK(max_even == 3);
  CHECK(max_odd == 6);
  for (const auto& c : g.basis.cycles) CHECK(c.size() == 4);
}

TEST_CASE("slab_zd2(2): vertical matching is a matched automorphism") {
  auto g = generate({Family::slab_zd2, 2, 8, 0, 0, 3});
  CHECK(g.sym.kind == SymmetryKind::matched_automorphic);
  const auto& pi = g.sym.matching;
  REQUIRE(static_cast<int>(pi.size()) == g.window.n());
  std::set<int> covered;
  for (int v = 0; v < g.window.n(); ++v) {
    CHECK(pi[pi[v]] == v);
    CHECK(g.window.parity[v] != g.window.parity[pi[v]]);
    CHECK(g.window.edge_id(v, pi[v]) >= 0);  // matched pairs are edges
    covered.insert(v);
  }
  CHECK(static_cast<int>(covered.size()) == g.window.n());
  // π maps edges to edges.
  for (auto [u, v] : g.window.edges) CHECK(g.window.edge_id(pi[u], pi[v]) >= 0);
}

TEST_CASE("cylinder: even width matched automorphic, odd width rejected") {
  auto g = generate({Family::cylinder, 2, 0, 4, 8, 3});
  CHECK(g.sym.kind == SymmetryKind::matched_automorphic);
  const auto& pi = g.sym.matching;
  for (int v = 0; v < g.window.n(); ++v) {
    CHECK(g.window.parity[v] != g.window.parity[pi[v]]);
    CHECK(g.window.edge_id(v, pi[v]) >= 0);
  }
  CHECK_THROWS_AS(generate({Family::cylinder, 2, 0, 5, 8, 3}), NonBipartite);
}

TEST_CASE("decorated_zd2: negative control with kind none") {
  auto g = generate({Family::decorated_zd2, 2, 6, 0, 0, 3});
  CHECK(g.sym.kind == SymmetryKind::none);
  // Every grid vertex carries exactly two opposite-parity leaves.
  int leaves = 0;
  for (int v = 0; v < g.window.n(); ++v)
    if (g.window.adj[v].size() == 1) {
      ++leaves;
      int parent = g.window.adj[v][0];
      CHECK(g.window.parity[v] != g.window.parity[parent]);
    }
  CHECK(leaves * 3 == g.window.n() * 2);
}

TEST_CASE("every generated basis spans the window interior") {
  std::vector<HostSpec> specs = {
      {Family::grid_zd, 2, 6, 0, 0, 3},    {Family::grid_zd, 3, 2, 0, 0, 2},
      {Family::dice, 2, 5, 0, 0, 3},       {Family::cylinder, 2, 0, 4, 6, 3},
      {Family::cylinder, 2, 0, 6, 5, 3},   {Family::slab_zd2, 2, 5, 0, 0, 3},
      {Family::decorated_zd2, 2, 5, 0, 0, 3},
  };
  for (const auto& s : specs) {
    auto g = generate(s);
    CAPTURE(static_cast<int>(s.family));
    CHECK(validate_spans(g.basis, interior(g.window)));
  }
}

TEST_CASE("frame layers are connected and windows validate") {
  for (auto s : {HostSpec{Family::dice, 2, 4, 0, 0, 2}, HostSpec{Family::slab_zd2, 3, 3, 0, 0, 2}}) {
    auto g = generate(s);  // make_window throws if frame disconnected
    CHECK(g.window.n() > 0);
  }
}

TEST_CASE("center candidates are deep interior vertices, even first") {
  auto g = generate({Family::grid_zd, 2, 6, 0, 0, 4});
  REQUIRE(!g.center_candidates.empty());
  int v0 = g.center_candidates.front();
  CHECK(g.window.parity[v0] == Parity::even);
  for (int v : g.center_candidates) CHECK(g.window.dist_frame[v] >= 4);
}

TEST_CASE("unknown family name rejected") {
  CHECK_THROWS_AS(parse_family("moebius"), UnsupportedFamily);
  CHECK(parse_family("slab_zd2") == Family::slab_zd2);
}

}  // TEST_SUITE
