// Cycle bases, D-boundedness, and basis connectivity.
//
// Basis connectivity of an edge set E' is implemented as connectivity of E'
// in the auxiliary edge-incidence graph (nodes = host edges, links = "share a
// basis cycle").  Equivalence with the bipartition definition: a basis cycle
// meeting both sides of a bipartition contains an edge on each side, i.e. an
// auxiliary link crossing it; conversely an auxiliary component with no
// crossing link is a bipartition no basis cycle meets on both sides.  The
// exhaustive-bipartition oracle below is property-tested against this for
// |E'| <= 12.
#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <vector>

#include "hcps/graph.hpp"

namespace hcps {

struct CycleBasis {
  const HostWindow* host = nullptr;
  std::vector<std::vector<int>> cycles;      // canonical sorted edge-id sets, deduplicated
  std::vector<std::vector<int>> per_edge;    // edge id -> indices of cycles containing it
  std::vector<std::vector<int>> per_vertex;  // vertex id -> indices of cycles through it
  std::vector<std::vector<int>> aux;         // auxiliary graph adjacency over edge ids
  int D = 0;                                 // boundedness constant, computed on the window
  int L = 0;                                 // max cycle length

  int n_cycles() const { return static_cast<int>(cycles.size()); }
};

namespace detail {

// Check that `edge_set` is a single cycle: every touched vertex has degree 2,
// the edges are connected, length >= 3 (length >= 4 in a bipartite host).
inline void validate_cycle(const HostWindow& h, const std::vector<int>& edge_set) {
  if (edge_set.size() < 3) throw ConfigError("cycle shorter than 3 edges");
  std::map<int, int> deg;
  for (int e : edge_set) {
    if (e < 0 || e >= h.m()) throw ConfigError("cycle references unknown edge");
    ++deg[h.edges[e].first];
    ++deg[h.edges[e].second];
  }
  for (auto [v, d] : deg)
    if (d != 2) throw ConfigError("cycle vertex " + std::to_string(v) + " has degree " + std::to_string(d));
  // Connectivity walk.
  std::map<int, std::vector<int>> vinc;
  for (int e : edge_set) {
    vinc[h.edges[e].first].push_back(e);
    vinc[h.edges[e].second].push_back(e);
  }
  std::vector<char> used(edge_set.size(), 0);
  std::map<int, int> idx;
  for (size_t i = 0; i < edge_set.size(); ++i) idx[edge_set[i]] = static_cast<int>(i);
  int start = h.edges[edge_set[0]].first, cur = start, prev_edge = -1, steps = 0;
  do {
    int next_edge = -1;
    for (int e : vinc[cur])
      if (e != prev_edge && !used[idx[e]]) {
        next_edge = e;
        break;
      }
    if (next_edge < 0) throw ConfigError("cycle edges do not form a single closed walk");
    used[idx[next_edge]] = 1;
    cur = h.other(next_edge, cur);
    prev_edge = next_edge;
    ++steps;
  } while (cur != start);
  if (steps != static_cast<int>(edge_set.size()))
    throw ConfigError("cycle edges do not form a single closed walk");
}

}  // namespace detail

inline CycleBasis make_basis(const HostWindow& host, std::vector<std::vector<int>> cycles) {
  CycleBasis b;
  b.host = &host;
  for (auto& c : cycles) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    detail::validate_cycle(host, c);
  }
  std::sort(cycles.begin(), cycles.end());
  cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());
  b.cycles = std::move(cycles);

  b.per_edge.assign(host.m(), {});
  b.per_vertex.assign(host.n(), {});
  std::vector<char> seen_v(host.n(), 0);
  for (int c = 0; c < b.n_cycles(); ++c) {
    b.L = std::max(b.L, static_cast<int>(b.cycles[c].size()));
    std::vector<int> vs;
    for (int e : b.cycles[c]) {
      b.per_edge[e].push_back(c);
      for (int v : {host.edges[e].first, host.edges[e].second})
        if (!seen_v[v]) {
          seen_v[v] = 1;
          vs.push_back(v);
          b.per_vertex[v].push_back(c);
        }
    }
    for (int v : vs) seen_v[v] = 0;
  }

  // Auxiliary graph and D.
  b.aux.assign(host.m(), {});
  std::vector<char> mark(host.m(), 0);
  for (int e = 0; e < host.m(); ++e) {
    auto& nbrs = b.aux[e];
    for (int c : b.per_edge[e])
      for (int f : b.cycles[c])
        if (f != e && !mark[f]) {
          mark[f] = 1;
          nbrs.push_back(f);
        }
    for (int f : nbrs) mark[f] = 0;
    std::sort(nbrs.begin(), nbrs.end());
    b.D = std::max(b.D, static_cast<int>(nbrs.size()));
  }
  return b;
}

inline int compute_D(const CycleBasis& b) { return b.D; }

// Auxiliary-graph connectivity of E' (∅ and singletons are connected).
inline bool basis_connected(const std::vector<int>& eset, const CycleBasis& b) {
  if (eset.size() <= 1) return true;
  std::vector<int> es = eset;
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  std::vector<char> in(b.host->m(), 0), seen(b.host->m(), 0);
  for (int e : es) in[e] = 1;
  std::deque<int> q{es[0]};
  seen[es[0]] = 1;
  size_t reached = 1;
  while (!q.empty()) {
    int e = q.front();
    q.pop_front();
    for (int f : b.aux[e])
      if (in[f] && !seen[f]) {
        seen[f] = 1;
        ++reached;
        q.push_back(f);
      }
  }
  return reached == es.size();
}

// Reference implementation straight from the definition: E' is basis
// connected iff every nontrivial bipartition is met on both sides by some
// basis cycle.  Exponential; used as a test oracle for |E'| <= 12.
inline bool basis_connected_bipartition_oracle(const std::vector<int>& eset, const CycleBasis& b) {
  std::vector<int> es = eset;
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  const int k = static_cast<int>(es.size());
  if (k <= 1) return true;
  if (k > 12) throw CapExceeded("bipartition oracle limited to 12 edges");
  for (unsigned mask = 1; mask < (1u << (k - 1)); ++mask) {
    // mask describes the side of edges es[0..k-2]; es[k-1] pinned to side 0.
    bool crossed = false;
    for (const auto& cyc : b.cycles) {
      bool side0 = false, side1 = false;
      for (int e : cyc) {
        auto it = std::lower_bound(es.begin(), es.end(), e);
        if (it == es.end() || *it != e) continue;
        int i = static_cast<int>(it - es.begin());
        bool s = i < k - 1 && ((mask >> i) & 1u);
        (s ? side1 : side0) = true;
      }
      if (side0 && side1) {
        crossed = true;
        break;
      }
    }
    if (!crossed) return false;
  }
  return true;
}

// The "cycle exits Λ" predicate of the boundary-condition set: the cycle has
// vertices both inside and outside Λ (equivalently, an edge in ∂Λ).
inline bool cycle_exits(const std::vector<int>& cycle, const Patch& p) {
  const HostWindow& h = *p.host;
  bool inside = false, outside = false;
  for (int e : cycle) {
    for (int v : {h.edges[e].first, h.edges[e].second}) {
      (p.contains(v) ? inside : outside) = true;
    }
    if (inside && outside) return true;
  }
  return false;
}

// All cycles of length <= L in the window: the automorphism-invariant
// completion of any basis of max length L.
inline CycleBasis invariant_completion(const CycleBasis& b, long long budget = 5'000'000) {
  const HostWindow& h = *b.host;
  const int L = b.L;
  if (L == 0) return make_basis(h, {});  // empty basis stays empty
  std::vector<std::vector<int>> found;
  long long work = 0;
  // Enumerate simple cycles with a canonical representation: smallest vertex
  // first, second vertex smaller than last (fixes orientation).
  std::vector<int> path;          // vertices
  std::vector<char> on_path(h.n(), 0);
  auto dfs = [&](auto&& self, int start, int cur) -> void {
    if (++work > budget) throw CapExceeded("invariant_completion: cycle enumeration budget exhausted");
    for (int x : h.adj[cur]) {
      if (x == start && static_cast<int>(path.size()) >= 3) {
        if (path[1] < path.back()) {
          std::vector<int> ce;
          for (size_t i = 0; i + 1 < path.size(); ++i) ce.push_back(h.edge_id(path[i], path[i + 1]));
          ce.push_back(h.edge_id(path.back(), start));
          std::sort(ce.begin(), ce.end());
          found.push_back(std::move(ce));
        }
        continue;
      }
      if (x <= start || on_path[x]) continue;
      if (static_cast<int>(path.size()) == L) continue;
      path.push_back(x);
      on_path[x] = 1;
      self(self, start, x);
      on_path[x] = 0;
      path.pop_back();
    }
  };
  for (int s = 0; s < h.n(); ++s) {
    path = {s};
    on_path[s] = 1;
    dfs(dfs, s, s);
    on_path[s] = 0;
  }
  return make_basis(h, std::move(found));
}

// GF(2) rank of basis cycles lying entirely within E(Λ) against the cycle
// space dimension |E(Λ)| - |V(Λ)| + (number of components of Λ).
inline bool validate_spans(const CycleBasis& b, const Patch& p) {
  const HostWindow& h = *p.host;
  // Map patch edges to dense columns.
  std::vector<int> col(h.m(), -1);
  for (size_t i = 0; i < p.edges.size(); ++i) col[p.edges[i]] = static_cast<int>(i);
  const int ncols = static_cast<int>(p.edges.size());
  const int words = (ncols + 63) / 64;

  std::vector<std::vector<unsigned long long>> rows;
  for (const auto& cyc : b.cycles) {
    bool inside = true;
    for (int e : cyc)
      if (col[e] < 0) {
        inside = false;
        break;
      }
    if (!inside) continue;
    std::vector<unsigned long long> r(words, 0);
    for (int e : cyc) r[col[e] / 64] |= 1ull << (col[e] % 64);
    rows.push_back(std::move(r));
  }
  // Gaussian elimination over GF(2).
  int rank = 0;
  for (int c = 0; c < ncols && rank < static_cast<int>(rows.size()); ++c) {
    int w = c / 64;
    unsigned long long bit = 1ull << (c % 64);
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][w] & bit) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (r != rank && (rows[r][w] & bit))
        for (int i = 0; i < words; ++i) rows[r][i] ^= rows[rank][i];
    ++rank;
  }

  // Number of components of the patch.
  int comps = 0;
  std::vector<char> seen(h.n(), 0);
  for (int v : p.verts)
    if (!seen[v]) {
      ++comps;
      std::deque<int> q{v};
      seen[v] = 1;
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int x : h.adj[u])
          if (p.contains(x) && !seen[x]) {
            seen[x] = 1;
            q.push_back(x);
          }
      }
    }
  long long dim = static_cast<long long>(p.edges.size()) - p.size() + comps;
  return rank == dim;
}

}  // namespace hcps
