// Finite windows of infinite one-ended bipartite host graphs.
//
// "Infinity" is modeled by a distinguished frame layer: every operation that
// the theory phrases in terms of "the infinite component" resolves it as "the
// component meeting the frame" and refuses (WindowTooSmall) when that reading
// is ill-defined.
#pragma once

#include <algorithm>
#include <deque>
#include <utility>
#include <vector>

#include "hcps/errors.hpp"
#include "hcps/numeric.hpp"

namespace hcps {

enum class Parity : unsigned char { even, odd };

inline Parity opposite(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }
inline char parity_char(Parity p) { return p == Parity::even ? 'e' : 'o'; }

struct HostWindow {
  std::vector<Parity> parity;
  std::vector<char> frame;                  // 1 = frame layer ("infinity")
  std::vector<std::pair<int, int>> edges;   // canonical (min,max), lexicographically sorted
  std::vector<std::vector<int>> adj;        // sorted neighbor lists
  std::vector<std::vector<int>> inc;        // incident edge ids, sorted
  std::vector<int> dist_frame;              // BFS distance to the nearest frame vertex
  int max_degree = 0;
  int deg_even = 0, deg_odd = 0;            // max degree within each parity class

  int n() const { return static_cast<int>(parity.size()); }
  int m() const { return static_cast<int>(edges.size()); }
  bool is_frame(int v) const { return frame[v] != 0; }

  int edge_id(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
    if (it == edges.end() || *it != std::make_pair(u, v)) return -1;
    return static_cast<int>(it - edges.begin());
  }
  // The endpoint of edge e that is not u.
  int other(int e, int u) const { return edges[e].first == u ? edges[e].second : edges[e].first; }
};

inline HostWindow make_window(std::vector<Parity> parity, std::vector<char> frame,
                              std::vector<std::pair<int, int>> edge_list) {
  HostWindow w;
  const int n = static_cast<int>(parity.size());
  if (frame.size() != parity.size()) throw ConfigError("make_window: parity/frame size mismatch");
  w.parity = std::move(parity);
  w.frame = std::move(frame);

  for (auto& [u, v] : edge_list) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw ConfigError("make_window: bad edge endpoint");
    if (u > v) std::swap(u, v);
  }
  std::sort(edge_list.begin(), edge_list.end());
  edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
  w.edges = std::move(edge_list);

  w.adj.assign(n, {});
  w.inc.assign(n, {});
  for (int e = 0; e < w.m(); ++e) {
    auto [u, v] = w.edges[e];
    if (w.parity[u] == w.parity[v])
      throw NonBipartite("edge {" + std::to_string(u) + "," + std::to_string(v) + "} joins same-parity vertices");
    w.adj[u].push_back(v);
    w.adj[v].push_back(u);
    w.inc[u].push_back(e);
    w.inc[v].push_back(e);
  }
  for (int v = 0; v < n; ++v) {
    w.max_degree = std::max(w.max_degree, static_cast<int>(w.adj[v].size()));
    int& d = w.parity[v] == Parity::even ? w.deg_even : w.deg_odd;
    d = std::max(d, static_cast<int>(w.adj[v].size()));
  }

  // Frame validation: nonempty and connected as an induced set.
  std::vector<int> fr;
  for (int v = 0; v < n; ++v)
    if (w.is_frame(v)) fr.push_back(v);
  if (fr.empty()) throw FrameDisconnected("window has no frame vertices");
  {
    std::vector<char> seen(n, 0);
    std::deque<int> q{fr[0]};
    seen[fr[0]] = 1;
    int reached = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int x : w.adj[u])
        if (w.is_frame(x) && !seen[x]) {
          seen[x] = 1;
          ++reached;
          q.push_back(x);
        }
    }
    if (reached != static_cast<int>(fr.size()))
      throw FrameDisconnected("frame is not a single connected layer");
  }

  // Multi-source BFS from the frame.
  w.dist_frame.assign(n, -1);
  std::deque<int> q;
  for (int v : fr) {
    w.dist_frame[v] = 0;
    q.push_back(v);
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int x : w.adj[u])
      if (w.dist_frame[x] < 0) {
        w.dist_frame[x] = w.dist_frame[u] + 1;
        q.push_back(x);
      }
  }
  for (int v = 0; v < n; ++v)
    if (w.dist_frame[v] < 0) throw FrameDisconnected("vertex " + std::to_string(v) + " unreachable from frame");
  return w;
}

// An induced subgraph Λ of the window interior.
struct Patch {
  const HostWindow* host = nullptr;
  std::vector<int> verts;      // sorted
  std::vector<char> mask;      // indexed by host vertex
  std::vector<int> edges;      // induced edge ids, sorted

  bool contains(int v) const { return mask[v] != 0; }
  bool empty() const { return verts.empty(); }
  int size() const { return static_cast<int>(verts.size()); }
};

inline Patch make_patch(const HostWindow& host, std::vector<int> verts) {
  Patch p;
  p.host = &host;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  p.mask.assign(host.n(), 0);
  for (int v : verts) {
    if (v < 0 || v >= host.n()) throw ConfigError("make_patch: vertex out of range");
    p.mask[v] = 1;
  }
  p.verts = std::move(verts);
  for (int v : p.verts)
    for (int e : host.inc[v]) {
      int u = host.other(e, v);
      if (u > v && p.mask[u]) p.edges.push_back(e);
    }
  std::sort(p.edges.begin(), p.edges.end());
  return p;
}

// ∂Λ: edges of the host with exactly one endpoint in Λ.
inline std::vector<int> boundary_edges(const Patch& p) {
  std::vector<int> out;
  const HostWindow& h = *p.host;
  for (int v : p.verts)
    for (int e : h.inc[v])
      if (!p.contains(h.other(e, v))) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

// ∂_ext Λ: boundary edges whose outside endpoint lies in the (unique)
// component of host∖Λ meeting the frame.
inline std::vector<int> exterior_boundary(const Patch& p) {
  const HostWindow& h = *p.host;
  for (int v : p.verts)
    if (h.is_frame(v)) throw WindowTooSmall("exterior_boundary: patch touches the frame");
  // Flood the frame component of host∖Λ.
  std::vector<char> ext(h.n(), 0);
  std::deque<int> q;
  for (int v = 0; v < h.n(); ++v)
    if (h.is_frame(v) && !p.contains(v)) {
      ext[v] = 1;
      q.push_back(v);
    }
  if (q.empty()) throw WindowTooSmall("exterior_boundary: no frame vertex outside patch");
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int x : h.adj[u])
      if (!ext[x] && !p.contains(x)) {
        ext[x] = 1;
        q.push_back(x);
      }
  }
  std::vector<int> out;
  for (int e : boundary_edges(p)) {
    auto [u, v] = h.edges[e];
    int outside = p.contains(u) ? v : u;
    if (ext[outside]) out.push_back(e);
  }
  return out;
}

inline Patch ball(const HostWindow& h, int v, int k) {
  if (v < 0 || v >= h.n()) throw ConfigError("ball: vertex out of range");
  if (h.dist_frame[v] <= k) throw WindowTooSmall("ball of radius " + std::to_string(k) + " touches the frame");
  std::vector<int> dist(h.n(), -1), verts{v};
  dist[v] = 0;
  std::deque<int> q{v};
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    if (dist[u] == k) continue;
    for (int x : h.adj[u])
      if (dist[x] < 0) {
        dist[x] = dist[u] + 1;
        verts.push_back(x);
        q.push_back(x);
      }
  }
  return make_patch(h, std::move(verts));
}

namespace detail {

// Enumerate connected vertex sets of `g` (an adjacency structure over ids
// 0..n-1 restricted by `allowed`) containing `root`, of size <= k, excluding
// any vertex in `banned`. Duplicate-free: the classic scheme where each
// extension candidate, once skipped, stays banned in that subtree.
template <class Adj, class Emit>
void grow_connected(const Adj& adj, int root, int k, std::vector<char>& banned, Emit&& emit) {
  std::vector<int> set{root};
  std::vector<int> cand;  // extension candidates for the current set
  std::vector<char> in_set(banned.size(), 0), in_cand(banned.size(), 0);
  in_set[root] = 1;

  auto rec = [&](auto&& self) -> void {
    emit(set);
    if (static_cast<int>(set.size()) == k) return;
    // Candidates: neighbors of the set, not banned, not already in.
    std::vector<int> local;
    for (int u : set)
      for (int x : adj[u])
        if (!in_set[x] && !banned[x] && !in_cand[x]) {
          in_cand[x] = 1;
          local.push_back(x);
        }
    std::sort(local.begin(), local.end());
    for (int x : local) in_cand[x] = 0;

    std::vector<int> newly_banned;
    for (int x : local) {
      set.push_back(x);
      in_set[x] = 1;
      self(self);
      in_set[x] = 0;
      set.pop_back();
      banned[x] = 1;
      newly_banned.push_back(x);
    }
    for (int x : newly_banned) banned[x] = 0;
  };
  rec(rec);
}

}  // namespace detail

// Φ(t) = min over nonempty connected interior Λ with |Λ| <= t of |∂Λ|/|Λ|.
// Exhaustive over connected subsets; the cap keeps enumeration feasible.
inline Rat isoperimetric_profile(const HostWindow& h, int t, int cap = 8) {
  if (t < 1) throw ConfigError("isoperimetric_profile: t must be >= 1");
  if (t > cap) throw CapExceeded("isoperimetric_profile: t=" + std::to_string(t) + " exceeds cap " + std::to_string(cap));
  Rat best(-1);
  std::vector<char> banned(h.n(), 0);
  std::vector<char> in_set(h.n(), 0);
  for (int v = 0; v < h.n(); ++v)
    if (h.is_frame(v)) banned[v] = 1;  // interior subsets only
  for (int root = 0; root < h.n(); ++root) {
    if (h.is_frame(root)) continue;
    detail::grow_connected(
        h.adj, root, t, banned, [&](const std::vector<int>& set) {
          long long boundary = 0;
          for (int v : set) in_set[v] = 1;
          for (int v : set)
            for (int u : h.adj[v])
              if (!in_set[u]) ++boundary;
          for (int v : set) in_set[v] = 0;
          Rat ratio = Rat(boundary) / Rat(static_cast<long long>(set.size()));
          if (best < 0 || ratio < best) best = ratio;
        });
    banned[root] = 1;  // sets through earlier roots already enumerated
  }
  for (int v = 0; v < h.n(); ++v) banned[v] = 0;
  if (best < 0) throw WindowTooSmall("isoperimetric_profile: no interior vertices");
  return best;
}

// Certified constant for Φ(t) >= C_iso·t^{-1/2} over the enumerable range.
inline double certified_c_iso(const HostWindow& h, int cap = 8) {
  double best = -1;
  for (int t = 1; t <= cap; ++t) {
    double v = to_double(isoperimetric_profile(h, t, cap)) * std::sqrt(static_cast<double>(t));
    if (best < 0 || v < best) best = v;
  }
  return best;
}

}  // namespace hcps
