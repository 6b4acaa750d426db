// Generators for the example hosts: Z^d windows, the dice lattice, even-width
// cylinders, slabs Z^d x {0,1}, and the decorated lattice Z^d_2 (negative
// control for symmetry detection).  Each generator ships its plaquette cycle
// basis and symmetry metadata; D is always computed, never assumed.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "hcps/cycle_space.hpp"
#include "hcps/graph.hpp"

namespace hcps {

enum class Family { grid_zd, dice, cylinder, slab_zd2, decorated_zd2 };

struct HostSpec {
  Family family = Family::grid_zd;
  int d = 2;            // grid/slab/decorated dimension
  int side = 8;         // requested interior side
  int k = 4;            // cylinder width
  int length = 8;       // cylinder length
  int frame_depth = 4;  // extra margin layers beyond the requested side
};

enum class SymmetryKind { vertex_transitive, matched_automorphic, parity_transitive, none };

inline std::string to_string(SymmetryKind k) {
  switch (k) {
    case SymmetryKind::vertex_transitive: return "vertex_transitive";
    case SymmetryKind::matched_automorphic: return "matched_automorphic";
    case SymmetryKind::parity_transitive: return "parity_transitive";
    case SymmetryKind::none: return "none";
  }
  return "?";
}

struct SymmetryData {
  SymmetryKind kind = SymmetryKind::none;
  std::vector<int> matching;  // matched automorphism π per vertex; empty if n/a
  int deg_e = 0, deg_o = 0;   // (Δ_e, Δ_o)
};

struct Generated {
  HostWindow window;
  CycleBasis basis;
  SymmetryData sym;
  std::vector<int> center_candidates;  // deep interior vertices, even first

  // basis.host points into this object; keep it pointing at our own window
  // across copies and moves.
  Generated() = default;
  Generated(const Generated& o)
      : window(o.window), basis(o.basis), sym(o.sym), center_candidates(o.center_candidates) {
    if (basis.host == &o.window) basis.host = &window;
  }
  Generated(Generated&& o) noexcept
      : window(std::move(o.window)),
        basis(std::move(o.basis)),
        sym(std::move(o.sym)),
        center_candidates(std::move(o.center_candidates)) {
    if (basis.host == &o.window) basis.host = &window;
  }
  Generated& operator=(const Generated& o) {
    if (this == &o) return *this;
    window = o.window;
    basis = o.basis;
    sym = o.sym;
    center_candidates = o.center_candidates;
    if (basis.host == &o.window) basis.host = &window;
    return *this;
  }
  Generated& operator=(Generated&& o) noexcept {
    if (this == &o) return *this;
    window = std::move(o.window);
    basis = std::move(o.basis);
    sym = std::move(o.sym);
    center_candidates = std::move(o.center_candidates);
    if (basis.host == &o.window) basis.host = &window;
    return *this;
  }
};

namespace detail {

struct GridIndexer {
  int d, n;  // n = vertices per axis
  long long count() const {
    long long c = 1;
    for (int i = 0; i < d; ++i) c *= n;
    return c;
  }
  int id(const std::array<int, 3>& x) const {
    int v = 0;
    for (int i = 0; i < d; ++i) v = v * n + x[i];
    return v;
  }
  std::array<int, 3> coords(int v) const {
    std::array<int, 3> x{0, 0, 0};
    for (int i = d - 1; i >= 0; --i) {
      x[i] = v % n;
      v /= n;
    }
    return x;
  }
  bool on_shell(const std::array<int, 3>& x) const {
    for (int i = 0; i < d; ++i)
      if (x[i] == 0 || x[i] == n - 1) return true;
    return false;
  }
};

}  // namespace detail

inline Generated generate(const HostSpec& spec) {
  if (spec.frame_depth < 1) throw ConfigError("frame_depth must be >= 1");
  Generated g;

  auto pick_centers = [&](const HostWindow& w) {
    // Deepest interior vertices; even-parity candidates first, then odd.
    std::vector<int> out;
    int best = 0;
    for (int v = 0; v < w.n(); ++v) best = std::max(best, w.dist_frame[v]);
    for (Parity p : {Parity::even, Parity::odd})
      for (int v = 0; v < w.n(); ++v)
        if (w.parity[v] == p && w.dist_frame[v] >= best - 1) out.push_back(v);
    return out;
  };

  switch (spec.family) {
    case Family::grid_zd: {
      if (spec.d < 2 || spec.d > 3) throw UnsupportedFamily("grid_zd supports d in {2,3}");
      if (spec.side < 1) throw ConfigError("side must be >= 1");
      detail::GridIndexer ix{spec.d, spec.side + 2 * spec.frame_depth};
      const int n = static_cast<int>(ix.count());
      std::vector<Parity> par(n);
      std::vector<char> fr(n, 0);
      std::vector<std::pair<int, int>> edges;
      for (int v = 0; v < n; ++v) {
        auto x = ix.coords(v);
        int s = 0;
        for (int i = 0; i < ix.d; ++i) s += x[i];
        par[v] = s % 2 == 0 ? Parity::even : Parity::odd;
        fr[v] = ix.on_shell(x) ? 1 : 0;
        for (int i = 0; i < ix.d; ++i)
          if (x[i] + 1 < ix.n) {
            auto y = x;
            ++y[i];
            edges.emplace_back(v, ix.id(y));
          }
      }
      g.window = make_window(std::move(par), std::move(fr), std::move(edges));
      std::vector<std::vector<int>> cycles;
      for (int v = 0; v < n; ++v) {
        auto x = ix.coords(v);
        for (int i = 0; i < ix.d; ++i)
          for (int j = i + 1; j < ix.d; ++j)
            if (x[i] + 1 < ix.n && x[j] + 1 < ix.n) {
              auto a = x, b = x, c = x;
              ++a[i];
              ++b[j];
              ++c[i];
              ++c[j];
              cycles.push_back({g.window.edge_id(v, ix.id(a)), g.window.edge_id(v, ix.id(b)),
                                g.window.edge_id(ix.id(a), ix.id(c)), g.window.edge_id(ix.id(b), ix.id(c))});
            }
      }
      g.basis = make_basis(g.window, std::move(cycles));
      g.sym = {SymmetryKind::vertex_transitive, {}, 2 * spec.d, 2 * spec.d};
      break;
    }

    case Family::dice: {
      // Triangular lattice corners (odd, degree 6) + triangle centers (even,
      // degree 3); dice edges join centers to their corners; rhombi are the
      // plaquettes (two triangles glued along a triangular-lattice edge).
      if (spec.side < 1) throw ConfigError("side must be >= 1");
      const int N = spec.side + 2 * spec.frame_depth;
      auto corner = [&](int i, int j) { return i * N + j; };
      const int ncorners = N * N;
      std::vector<Parity> par(ncorners, Parity::odd);
      std::vector<char> fr(ncorners, 0);
      std::vector<std::pair<int, int>> edges;
      std::vector<int> up(ncorners, -1), dn(ncorners, -1);
      int next = ncorners;
      auto boundary_corner = [&](int i, int j) { return i == 0 || j == 0 || i == N - 1 || j == N - 1; };
      for (int i = 0; i + 1 < N; ++i)
        for (int j = 0; j + 1 < N; ++j) {
          up[corner(i, j)] = next++;  // corners (i,j),(i+1,j),(i,j+1)
          dn[corner(i, j)] = next++;  // corners (i+1,j),(i,j+1),(i+1,j+1)
        }
      par.resize(next, Parity::even);
      fr.resize(next, 0);
      auto tri_corners = [&](int c, bool is_up) {
        std::array<int, 3> out{};
        int i = c / N, j = c % N;
        if (is_up)
          out = {corner(i, j), corner(i + 1, j), corner(i, j + 1)};
        else
          out = {corner(i + 1, j), corner(i, j + 1), corner(i + 1, j + 1)};
        return out;
      };
      std::map<std::pair<int, int>, std::vector<int>> tri_edge_centers;
      for (int i = 0; i + 1 < N; ++i)
        for (int j = 0; j + 1 < N; ++j)
          for (bool is_up : {true, false}) {
            int c = is_up ? up[corner(i, j)] : dn[corner(i, j)];
            auto cs = tri_corners(corner(i, j), is_up);
            int nb = 0;
            for (int v : cs) {
              edges.emplace_back(c, v);
              int ci = v / N, cj = v % N;
              if (boundary_corner(ci, cj)) ++nb;
            }
            if (nb >= 2) fr[c] = 1;  // glue the frame ring together
            for (int a = 0; a < 3; ++a)
              for (int b = a + 1; b < 3; ++b) {
                auto key = std::minmax(cs[a], cs[b]);
                tri_edge_centers[{key.first, key.second}].push_back(c);
              }
          }
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          if (boundary_corner(i, j)) fr[corner(i, j)] = 1;
      HostWindow w = make_window(std::move(par), std::move(fr), std::move(edges));
      std::vector<std::vector<int>> cycles;
      for (const auto& [pq, cs] : tri_edge_centers)
        if (cs.size() == 2)
          cycles.push_back({w.edge_id(cs[0], pq.first), w.edge_id(cs[0], pq.second),
                            w.edge_id(cs[1], pq.first), w.edge_id(cs[1], pq.second)});
      g.window = std::move(w);
      g.basis = make_basis(g.window, std::move(cycles));
      g.sym = {SymmetryKind::parity_transitive, {}, 3, 6};
      break;
    }

    case Family::cylinder: {
      if (spec.k < 4 || spec.k % 2 != 0)
        throw NonBipartite("cylinder width must be even (and >= 4) for a bipartite host");
      const int K = spec.k, T = spec.length + spec.frame_depth;
      if (spec.length < 1) throw ConfigError("length must be >= 1");
      auto id = [&](int r, int t) { return t * K + ((r % K) + K) % K; };
      const int n = K * T;
      std::vector<Parity> par(n);
      std::vector<char> fr(n, 0);
      std::vector<std::pair<int, int>> edges;
      for (int t = 0; t < T; ++t)
        for (int r = 0; r < K; ++r) {
          par[id(r, t)] = (r + t) % 2 == 0 ? Parity::even : Parity::odd;
          if (t == T - 1) fr[id(r, t)] = 1;  // far end stands in for infinity
          edges.emplace_back(id(r, t), id(r + 1, t));
          if (t + 1 < T) edges.emplace_back(id(r, t), id(r, t + 1));
        }
      g.window = make_window(std::move(par), std::move(fr), std::move(edges));
      std::vector<std::vector<int>> cycles;
      for (int t = 0; t + 1 < T; ++t)
        for (int r = 0; r < K; ++r)
          cycles.push_back({g.window.edge_id(id(r, t), id(r + 1, t)), g.window.edge_id(id(r, t), id(r, t + 1)),
                            g.window.edge_id(id(r + 1, t), id(r + 1, t + 1)),
                            g.window.edge_id(id(r, t + 1), id(r + 1, t + 1))});
      {
        // The ring at the closed end is not a sum of finitely many squares;
        // without it the squares span only the contractible cycles.
        std::vector<int> ring;
        for (int r = 0; r < K; ++r) ring.push_back(g.window.edge_id(id(r, 0), id(r + 1, 0)));
        cycles.push_back(std::move(ring));
      }
      g.basis = make_basis(g.window, std::move(cycles));
      std::vector<int> pi(n);
      for (int t = 0; t < T; ++t)
        for (int r = 0; r < K; ++r) pi[id(r, t)] = id(r + 1, t);
      // Interior vertices have degree 4: two ring neighbors plus two rungs.
      g.sym = {SymmetryKind::matched_automorphic, std::move(pi), 4, 4};
      break;
    }

    case Family::slab_zd2: {
      if (spec.d < 2 || spec.d > 3) throw UnsupportedFamily("slab_zd2 supports d in {2,3}");
      detail::GridIndexer ix{spec.d, spec.side + 2 * spec.frame_depth};
      const int base = static_cast<int>(ix.count());
      const int n = 2 * base;
      std::vector<Parity> par(n);
      std::vector<char> fr(n, 0);
      std::vector<std::pair<int, int>> edges;
      for (int v = 0; v < base; ++v) {
        auto x = ix.coords(v);
        int s = 0;
        for (int i = 0; i < ix.d; ++i) s += x[i];
        for (int layer : {0, 1}) {
          par[v + layer * base] = (s + layer) % 2 == 0 ? Parity::even : Parity::odd;
          fr[v + layer * base] = ix.on_shell(x) ? 1 : 0;
        }
        edges.emplace_back(v, v + base);  // vertical edge
        for (int i = 0; i < ix.d; ++i)
          if (x[i] + 1 < ix.n) {
            auto y = x;
            ++y[i];
            edges.emplace_back(v, ix.id(y));
            edges.emplace_back(v + base, ix.id(y) + base);
          }
      }
      g.window = make_window(std::move(par), std::move(fr), std::move(edges));
      std::vector<std::vector<int>> cycles;
      for (int v = 0; v < base; ++v) {
        auto x = ix.coords(v);
        for (int i = 0; i < ix.d; ++i) {
          if (x[i] + 1 >= ix.n) continue;
          auto y = x;
          ++y[i];
          int u = ix.id(y);
          // Vertical plaquette over the horizontal edge {v,u}.
          cycles.push_back({g.window.edge_id(v, u), g.window.edge_id(v, v + base),
                            g.window.edge_id(u, u + base), g.window.edge_id(v + base, u + base)});
          // Horizontal plaquettes in both layers.
          for (int j = i + 1; j < ix.d; ++j)
            if (x[j] + 1 < ix.n) {
              auto b = x, c = y;
              ++b[j];
              ++c[j];
              for (int layer : {0, 1}) {
                int off = layer * base;
                cycles.push_back({g.window.edge_id(v + off, u + off), g.window.edge_id(v + off, ix.id(b) + off),
                                  g.window.edge_id(u + off, ix.id(c) + off),
                                  g.window.edge_id(ix.id(b) + off, ix.id(c) + off)});
              }
            }
        }
      }
      g.basis = make_basis(g.window, std::move(cycles));
      std::vector<int> pi(n);
      for (int v = 0; v < base; ++v) {
        pi[v] = v + base;
        pi[v + base] = v;
      }
      g.sym = {SymmetryKind::matched_automorphic, std::move(pi), 2 * spec.d + 1, 2 * spec.d + 1};
      break;
    }

    case Family::decorated_zd2: {
      // Z^d with a depth-one binary tree hung off every vertex: one-ended and
      // bipartite but satisfies none of the symmetry assumptions.
      if (spec.d < 2 || spec.d > 3) throw UnsupportedFamily("decorated_zd2 supports d in {2,3}");
      detail::GridIndexer ix{spec.d, spec.side + 2 * spec.frame_depth};
      const int base = static_cast<int>(ix.count());
      const int n = 3 * base;  // grid vertex + two leaves
      std::vector<Parity> par(n);
      std::vector<char> fr(n, 0);
      std::vector<std::pair<int, int>> edges;
      for (int v = 0; v < base; ++v) {
        auto x = ix.coords(v);
        int s = 0;
        for (int i = 0; i < ix.d; ++i) s += x[i];
        Parity p = s % 2 == 0 ? Parity::even : Parity::odd;
        par[v] = p;
        par[base + 2 * v] = par[base + 2 * v + 1] = opposite(p);
        fr[v] = ix.on_shell(x) ? 1 : 0;
        edges.emplace_back(v, base + 2 * v);
        edges.emplace_back(v, base + 2 * v + 1);
        for (int i = 0; i < ix.d; ++i)
          if (x[i] + 1 < ix.n) {
            auto y = x;
            ++y[i];
            edges.emplace_back(v, ix.id(y));
          }
      }
      g.window = make_window(std::move(par), std::move(fr), std::move(edges));
      std::vector<std::vector<int>> cycles;
      for (int v = 0; v < base; ++v) {
        auto x = ix.coords(v);
        for (int i = 0; i < ix.d; ++i)
          for (int j = i + 1; j < ix.d; ++j)
            if (x[i] + 1 < ix.n && x[j] + 1 < ix.n) {
              auto a = x, b = x, c = x;
              ++a[i];
              ++b[j];
              ++c[i];
              ++c[j];
              cycles.push_back({g.window.edge_id(v, ix.id(a)), g.window.edge_id(v, ix.id(b)),
                                g.window.edge_id(ix.id(a), ix.id(c)), g.window.edge_id(ix.id(b), ix.id(c))});
            }
      }
      g.basis = make_basis(g.window, std::move(cycles));
      g.sym = {SymmetryKind::none, {}, 2 * spec.d + 2, 2 * spec.d + 2};
      break;
    }
  }

  g.center_candidates = pick_centers(g.window);
  return g;
}

inline Family parse_family(const std::string& s) {
  if (s == "grid_zd") return Family::grid_zd;
  if (s == "dice") return Family::dice;
  if (s == "cylinder") return Family::cylinder;
  if (s == "slab_zd2") return Family::slab_zd2;
  if (s == "decorated_zd2") return Family::decorated_zd2;
  throw UnsupportedFamily("unknown family '" + s + "'");
}

}  // namespace hcps
