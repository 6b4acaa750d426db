// Partition functions under cycle-basis boundary conditions: exact rational
// evaluation, the contour and polymer representations (with the w̃ interior
// resummation), a certified FPTAS for log Z, an approximate sampler, and
// occupation marginals.
#pragma once

#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "hcps/contour.hpp"
#include "hcps/polymer.hpp"

namespace hcps {

// Boundary condition of parity x on Λ: the vertex set U (∂Λ-incident vertices
// plus Λ-vertices of exiting basis cycles) is pinned — x-parity vertices
// occupied, the rest unoccupied.  U is always computed, never supplied.
struct BoundaryCondition {
  Parity parity = Parity::even;
  std::vector<int> U;           // sorted
  std::vector<int> occupied;    // U ∩ V_parity
  std::vector<int> unoccupied;  // U ∖ V_parity
};

inline BoundaryCondition boundary_set(const Patch& p, Parity x, const CycleBasis& basis) {
  BoundaryCondition bc;
  bc.parity = x;
  bc.U = boundary_set(p, basis);
  for (int v : bc.U) (p.host->parity[v] == x ? bc.occupied : bc.unoccupied).push_back(v);
  return bc;
}

namespace detail {

// Weighted independent-set count over `free` (a subset of the window),
// branching on a maximum-degree vertex and splitting into components.
inline Rat z_free(const HostWindow& h, std::vector<int> free, const Rat& le, const Rat& lo,
                  long long& budget) {
  if (free.empty()) return Rat(1);
  if (--budget < 0) throw CapExceeded("exact_Z budget exhausted");
  std::vector<char> in(h.n(), 0);
  for (int v : free) in[v] = 1;

  // Component split.
  std::vector<char> seen(h.n(), 0);
  std::vector<std::vector<int>> comps;
  for (int r : free) {
    if (seen[r]) continue;
    std::vector<int> q{r};
    seen[r] = 1;
    for (size_t qi = 0; qi < q.size(); ++qi)
      for (int u : h.adj[q[qi]])
        if (in[u] && !seen[u]) {
          seen[u] = 1;
          q.push_back(u);
        }
    comps.push_back(std::move(q));
  }
  if (comps.size() > 1) {
    Rat prod(1);
    for (auto& c : comps) prod *= z_free(h, std::move(c), le, lo, budget);
    return prod;
  }

  // Branch on a maximum-degree vertex of the component.
  const std::vector<int>& comp = comps[0];
  int v = comp[0], best = -1;
  for (int u : comp) {
    int d = 0;
    for (int w : h.adj[u]) d += in[w];
    if (d > best) {
      best = d;
      v = u;
    }
  }
  std::vector<int> without, without_nbhd;
  for (int u : comp)
    if (u != v) without.push_back(u);
  std::vector<char> drop(h.n(), 0);
  drop[v] = 1;
  for (int u : h.adj[v]) drop[u] = 1;
  for (int u : comp)
    if (!drop[u]) without_nbhd.push_back(u);
  Rat lam = h.parity[v] == Parity::even ? le : lo;
  return z_free(h, std::move(without), le, lo, budget) +
         lam * z_free(h, std::move(without_nbhd), le, lo, budget);
}

}  // namespace detail

// Exact Σ λ^ω over independent sets of Λ with the given pinned vertices;
// activities of pinned occupied vertices are included.  Free boundary
// conditions correspond to empty pins.
inline Rat exact_Z(const Patch& p, const std::vector<int>& occupied,
                   const std::vector<int>& unoccupied, const Rat& le, const Rat& lo,
                   long long budget = 2'000'000) {
  const HostWindow& h = *p.host;
  std::vector<char> occ(h.n(), 0), dead(h.n(), 0);
  Rat prefix(1);
  for (int v : occupied) {
    if (!p.contains(v)) throw ConfigError("exact_Z: pinned vertex outside Λ");
    occ[v] = 1;
    prefix *= h.parity[v] == Parity::even ? le : lo;
  }
  for (int v : unoccupied) {
    if (!p.contains(v)) throw ConfigError("exact_Z: pinned vertex outside Λ");
    if (occ[v]) throw ConfigError("exact_Z: vertex pinned both occupied and unoccupied");
    dead[v] = 1;
  }
  for (int v : occupied)
    for (int u : h.adj[v])
      if (occ[u]) throw NotIndependent("pinned occupied vertices are adjacent");
  std::vector<int> free;
  for (int v : p.verts) {
    if (occ[v] || dead[v]) continue;
    bool blocked = false;
    for (int u : h.adj[v]) blocked |= occ[u];
    if (!blocked) free.push_back(v);
  }
  return prefix * detail::z_free(h, std::move(free), le, lo, budget);
}

inline Rat exact_Z(const Patch& p, const BoundaryCondition& bc, const Rat& le, const Rat& lo,
                   long long budget = 2'000'000) {
  return exact_Z(p, bc.occupied, bc.unoccupied, le, lo, budget);
}

// 𝓒̄(Λ) in full: every contour fits inside the allowed edge set.
inline std::vector<Contour> contour_pool(const Patch& p, const CycleBasis& basis,
                                         long long budget = 20'000'000) {
  int k = static_cast<int>(allowed_edges(p, basis).size());
  return contours_in(p, k, basis, budget);
}

// Z^x_Λ = λ_x^{|V_x∩Λ|} Σ over compatible matched external-x families of ∏ w_γ.
inline Rat contour_Z(const Patch& p, Parity x, const Rat& le, const Rat& lo,
                     const CycleBasis& basis, long long budget = 20'000'000) {
  const HostWindow& h = *p.host;
  auto pool = contour_pool(p, basis, budget);
  const int n = static_cast<int>(pool.size());
  Rat sum(0);
  std::vector<int> chosen;
  auto visit = [&]() {
    std::vector<Contour> fam;
    for (int i : chosen) fam.push_back(pool[i]);
    auto cs = classify_set(std::move(fam), basis);
    if (!cs.matching) return;
    if (cs.external_parity != ExternalParity::any &&
        cs.external_parity != (x == Parity::even ? ExternalParity::even : ExternalParity::odd))
      return;
    Rat prod(1);
    for (int i : chosen) prod *= weight(pool[i], le, lo);
    sum += prod;
  };
  auto rec = [&](auto&& self, int next) -> void {
    visit();
    for (int i = next; i < n; ++i) {
      bool ok = true;
      for (int j : chosen) ok &= compatible(pool[i], pool[j], basis);
      if (!ok) continue;
      if (--budget < 0) throw CapExceeded("contour_Z budget exhausted");
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  long long nx = 0;
  for (int v : p.verts) nx += h.parity[v] == x;
  return rat_pow(x == Parity::even ? le : lo, nx) * sum;
}

// w̃ weights with cached interior partition functions Ξˣ.  Entries for γ only
// depend on contours with strictly smaller interiors, so the mutual recursion
// below terminates; a depth guard backs that up.
struct TildeWeightTable {
  std::map<Contour, Rat> w;
  std::map<std::pair<std::vector<int>, char>, Rat> xi;  // (patch vertices, parity)
};

inline Rat tilde_weight(const Contour& g, const Rat& le, const Rat& lo, const CycleBasis& basis,
                        TildeWeightTable& table, int depth = 0);

// Ξˣ_Λ = Σ over compatible subsets of 𝓒̄ˣ(Λ) of ∏ w̃ (the polymer form).
inline Rat xi_polymer(const Patch& p, Parity x, const Rat& le, const Rat& lo,
                      const CycleBasis& basis, TildeWeightTable& table, int depth = 0) {
  if (p.empty()) return Rat(1);
  auto key = std::make_pair(p.verts, static_cast<char>(parity_char(x)));
  if (auto it = table.xi.find(key); it != table.xi.end()) return it->second;
  if (depth > 64) throw CapExceeded("xi_polymer recursion too deep");
  std::vector<Contour> pool;
  for (auto& c : contour_pool(p, basis))
    if (c.label == x) pool.push_back(std::move(c));
  std::vector<Rat> wt;
  for (const auto& c : pool) wt.push_back(tilde_weight(c, le, lo, basis, table, depth + 1));
  Rat sum(0);
  const int n = static_cast<int>(pool.size());
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int next, const Rat& prod) -> void {
    sum += prod;
    for (int i = next; i < n; ++i) {
      bool ok = true;
      for (int j : chosen) ok &= compatible(pool[i], pool[j], basis);
      if (!ok) continue;
      chosen.push_back(i);
      self(self, i + 1, prod * wt[i]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, Rat(1));
  table.xi.emplace(std::move(key), sum);
  return sum;
}

inline Rat tilde_weight(const Contour& g, const Rat& le, const Rat& lo, const CycleBasis& basis,
                        TildeWeightTable& table, int depth) {
  if (auto it = table.w.find(g); it != table.w.end()) return it->second;
  const HostWindow& h = *basis.host;
  // Even γ: w̃ = w·Ξᵒ_{Int_o}/Ξᵉ_{Int_o}; odd γ mirrors with Int_e.
  const std::vector<int>& verts = g.label == Parity::even ? g.int_o : g.int_e;
  Rat wt = weight(g, le, lo);
  if (!verts.empty()) {
    Patch inner = make_patch(h, verts);
    Rat num = xi_polymer(inner, opposite(g.label), le, lo, basis, table, depth);
    Rat den = xi_polymer(inner, g.label, le, lo, basis, table, depth);
    wt *= num / den;
  }
  table.w.emplace(g, wt);
  return wt;
}

inline TildeWeightTable tilde_weights(const Patch& p, const Rat& le, const Rat& lo,
                                      const CycleBasis& basis) {
  TildeWeightTable table;
  for (const auto& c : contour_pool(p, basis)) tilde_weight(c, le, lo, basis, table);
  return table;
}

// Z^x_Λ through the polymer representation: λ_x^{|V_x∩Λ|}·Ξˣ_Λ.
inline Rat polymer_Z(const Patch& p, Parity x, const Rat& le, const Rat& lo,
                     const CycleBasis& basis) {
  const HostWindow& h = *p.host;
  TildeWeightTable table;
  Rat xi = xi_polymer(p, x, le, lo, basis, table);
  long long nx = 0;
  for (int v : p.verts) nx += h.parity[v] == x;
  return rat_pow(x == Parity::even ? le : lo, nx) * xi;
}

// External contour representation: λ_x^{|V_x∩Λ|} Σ over mutually external
// compatible x-families of ∏ w̃_γ Ξˣ_{Int_e γ} Ξˣ_{Int_o γ}.
inline Rat external_Z(const Patch& p, Parity x, const Rat& le, const Rat& lo,
                      const CycleBasis& basis) {
  const HostWindow& h = *p.host;
  TildeWeightTable table;
  std::vector<Contour> pool;
  for (auto& c : contour_pool(p, basis))
    if (c.label == x) pool.push_back(std::move(c));
  const int n = static_cast<int>(pool.size());
  std::vector<Rat> term;
  for (const auto& c : pool) {
    Rat t = tilde_weight(c, le, lo, basis, table);
    for (const std::vector<int>* verts : {&c.int_e, &c.int_o})
      if (!verts->empty()) t *= xi_polymer(make_patch(h, *verts), x, le, lo, basis, table);
    term.push_back(t);
  }
  auto mutually_external = [&](int i, int j) {
    return compatible(pool[i], pool[j], basis) && !precedes(pool[i], pool[j], basis) &&
           !precedes(pool[j], pool[i], basis);
  };
  Rat sum(0);
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int next, const Rat& prod) -> void {
    sum += prod;
    for (int i = next; i < n; ++i) {
      bool ok = true;
      for (int j : chosen) ok &= mutually_external(i, j);
      if (!ok) continue;
      chosen.push_back(i);
      self(self, i + 1, prod * term[i]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, Rat(1));
  long long nx = 0;
  for (int v : p.verts) nx += h.parity[v] == x;
  return rat_pow(x == Parity::even ? le : lo, nx) * sum;
}

// Smallest activity for which τ = (log λ)/Δ − 3 certifies the Kotecký–Preiss
// schedule α₁ = |γ|, α₂ = (2τ/3)|γ| against the (eD)^{k−1} contour counts:
// τ★ solves the per-edge bound with the combinatorial factor (1+e)D.
inline double lambda_star(int D, int Delta) {
  double tau_star = 3.0 * (1.0 + std::log((1.0 + std::exp(1.0)) * D));
  return std::exp(Delta * (tau_star + 3.0));
}

struct FptasCertificate {
  double lambda = 0;
  double lambda_star = 0;
  double tau = 0;
  int m = 0;           // cluster size cap actually used
  double tail = 0;     // certified |log Ẑ − log Z| bound
  KPReport kp;
};

// Certified log Z^x_Λ: pins log λ_x^{|V_x∩Λ|} plus the truncated cluster
// expansion of log Ξˣ_Λ at cluster size cap m = ⌈2 log(|E(Λ)|/ε)/τ⌉,
// increasing m until the tail bound clears ε.
inline std::pair<double, FptasCertificate> fptas_log_Z(const Patch& p, Parity x, double lambda,
                                                       double eps, const CycleBasis& basis,
                                                       long long budget = 20'000'000) {
  if (!(lambda > 0)) throw ConfigError("fptas_log_Z requires lambda > 0");
  if (!(eps > 0)) throw ConfigError("fptas_log_Z requires eps > 0");
  const HostWindow& h = *p.host;
  FptasCertificate cert;
  cert.lambda = lambda;
  cert.lambda_star = lambda_star(basis.D, h.max_degree);
  if (lambda < cert.lambda_star)
    throw ActivityTooSmall("lambda below the certified threshold lambda* = " +
                           std::to_string(cert.lambda_star));
  cert.tau = std::log(lambda) / h.max_degree - 3.0;

  long long nx = 0;
  for (int v : p.verts) nx += h.parity[v] == x;
  double base = static_cast<double>(nx) * std::log(lambda);
  if (p.edges.empty()) {
    cert.kp.tau = cert.tau;
    cert.kp.pass = true;
    cert.kp.eta = std::exp(-cert.tau / 3.0);
    return {base, cert};
  }

  // Tail anchor: any cluster of total size > m touches some edge of E(Λ) and
  // is incompatible with every contour through that edge, so the α₂ surcharge
  // bounds its family by e^{−(2τ/3)(m+1)}·|γ_anchor(e)| per edge.  Star
  // contours at the endpoints provide the anchors; edges no contour can use
  // contribute nothing.
  double anchor_sum = 0;
  {
    ContourValidator val(basis);
    std::vector<int> star_size(h.n(), -2);  // -2 unknown, -1 invalid
    auto star = [&](int v) {
      if (star_size[v] != -2) return star_size[v];
      std::vector<int> edges = h.inc[v];
      std::sort(edges.begin(), edges.end());
      try {
        auto c = try_make_contour(std::move(edges), val);
        star_size[v] = c ? c->size() : -1;
      } catch (const WindowTooSmall&) {
        star_size[v] = -1;
      }
      return star_size[v];
    };
    for (int e : allowed_edges(p, basis)) {
      auto [a, b] = h.edges[e];
      if (h.dist_frame[a] < basis.L || h.dist_frame[b] < basis.L) continue;
      int s = -1;
      for (int v : {a, b}) {
        int sv = star(v);
        if (sv > 0 && (s < 0 || sv < s)) s = sv;
      }
      if (s < 0) throw CapExceeded("fptas_log_Z: no anchor contour through edge " + std::to_string(e));
      anchor_sum += s;
    }
  }

  int m = std::max<int>(1, static_cast<int>(std::ceil(
                               2.0 * std::log(static_cast<double>(p.edges.size()) / eps) / cert.tau)));
  Rat lr = rat_from_double(lambda);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 16) throw CapExceeded("fptas_log_Z could not certify the requested tolerance");
    auto pool = contours_in(p, m, basis, budget);
    TildeWeightTable table;
    PolymerModel<double> model;
    model.host = &h;
    for (const auto& c : pool) {
      if (c.label != x) continue;
      model.size.push_back(c.size());
      model.w.push_back(to_double(tilde_weight(c, lr, lr, basis, table)));
      model.support.push_back(c.edges);
    }
    model.incompat.assign(model.size.size(), {});
    {
      std::vector<const Contour*> kept;
      for (const auto& c : pool)
        if (c.label == x) kept.push_back(&c);
      for (size_t i = 0; i < kept.size(); ++i)
        for (size_t j = i + 1; j < kept.size(); ++j)
          if (!compatible(*kept[i], *kept[j], basis)) {
            model.incompat[i].push_back(static_cast<int>(j));
            model.incompat[j].push_back(static_cast<int>(i));
          }
    }
    KPReport kp;
    try {
      kp = kp_verify(model, cert.tau);
    } catch (const WeightBoundViolated&) {
      throw ActivityTooSmall("contour weights violate the pointwise Kotecky-Preiss bound");
    }
    if (!kp.pass) throw ActivityTooSmall("Kotecky-Preiss condition fails at this activity");
    Kahan sum;
    for (const auto& c : enumerate_clusters(model, m, budget)) sum.add(c.weight);
    double tail = std::exp(-(2.0 * cert.tau / 3.0) * (m + 1)) * anchor_sum;
    if (tail <= eps) {
      cert.m = m;
      cert.tail = tail;
      cert.kp = kp;
      return {base + sum.value(), cert};
    }
    ++m;
  }
}

namespace detail {

// Exact sampling from μ^bc_Λ by cumulative enumeration of the consistent
// independent sets; exact in distribution for any λ > 0.
inline std::vector<int> sample_exact(const Patch& p, const BoundaryCondition& bc, const Rat& le,
                                     const Rat& lo, std::mt19937_64& rng, long long budget) {
  const HostWindow& h = *p.host;
  std::vector<char> occ(h.n(), 0), dead(h.n(), 0);
  for (int v : bc.occupied) occ[v] = 1;
  for (int v : bc.unoccupied) dead[v] = 1;
  std::vector<int> free;
  for (int v : p.verts) {
    if (occ[v] || dead[v]) continue;
    bool blocked = false;
    for (int u : h.adj[v]) blocked |= occ[u];
    if (!blocked) free.push_back(v);
  }
  Rat total = exact_Z(p, bc, le, lo, budget);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Rat target = rat_from_double(unif(rng)) * total;

  // Walk the enumeration until the cumulative weight passes the target; the
  // target is strictly below the total, so the walk always lands.
  Rat prefix(1);
  for (int v : bc.occupied) prefix *= h.parity[v] == Parity::even ? le : lo;
  Rat cum(0);
  std::vector<int> chosen, result(bc.occupied);
  std::vector<int> blocked(h.n(), 0);
  bool done = false;
  auto rec = [&](auto&& self, int next, const Rat& prod) -> void {
    if (done) return;
    if (--budget < 0) throw CapExceeded("sample budget exhausted");
    cum += prod;
    if (cum > target) {
      result.insert(result.end(), chosen.begin(), chosen.end());
      done = true;
      return;
    }
    for (int i = next; i < static_cast<int>(free.size()) && !done; ++i) {
      int v = free[i];
      if (blocked[v]) continue;
      chosen.push_back(v);
      for (int u : h.adj[v]) ++blocked[u];
      self(self, i + 1, prod * (h.parity[v] == Parity::even ? le : lo));
      for (int u : h.adj[v]) --blocked[u];
      chosen.pop_back();
    }
  };
  rec(rec, 0, prefix);
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace detail

// Approximate sampler.  Small instances are sampled exactly; larger ones draw
// a mutually external contour family sequentially in canonical order with
// exact rational acceptance ratios and recurse into the interiors with the
// flipped boundary conditions.
inline std::vector<int> sample(const Patch& p, Parity x, const Rat& le, const Rat& lo, double eps,
                               std::mt19937_64& rng, const CycleBasis& basis,
                               bool force_sequential = false, long long budget = 2'000'000) {
  if (!(le > 0) || !(lo > 0)) throw ConfigError("sample requires positive activities");
  const HostWindow& h = *p.host;
  if (p.empty()) return {};
  auto bc = boundary_set(p, x, basis);

  if (!force_sequential) {
    std::vector<char> occ(h.n(), 0);
    for (int v : bc.occupied) occ[v] = 1;
    int free = 0;
    for (int v : p.verts) {
      if (std::binary_search(bc.U.begin(), bc.U.end(), v)) continue;
      bool blocked = false;
      for (int u : h.adj[v]) blocked |= occ[u];
      free += !blocked;
    }
    if (free <= 20) return detail::sample_exact(p, bc, le, lo, rng, budget);
    double lam = std::min(to_double(le), to_double(lo));
    if (lam < lambda_star(basis.D, h.max_degree))
      throw ActivityTooSmall("sequential sampling requires lambda >= lambda*");
  }

  std::vector<Contour> pool;
  for (auto& c : contour_pool(p, basis, budget))
    if (c.label == x) pool.push_back(std::move(c));
  const int n = static_cast<int>(pool.size());
  if (n > 26) throw CapExceeded("sample: external contour pool too large");

  // ŵ_γ = w̃_γ Ξˣ_{Int_e γ} Ξˣ_{Int_o γ}: the total weight of configurations
  // with γ external.
  TildeWeightTable table;
  std::vector<Rat> hat;
  for (const auto& c : pool) {
    Rat t = tilde_weight(c, le, lo, basis, table);
    for (const std::vector<int>* verts : {&c.int_e, &c.int_o})
      if (!verts->empty()) t *= xi_polymer(make_patch(h, *verts), x, le, lo, basis, table);
    hat.push_back(t);
  }
  std::vector<std::vector<char>> ok(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      ok[i][j] = ok[j][i] = compatible(pool[i], pool[j], basis) &&
                            !precedes(pool[i], pool[j], basis) &&
                            !precedes(pool[j], pool[i], basis);

  // W(i, mask) = total ŵ-weight of mutually external completions from pool[i:].
  std::map<std::pair<int, unsigned>, Rat> memo;
  auto W = [&](auto&& self, int i, unsigned mask) -> Rat {
    if (i == n) return Rat(1);
    auto key = std::make_pair(i, mask);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Rat val = self(self, i + 1, mask);
    bool fits = true;
    for (int j = 0; j < n; ++j)
      if ((mask >> j & 1u) && !ok[i][j]) fits = false;
    if (fits) val += hat[i] * self(self, i + 1, mask | (1u << i));
    memo.emplace(key, val);
    return val;
  };

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  unsigned mask = 0;
  std::vector<Contour> family;
  for (int i = 0; i < n; ++i) {
    bool fits = true;
    for (int j = 0; j < n; ++j)
      if ((mask >> j & 1u) && !ok[i][j]) fits = false;
    if (!fits) continue;
    Rat p_take = hat[i] * W(W, i + 1, mask | (1u << i)) / W(W, i, mask);
    if (unif(rng) < to_double(p_take)) {
      mask |= 1u << i;
      family.push_back(pool[i]);
    }
  }

  auto cs = classify_set(family, basis);
  std::vector<int> I = independent_set_from_contours(cs, p, x, basis);
  std::vector<char> in_I(h.n(), 0);
  for (int v : I) in_I[v] = 1;
  for (const auto& c : family)
    for (const auto& comp : c.components) {
      for (int v : comp.verts) in_I[v] = 0;
      Patch inner = make_patch(h, comp.verts);
      for (int v : sample(inner, comp.occupied, le, lo, eps, rng, basis, false, budget)) in_I[v] = 1;
    }
  std::vector<int> out;
  for (int v = 0; v < h.n(); ++v)
    if (in_I[v]) out.push_back(v);
  return out;
}

inline std::vector<int> sample(const Patch& p, Parity x, const Rat& le, const Rat& lo, double eps,
                               std::uint64_t seed, const CycleBasis& basis,
                               bool force_sequential = false) {
  std::mt19937_64 rng(seed);
  return sample(p, x, le, lo, eps, rng, basis, force_sequential);
}

// μ^bc_Λ[v occupied], exact rational mode.
inline Rat marginal(const Patch& p, Parity x, const Rat& le, const Rat& lo, int v,
                    const CycleBasis& basis, long long budget = 2'000'000) {
  const HostWindow& h = *p.host;
  if (!p.contains(v)) throw ConfigError("marginal: vertex outside Λ");
  auto bc = boundary_set(p, x, basis);
  if (std::binary_search(bc.occupied.begin(), bc.occupied.end(), v)) return Rat(1);
  if (std::binary_search(bc.unoccupied.begin(), bc.unoccupied.end(), v)) return Rat(0);
  for (int u : h.adj[v])
    if (std::binary_search(bc.occupied.begin(), bc.occupied.end(), u)) return Rat(0);
  auto occ = bc.occupied;
  occ.push_back(v);
  auto un = bc.unoccupied;
  for (int u : h.adj[v])
    if (p.contains(u)) un.push_back(u);
  std::sort(un.begin(), un.end());
  un.erase(std::unique(un.begin(), un.end()), un.end());
  return exact_Z(p, occ, un, le, lo, budget) / exact_Z(p, bc, le, lo, budget);
}

// FPTAS-mode marginal: λ_v · exp(log Ẑ(Λ∖N[v]) − log Ẑ(Λ)).
inline double marginal_fptas(const Patch& p, Parity x, double lambda, double eps, int v,
                             const CycleBasis& basis) {
  const HostWindow& h = *p.host;
  if (!p.contains(v)) throw ConfigError("marginal: vertex outside Λ");
  std::vector<int> rest;
  for (int u : p.verts)
    if (u != v && std::find(h.adj[v].begin(), h.adj[v].end(), u) == h.adj[v].end())
      rest.push_back(u);
  double lz_rest = fptas_log_Z(make_patch(h, rest), x, lambda, eps / 2, basis).first;
  double lz_full = fptas_log_Z(p, x, lambda, eps / 2, basis).first;
  return std::exp(std::log(lambda) + lz_rest - lz_full);
}

}  // namespace hcps
