// Abstract polymer models: exact Ξ, Ursell functions, cluster enumeration,
// Kotecký–Preiss certification, truncated log Ξ with tail bounds, and the
// bulk/surface (Q, S) decomposition of log Ξ.
//
// Convention: clusters are unordered multisets; the ordered-tuple count
// n!/∏ mult! multiplies the Ursell value φ(H(X)) (which carries the 1/n!), so
// the series reproduces log Ξ term by term.  Validated against log(1+w).
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "hcps/graph.hpp"
#include "hcps/numeric.hpp"

namespace hcps {

// Weights are either exact rationals (oracle mode) or doubles (production).
template <class T>
struct PolymerModel {
  std::vector<int> size;                  // |γ| per polymer
  std::vector<T> w;                       // weight per polymer
  std::vector<std::vector<int>> incompat;  // sorted ids; self-incompatibility implicit
  std::vector<std::vector<int>> support;   // optional: host edge ids per polymer
  const HostWindow* host = nullptr;        // optional: needed for Q/S only

  int n() const { return static_cast<int>(size.size()); }
  bool incompatible(int a, int b) const {
    if (a == b) return true;
    return std::binary_search(incompat[a].begin(), incompat[a].end(), b);
  }
};

namespace detail {
inline double weight_abs(double w) { return std::abs(w); }
inline double weight_abs(const Rat& w) { return std::abs(to_double(w)); }
inline double as_double(double w) { return w; }
inline double as_double(const Rat& w) { return to_double(w); }
}  // namespace detail

// Σ over pairwise-compatible subsets of ∏ weights (empty set → 1).
template <class T>
T xi_exact(const PolymerModel<T>& m, int cap = 24) {
  if (m.n() > cap) throw CapExceeded("xi_exact limited to " + std::to_string(cap) + " polymers");
  T total(1);
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int next, T prod) -> void {
    for (int i = next; i < m.n(); ++i) {
      bool ok = true;
      for (int j : chosen) ok &= !m.incompatible(i, j);
      if (!ok) continue;
      T p = prod * m.w[i];
      total += p;
      chosen.push_back(i);
      self(self, i + 1, p);
      chosen.pop_back();
    }
  };
  rec(rec, 0, T(1));
  return total;
}

// Ursell function of an incompatibility graph H given as adjacency bitmasks:
// φ(H) = (1/n!) Σ over connected spanning edge subsets A of (−1)^|A|.
inline Rat ursell(const std::vector<unsigned>& adj, int cap = 9) {
  const int n = static_cast<int>(adj.size());
  if (n > cap) throw CapExceeded("ursell limited to " + std::to_string(cap) + " vertices");
  if (n == 0) throw ConfigError("ursell of empty graph");
  if (n == 1) return Rat(1);
  const unsigned full = (1u << n) - 1;
  // g(S) = Σ_{A⊆E(S)} (−1)^|A| = [E(S) = ∅]; f(S) = Σ over connected spanning
  // A ⊆ E(S); f(S) = g(S) − Σ_{v0∈T⊊S} f(T)·g(S∖T) with v0 = lowest bit of S.
  auto empty_inside = [&](unsigned S) -> long long {
    for (int i = 0; i < n; ++i)
      if ((S >> i & 1u) && (adj[i] & S & ~(1u << i))) return 0;
    return 1;
  };
  std::vector<long long> f(full + 1, 0);
  for (unsigned S = 1; S <= full; ++S) {
    int v0 = __builtin_ctz(S);
    long long val = empty_inside(S);
    unsigned rest = S & ~(1u << v0);
    // proper subsets T of S containing v0
    for (unsigned sub = rest; ; sub = (sub - 1) & rest) {
      unsigned T = sub | (1u << v0);
      if (T != S) val -= f[T] * empty_inside(S & ~T);
      if (sub == 0) break;
    }
    f[S] = val;
  }
  Rat fact(1);
  for (int i = 2; i <= n; ++i) fact *= i;
  return Rat(f[full]) / fact;
}

template <class T>
struct Cluster {
  std::vector<int> ids;  // sorted, with multiplicity
  int total_size = 0;
  Rat phi;               // Ursell value of H(X)
  long long orderings = 1;  // n!/∏ mult!
  T weight;              // orderings · φ · ∏ w
};

// Ursell of the incompatibility graph of a multiset (repeated polymers are
// mutually incompatible, hence adjacent).
template <class T>
Rat cluster_ursell(const PolymerModel<T>& m, const std::vector<int>& ids) {
  const int n = static_cast<int>(ids.size());
  std::vector<unsigned> adj(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m.incompatible(ids[i], ids[j])) {
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
      }
  return ursell(adj);
}

// All clusters (connected-H multisets) of total size ≤ max_size.  Grown from
// singletons: a connected H always has a removable non-cut vertex, so every
// cluster is reached by repeatedly adding a polymer incompatible with a
// current member (or equal to one).
template <class T>
std::vector<Cluster<T>> enumerate_clusters(const PolymerModel<T>& m, int max_size,
                                           long long budget = 5'000'000) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  long long work = 0;
  auto push = [&](std::vector<int> ids) {
    if (++work > budget) throw CapExceeded("enumerate_clusters budget exhausted");
    if (seen.insert(ids).second) queue.push_back(std::move(ids));
  };
  for (int i = 0; i < m.n(); ++i)
    if (m.size[i] <= max_size) push({i});
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    std::vector<int> cur = queue[qi];
    int tot = 0;
    for (int i : cur) tot += m.size[i];
    std::set<int> cands(cur.begin(), cur.end());
    for (int i : cur) cands.insert(m.incompat[i].begin(), m.incompat[i].end());
    for (int c : cands) {
      if (tot + m.size[c] > max_size) continue;
      std::vector<int> nxt = cur;
      nxt.insert(std::upper_bound(nxt.begin(), nxt.end(), c), c);
      push(std::move(nxt));
    }
  }

  std::vector<Cluster<T>> out;
  for (const auto& ids : seen) {
    Cluster<T> c;
    c.ids = ids;
    for (int i : ids) c.total_size += m.size[i];
    c.phi = cluster_ursell(m, ids);
    long long fact = 1;
    for (size_t i = 2; i <= ids.size(); ++i) fact *= static_cast<long long>(i);
    long long dup = 1;
    for (size_t i = 0; i < ids.size();) {
      size_t j = i;
      while (j < ids.size() && ids[j] == ids[i]) ++j;
      for (size_t r = 2; r <= j - i; ++r) dup *= static_cast<long long>(r);
      i = j;
    }
    c.orderings = fact / dup;
    T prod = [&] {
      if constexpr (std::is_same_v<T, Rat>)
        return c.phi * c.orderings;
      else
        return to_double(c.phi) * static_cast<double>(c.orderings);
    }();
    for (int i : ids) prod *= m.w[i];
    c.weight = prod;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Cluster<T>& a, const Cluster<T>& b) {
    if (a.total_size != b.total_size) return a.total_size < b.total_size;
    return a.ids < b.ids;
  });
  return out;
}

struct KPReport {
  double tau = 0;
  bool pass = false;
  double margin = 0;  // worst slack of α₁(γ) − Σ_{γ′≁γ}|w(γ′)|e^{α₁+α₂}
  double eta = 0;     // e^{−τ/3}
};

// Kotecký–Preiss condition with the schedule α₁(γ)=|γ|, α₂(γ)=(2τ/3)|γ|.
// The pointwise bound |w_γ| ≤ e^{−τ|γ|} is checked, not assumed.
template <class T>
KPReport kp_verify(const PolymerModel<T>& m, double tau) {
  KPReport rep;
  rep.tau = tau;
  rep.eta = std::exp(-tau / 3.0);
  for (int i = 0; i < m.n(); ++i)
    if (detail::weight_abs(m.w[i]) > std::exp(-tau * m.size[i]) * (1 + 1e-12))
      throw WeightBoundViolated("polymer " + std::to_string(i) + " violates |w| <= e^{-tau|gamma|}");
  rep.pass = true;
  rep.margin = std::numeric_limits<double>::infinity();
  const double rate = 1.0 + 2.0 * tau / 3.0;
  for (int i = 0; i < m.n(); ++i) {
    Kahan lhs;
    lhs.add(detail::weight_abs(m.w[i]) * std::exp(rate * m.size[i]));  // γ ≁ γ itself
    for (int j : m.incompat[i])
      if (j != i) lhs.add(detail::weight_abs(m.w[j]) * std::exp(rate * m.size[j]));
    double slack = static_cast<double>(m.size[i]) - lhs.value();
    rep.margin = std::min(rep.margin, slack);
    if (slack < 0) rep.pass = false;
  }
  if (m.n() == 0) rep.margin = 0;
  return rep;
}

// Truncated log Ξ with a certified tail: clusters of total size > m carry the
// α₂ surcharge e^{(2τ/3)·size}, so their absolute sum is at most
// e^{−(2τ/3)(m+1)} Σ_γ |γ|.
template <class T>
std::pair<T, double> log_xi_truncated(const PolymerModel<T>& m, int max_size, const KPReport& kp,
                                      long long budget = 5'000'000) {
  if (!kp.pass) throw NotCertified("Kotecky-Preiss condition not verified");
  T total(0);
  for (const auto& c : enumerate_clusters(m, max_size, budget)) total += c.weight;
  double sum_sizes = 0;
  for (int s : m.size) sum_sizes += s;
  double tail = std::exp(-(2.0 * kp.tau / 3.0) * (max_size + 1)) * sum_sizes;
  return {total, tail};
}

// Bulk/surface decomposition: Q(v) sums w(X)/|X̄| over clusters whose support
// X̄ contains an edge at v; S_x subtracts the clusters not supported inside Λ,
// so that Σ_{v∈Λ∩V_x} Q(v) − S_x regroups the truncated log Ξ of the
// sub-model exactly.
template <class T>
struct QSurface {
  std::map<int, T> Q;  // per vertex
  T S;                 // surface term for the requested parity
};

template <class T>
QSurface<T> q_and_surface(const PolymerModel<T>& m, const Patch& lam, Parity x, int max_size,
                          const std::vector<char>& polymer_in_lambda, long long budget = 5'000'000) {
  if (!m.host) throw ConfigError("q_and_surface requires polymer supports over a host window");
  const HostWindow& h = *m.host;
  QSurface<T> out;
  out.S = T(0);
  for (const auto& c : enumerate_clusters(m, max_size, budget)) {
    std::set<int> bar;
    bool in_lam = true;
    for (int i : c.ids) {
      bar.insert(m.support[i].begin(), m.support[i].end());
      in_lam &= polymer_in_lambda[i] != 0;
    }
    T share = [&] {
      if constexpr (std::is_same_v<T, Rat>)
        return c.weight / Rat(static_cast<long long>(bar.size()));
      else
        return c.weight / static_cast<double>(bar.size());
    }();
    for (int e : bar) {
      for (int v : {h.edges[e].first, h.edges[e].second}) {
        auto [it, fresh] = out.Q.emplace(v, share);
        if (!fresh) it->second += share;
        if (!in_lam && lam.contains(v) && h.parity[v] == x) out.S += share;
      }
    }
  }
  return out;
}

}  // namespace hcps
