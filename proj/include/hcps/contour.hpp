// Contours of the hard-core model on a bipartite window.
//
// A contour is a finite nonempty basis-connected edge set γ such that every
// component of host∖γ sees a single parity among its γ-incident vertices.
// Exactly one component meets the frame (the exterior); the contour's label is
// the parity that would be occupied there.  Interior components carry the
// opposite convention: a component whose γ-incident vertices are odd gets its
// even vertices occupied, and vice versa.
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "hcps/cycle_space.hpp"
#include "hcps/graph.hpp"

namespace hcps {

struct InteriorComponent {
  std::vector<int> verts;  // sorted
  Parity occupied;         // parity occupied inside = opposite of the incident parity
};

struct Contour {
  std::vector<int> edges;  // sorted canonical edge ids
  Parity label = Parity::even;
  std::vector<InteriorComponent> components;
  std::vector<int> int_e, int_o;  // sorted unions by occupied parity
  std::vector<int> interior;      // sorted union of all interior vertices
  long long b_e = 0, b_o = 0;

  int size() const { return static_cast<int>(edges.size()); }
  bool interior_contains(int v) const { return std::binary_search(interior.begin(), interior.end(), v); }
};

inline bool operator==(const Contour& a, const Contour& b) { return a.edges == b.edges; }
inline bool operator<(const Contour& a, const Contour& b) {
  if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
  return a.edges < b.edges;
}

// Reusable scratch buffers: validation flood-fills use timestamps so repeated
// candidates during enumeration never reallocate or clear O(n) state.
struct ContourValidator {
  const HostWindow* host = nullptr;
  const CycleBasis* basis = nullptr;
  std::vector<int> visit_stamp, incident_stamp, in_gamma_stamp;
  std::vector<int> queue;
  int stamp = 0;

  explicit ContourValidator(const CycleBasis& b)
      : host(b.host),
        basis(&b),
        visit_stamp(b.host->n(), 0),
        incident_stamp(b.host->n(), 0),
        in_gamma_stamp(b.host->m(), 0) {}
};

namespace detail {

// Fast necessary condition: two adjacent γ-incident vertices whose joining
// edge is outside γ would sit in one component with mixed incident parity.
inline bool contour_filter_a(const std::vector<int>& edges, ContourValidator& val) {
  const HostWindow& h = *val.host;
  ++val.stamp;
  for (int e : edges) val.in_gamma_stamp[e] = val.stamp;
  for (int e : edges)
    for (int v : {h.edges[e].first, h.edges[e].second}) val.incident_stamp[v] = val.stamp;
  for (int e : edges)
    for (int v : {h.edges[e].first, h.edges[e].second}) {
      if (val.visit_stamp[v] == val.stamp) continue;
      val.visit_stamp[v] = val.stamp;
      for (int f : h.inc[v])
        if (val.in_gamma_stamp[f] != val.stamp && val.incident_stamp[h.other(f, v)] == val.stamp) return false;
    }
  return true;
}

}  // namespace detail

// Validate and decorate an edge set as a contour.  `edges` must be sorted.
// Returns nullopt if the set fails a contour axiom (basis connectivity or
// parity uniformity); throws WindowTooSmall when the window cannot decide.
inline std::optional<Contour> try_make_contour(std::vector<int> edges, ContourValidator& val) {
  const HostWindow& h = *val.host;
  const CycleBasis& b = *val.basis;
  if (edges.empty()) throw ConfigError("contour must be nonempty");
  for (int e : edges) {
    if (e < 0 || e >= h.m()) throw ConfigError("contour references unknown edge");
    for (int v : {h.edges[e].first, h.edges[e].second})
      if (h.dist_frame[v] < b.L)
        throw WindowTooSmall("contour edge within distance " + std::to_string(b.L) + " of the frame");
  }
  if (!basis_connected(edges, b)) return std::nullopt;
  if (!detail::contour_filter_a(edges, val)) return std::nullopt;

  // Flood-fill the components of host∖γ containing γ-incident vertices.  A
  // component whose γ-incident vertices mix parities is a parity violation;
  // abort as soon as one is seen.
  ++val.stamp;
  const int stamp = val.stamp;
  for (int e : edges) {
    val.in_gamma_stamp[e] = stamp;
    for (int v : {h.edges[e].first, h.edges[e].second}) val.incident_stamp[v] = stamp;
  }
  Contour out;
  out.edges = std::move(edges);
  bool have_exterior = false;
  for (int e : out.edges)
    for (int root : {h.edges[e].first, h.edges[e].second}) {
      if (val.visit_stamp[root] == stamp) continue;
      Parity incident = h.parity[root];
      bool meets_frame = false;
      std::vector<int> comp;
      val.queue.clear();
      val.queue.push_back(root);
      val.visit_stamp[root] = stamp;
      for (size_t qi = 0; qi < val.queue.size(); ++qi) {
        int u = val.queue[qi];
        comp.push_back(u);
        if (h.is_frame(u)) meets_frame = true;
        for (int f : h.inc[u]) {
          if (val.in_gamma_stamp[f] == stamp) continue;
          int x = h.other(f, u);
          if (val.visit_stamp[x] == stamp) continue;
          if (val.incident_stamp[x] == stamp && h.parity[x] != incident) return std::nullopt;
          val.visit_stamp[x] = stamp;
          val.queue.push_back(x);
        }
      }
      if (meets_frame) {
        // Frame is connected and disjoint from γ, so this happens once.
        have_exterior = true;
        out.label = opposite(incident);
      } else {
        InteriorComponent ic;
        std::sort(comp.begin(), comp.end());
        ic.verts = std::move(comp);
        ic.occupied = opposite(incident);
        out.components.push_back(std::move(ic));
      }
    }
  if (!have_exterior)
    throw WindowTooSmall("no component of host∖γ meets the frame");

  for (const auto& ic : out.components) {
    auto& dst = ic.occupied == Parity::even ? out.int_e : out.int_o;
    dst.insert(dst.end(), ic.verts.begin(), ic.verts.end());
  }
  std::sort(out.int_e.begin(), out.int_e.end());
  std::sort(out.int_o.begin(), out.int_o.end());
  out.interior = out.int_e;
  out.interior.insert(out.interior.end(), out.int_o.begin(), out.int_o.end());
  std::sort(out.interior.begin(), out.interior.end());

  auto count_parity = [&](const std::vector<int>& vs, Parity p) {
    long long c = 0;
    for (int v : vs) c += h.parity[v] == p;
    return c;
  };
  if (out.label == Parity::even) {
    out.b_e = count_parity(out.int_o, Parity::even);
    out.b_o = -count_parity(out.int_o, Parity::odd);
  } else {
    out.b_e = -count_parity(out.int_e, Parity::even);
    out.b_o = count_parity(out.int_e, Parity::odd);
  }
  return out;
}

inline Contour make_contour(std::vector<int> edges, ContourValidator& val) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (!basis_connected(edges, *val.basis))
    throw NotBasisConnected("contour edge set is not basis connected");
  auto c = try_make_contour(std::move(edges), val);
  if (!c) throw ParityViolation("some component of host∖γ is incident to both parities");
  return *std::move(c);
}

inline Contour make_contour(std::vector<int> edges, const CycleBasis& basis) {
  ContourValidator val(basis);
  return make_contour(std::move(edges), val);
}

// w_γ = λ_e^{−b_e(γ)} λ_o^{−b_o(γ)}, exact.
inline Rat weight(const Contour& g, const Rat& lambda_e, const Rat& lambda_o) {
  if (lambda_e <= 0 || lambda_o <= 0) throw ConfigError("weight: activities must be positive");
  return rat_pow(lambda_e, -g.b_e) * rat_pow(lambda_o, -g.b_o);
}

// log w_γ for the float pipeline.
inline double log_weight(const Contour& g, double log_lambda_e, double log_lambda_o) {
  return -static_cast<double>(g.b_e) * log_lambda_e - static_cast<double>(g.b_o) * log_lambda_o;
}

// γ ∼ γ′ iff their union is not basis connected; never self-compatible.
inline bool compatible(const Contour& a, const Contour& b, const CycleBasis& basis) {
  std::vector<int> u;
  u.reserve(a.edges.size() + b.edges.size());
  std::set_union(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(), std::back_inserter(u));
  return !basis_connected(u, basis);
}

// γ′ ≺ γ iff every endpoint of γ′ lies in Int γ.  Only defined on compatible
// pairs.
inline bool precedes(const Contour& inner, const Contour& outer, const CycleBasis& basis) {
  if (!compatible(inner, outer, basis))
    throw IncompatiblePair("precedes is undefined on incompatible contours");
  const HostWindow& h = *basis.host;
  for (int e : inner.edges)
    for (int v : {h.edges[e].first, h.edges[e].second})
      if (!outer.interior_contains(v)) return false;
  return true;
}

enum class ExternalParity { even, odd, mixed, any };

struct ContourSet {
  std::vector<Contour> contours;
  bool pairwise_compatible = true;
  bool matching = true;
  ExternalParity external_parity = ExternalParity::any;
  std::vector<int> external;  // indices of ≺-maximal contours
};

inline ContourSet classify_set(std::vector<Contour> gamma, const CycleBasis& basis) {
  const HostWindow& h = *basis.host;
  ContourSet s;
  s.contours = std::move(gamma);
  const int n = static_cast<int>(s.contours.size());

  for (int i = 0; i < n && s.pairwise_compatible; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!compatible(s.contours[i], s.contours[j], basis)) {
        s.pairwise_compatible = false;
        break;
      }

  if (s.pairwise_compatible) {
    for (int i = 0; i < n; ++i) {
      bool maximal = true;
      for (int j = 0; j < n && maximal; ++j)
        if (j != i && precedes(s.contours[i], s.contours[j], basis)) maximal = false;
      if (maximal) s.external.push_back(i);
    }
  }

  // Matching: every component of host∖⋃Γ sees one incident parity.
  {
    std::vector<char> in_union(h.m(), 0), incident(h.n(), 0), seen(h.n(), 0);
    for (const auto& c : s.contours)
      for (int e : c.edges) {
        in_union[e] = 1;
        incident[h.edges[e].first] = incident[h.edges[e].second] = 1;
      }
    for (int root = 0; root < h.n() && s.matching; ++root) {
      if (!incident[root] || seen[root]) continue;
      Parity p = h.parity[root];
      std::vector<int> q{root};
      seen[root] = 1;
      for (size_t qi = 0; qi < q.size() && s.matching; ++qi)
        for (int f : h.inc[q[qi]]) {
          if (in_union[f]) continue;
          int x = h.other(f, q[qi]);
          if (seen[x]) continue;
          if (incident[x] && h.parity[x] != p) {
            s.matching = false;
            break;
          }
          seen[x] = 1;
          q.push_back(x);
        }
    }
  }

  if (!s.external.empty()) {
    Parity p = s.contours[s.external[0]].label;
    bool uniform = true;
    for (int i : s.external) uniform &= s.contours[i].label == p;
    s.external_parity = !uniform          ? ExternalParity::mixed
                        : p == Parity::even ? ExternalParity::even
                                            : ExternalParity::odd;
  }
  return s;
}

// U(Λ): Λ-side endpoints of ∂Λ plus Λ-vertices of basis cycles exiting Λ.
inline std::vector<int> boundary_set(const Patch& p, const CycleBasis& basis) {
  const HostWindow& h = *p.host;
  auto bd = boundary_edges(p);
  std::vector<int> u;
  std::vector<char> seen_cycle(basis.n_cycles(), 0);
  for (int e : bd) {
    auto [a, b] = h.edges[e];
    int inside = p.contains(a) ? a : b;
    if (h.dist_frame[inside] < basis.L)
      throw WindowTooSmall("boundary vertex too close to the frame to resolve exiting cycles");
    u.push_back(inside);
    // A cycle exits Λ iff it contains a ∂Λ edge.
    for (int c : basis.per_edge[e]) {
      if (seen_cycle[c]) continue;
      seen_cycle[c] = 1;
      for (int f : basis.cycles[c])
        for (int v : {h.edges[f].first, h.edges[f].second})
          if (p.contains(v)) u.push_back(v);
    }
  }
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

// Edge ids of E(Λ) usable by contours of 𝓒̄(Λ): induced edges not on any
// basis cycle that exits Λ.
inline std::vector<int> allowed_edges(const Patch& p, const CycleBasis& basis) {
  const HostWindow& h = *p.host;
  std::vector<char> banned(h.m(), 0);
  for (int e : boundary_edges(p))
    for (int c : basis.per_edge[e])
      for (int f : basis.cycles[c]) banned[f] = 1;
  std::vector<int> out;
  for (int e : p.edges)
    if (!banned[e]) out.push_back(e);
  return out;
}

// The contour side of the bijection: extend I by the bc ground state outside
// Λ and read off maximal basis-connected sets of unoccupied edges.
inline ContourSet contours_from_independent_set(const std::vector<int>& I, const Patch& p, Parity bc,
                                                const CycleBasis& basis) {
  const HostWindow& h = *p.host;
  std::vector<char> occ(h.n(), 0);
  for (int v : I) {
    if (v < 0 || v >= h.n() || !p.contains(v)) throw ConfigError("independent set not contained in Λ");
    occ[v] = 1;
  }
  for (auto [a, b] : h.edges)
    if (occ[a] && occ[b]) throw NotIndependent("vertices " + std::to_string(a) + "," + std::to_string(b));
  for (int v : boundary_set(p, basis)) {
    bool should = h.parity[v] == bc;
    if (static_cast<bool>(occ[v]) != should)
      throw BoundaryViolation("vertex " + std::to_string(v) + " violates the " +
                              std::string(1, parity_char(bc)) + " boundary condition");
  }
  // Ground-state extension outside Λ; the extension is automatically
  // independent against I because U pins every Λ vertex next to it.
  for (int v = 0; v < h.n(); ++v)
    if (!p.contains(v) && h.parity[v] == bc) occ[v] = 1;

  std::vector<int> unocc;
  for (int e = 0; e < h.m(); ++e)
    if (!occ[h.edges[e].first] && !occ[h.edges[e].second]) unocc.push_back(e);

  // Maximal basis-connected subsets = components in the auxiliary graph.
  std::vector<char> in(h.m(), 0), seen(h.m(), 0);
  for (int e : unocc) in[e] = 1;
  std::vector<Contour> contours;
  ContourValidator val(basis);
  for (int e : unocc) {
    if (seen[e]) continue;
    std::vector<int> comp, q{e};
    seen[e] = 1;
    for (size_t qi = 0; qi < q.size(); ++qi) {
      comp.push_back(q[qi]);
      for (int f : basis.aux[q[qi]])
        if (in[f] && !seen[f]) {
          seen[f] = 1;
          q.push_back(f);
        }
    }
    std::sort(comp.begin(), comp.end());
    contours.push_back(make_contour(std::move(comp), val));
  }
  std::sort(contours.begin(), contours.end());
  return classify_set(std::move(contours), basis);
}

// Inverse direction: the unique independent set whose unoccupied edges are
// exactly ⋃Γ.
inline std::vector<int> independent_set_from_contours(const ContourSet& s, const Patch& p, Parity bc,
                                                      const CycleBasis& basis) {
  const HostWindow& h = *p.host;
  if (!s.pairwise_compatible || !s.matching)
    throw InvalidFamily("contour family must be compatible and matching");
  if (s.external_parity != ExternalParity::any &&
      s.external_parity != (bc == Parity::even ? ExternalParity::even : ExternalParity::odd))
    throw InvalidFamily("external contours must carry the boundary-condition parity");
  {
    std::vector<char> ok(h.m(), 0);
    for (int e : allowed_edges(p, basis)) ok[e] = 1;
    for (const auto& c : s.contours)
      for (int e : c.edges)
        if (!ok[e]) throw InvalidFamily("contour uses an edge outside the admissible region of Λ");
  }

  std::vector<char> in_union(h.m(), 0), incident(h.n(), 0);
  for (const auto& c : s.contours)
    for (int e : c.edges) {
      in_union[e] = 1;
      incident[h.edges[e].first] = incident[h.edges[e].second] = 1;
    }
  // Component-wise occupation: occupy the parity opposite to the incident
  // parity; pure components (no incident vertex) follow the boundary parity.
  std::vector<char> seen(h.n(), 0);
  std::vector<int> I;
  for (int root = 0; root < h.n(); ++root) {
    if (seen[root]) continue;
    std::vector<int> q{root};
    seen[root] = 1;
    std::optional<Parity> inc_par;
    for (size_t qi = 0; qi < q.size(); ++qi) {
      if (incident[q[qi]] && !inc_par) inc_par = h.parity[q[qi]];
      for (int f : h.inc[q[qi]]) {
        if (in_union[f]) continue;
        int x = h.other(f, q[qi]);
        if (!seen[x]) {
          seen[x] = 1;
          q.push_back(x);
        }
      }
    }
    Parity occ_par = inc_par ? opposite(*inc_par) : bc;
    for (int v : q)
      if (p.contains(v) && h.parity[v] == occ_par) I.push_back(v);
  }
  std::sort(I.begin(), I.end());
  return I;
}

// All valid contours of size ≤ k containing edge e.
inline std::vector<Contour> enumerate_contours(const CycleBasis& basis, int e, int k,
                                               long long budget = 20'000'000) {
  const HostWindow& h = *basis.host;
  if (e < 0 || e >= h.m()) throw ConfigError("enumerate_contours: unknown edge");
  if (k < 1) return {};
  for (int v : {h.edges[e].first, h.edges[e].second})
    if (h.dist_frame[v] < basis.L + k)
      throw WindowTooSmall("enumeration root must keep margin L+k from the frame");
  std::vector<char> banned(h.m(), 0);
  for (int f = 0; f < h.m(); ++f)
    for (int v : {h.edges[f].first, h.edges[f].second})
      if (h.dist_frame[v] < basis.L) banned[f] = 1;

  std::vector<Contour> out;
  ContourValidator val(basis);
  long long work = 0;
  detail::grow_connected(basis.aux, e, k, banned, [&](const std::vector<int>& set) {
    if (++work > budget) throw CapExceeded("enumerate_contours budget exhausted");
    std::vector<int> edges = set;
    std::sort(edges.begin(), edges.end());
    if (auto c = try_make_contour(std::move(edges), val)) out.push_back(*std::move(c));
  });
  std::sort(out.begin(), out.end());
  return out;
}

// 𝓒̄(Λ) up to size k: contours within E(Λ) avoiding exiting basis cycles.
inline std::vector<Contour> contours_in(const Patch& p, int k, const CycleBasis& basis,
                                        long long budget = 20'000'000) {
  const HostWindow& h = *basis.host;
  if (k < 1) return {};
  auto allowed = allowed_edges(p, basis);
  std::vector<char> banned(h.m(), 1);
  for (int e : allowed) {
    bool deep = true;
    for (int v : {h.edges[e].first, h.edges[e].second}) deep &= h.dist_frame[v] >= basis.L;
    if (deep) banned[e] = 0;
  }
  std::vector<Contour> out;
  ContourValidator val(basis);
  long long work = 0;
  for (int root : allowed) {
    if (banned[root]) continue;
    detail::grow_connected(basis.aux, root, k, banned, [&](const std::vector<int>& set) {
      if (++work > budget) throw CapExceeded("contours_in budget exhausted");
      std::vector<int> edges = set;
      std::sort(edges.begin(), edges.end());
      if (auto c = try_make_contour(std::move(edges), val)) out.push_back(*std::move(c));
    });
    banned[root] = 1;  // sets through earlier roots already enumerated
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Admissibility criterion: ∂Λ validates as a contour with Λ inside iff all
// Λ-side endpoints of ∂Λ share one parity.
inline bool admissible_patch(const Patch& p) {
  const HostWindow& h = *p.host;
  std::optional<Parity> par;
  for (int e : boundary_edges(p)) {
    auto [a, b] = h.edges[e];
    int inside = p.contains(a) ? a : b;
    if (!par)
      par = h.parity[inside];
    else if (*par != h.parity[inside])
      return false;
  }
  return true;
}

}  // namespace hcps
