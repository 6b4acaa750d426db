// Phase-diagram machinery for parity-transitive hosts: truncated contour
// weights with a smooth cutoff, the ladder of truncated free energies
// ψ̂ˣₙ = qˣ + Q̂ˣₙ/Δ_x, a bisection solver for the coexistence activity ratio,
// and finite-volume free-energy estimates log Z / |E| on growing balls.
//
// The odd activity is parametrized as λ_o = ρ·λ_e^{Δ_o/Δ_e}; along this curve
// the ideal terms qˣ = (log λ_x)/Δ_x differ by (log ρ)/Δ_o, and coexistence is
// the root in ρ of ψ̂ᵒ − ψ̂ᵉ.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hcps/lattice.hpp"
#include "hcps/polymer.hpp"
#include "hcps/solver.hpp"

namespace hcps {

// χ: 1 on (−∞, κ], 0 on [2κ, ∞), cubic smoothstep down in between (C¹ and
// monotone nonincreasing; only these plateau/support/regularity properties
// are used anywhere).
struct CutoffFunction {
  double kappa = 0;

  double operator()(double s) const {
    if (kappa <= 0) throw ConfigError("CutoffFunction: kappa must be positive");
    if (s <= kappa) return 1.0;
    if (s >= 2.0 * kappa) return 0.0;
    double t = (s - kappa) / kappa;
    return 1.0 - t * t * (3.0 - 2.0 * t);
  }
};

// class(γ) = |Int γ|; the ladder defines weights of class n+1 from the level-n
// free energies, so class-1 contours need no ladder input at all.
inline int contour_class(const Contour& g) {
  return std::max<int>(1, static_cast<int>(g.interior.size()));
}

struct PhaseState {
  int n = 0;                      // ladder level
  double psi_e = 0, psi_o = 0;    // truncated free energies ψ̂ˣₙ
  double q_e = 0, q_o = 0;        // ideal terms qˣ = (log λ_x)/Δ_x
  double a_e = 0, a_o = 0;        // gaps aˣₙ = ψ̂ₙ − ψ̂ˣₙ, ψ̂ₙ = max
  double qhat_e = 0, qhat_o = 0;  // cluster corrections Q̂ˣₙ
  double kappa = 0;               // cutoff parameter κ = C_iso·log λ_e/(8Δ_e)
  double rho = 1;                 // λ_o = ρ·λ_e^{Δ_o/Δ_e}
};

// Shared evaluation context: activities, degrees, the cutoff, and the cache of
// untruncated weights / interior partition functions.
struct PhaseContext {
  const CycleBasis* basis = nullptr;
  Rat lambda_e, lambda_o;
  int deg_e = 0, deg_o = 0;
  CutoffFunction chi;
  TildeWeightTable table;
};

// ŵ_γ: class 1 → w̃_γ (= λ_x^{-1} for single-vertex interiors); class n+1 →
// χ((ψ̂ᵒₙ−ψ̂ᵉₙ)·Δ_o·|Int_o γ ∩ V_o|^{1/2})·w̃_γ for even γ, and the mirror
// image (gap sign flipped, Int_e ∩ V_e) for odd γ.  The cutoff argument uses
// the level passed in `state`; the canonical ladder evaluates class c with the
// level-(c−1) state.
inline double truncated_weight(const Contour& g, const PhaseState& state, PhaseContext& ctx) {
  const int cls = contour_class(g);
  const Rat wt = tilde_weight(g, ctx.lambda_e, ctx.lambda_o, *ctx.basis, ctx.table);
  if (cls == 1) return to_double(wt);
  if (state.n < cls - 1)
    throw MissingLowerClass("class " + std::to_string(cls) + " weight needs level " +
                            std::to_string(cls - 1) + ", have " + std::to_string(state.n));
  const HostWindow& h = *ctx.basis->host;
  double gap, scale;
  long long cnt = 0;
  if (g.label == Parity::even) {
    gap = state.psi_o - state.psi_e;
    scale = static_cast<double>(ctx.deg_o);
    for (int v : g.int_o) cnt += h.parity[v] == Parity::odd;
  } else {
    gap = state.psi_e - state.psi_o;
    scale = static_cast<double>(ctx.deg_e);
    for (int v : g.int_e) cnt += h.parity[v] == Parity::even;
  }
  if (cnt == 0) return to_double(wt);  // no occupied interior of the opposite phase: no cutoff
  return ctx.chi(gap * scale * std::sqrt(static_cast<double>(cnt))) * to_double(wt);
}

// Full record of one ladder run: the states, every enumerated contour with its
// class and (un)truncated weight, and the certification data (τ against τ★,
// the window isoperimetric constant, the pool radius) that make the numbers
// reproducible.
struct PhaseLadder {
  std::vector<PhaseState> states;  // states[k] is level k, k = 0..n_max
  double lambda_e = 0, lambda_o = 0, rho = 1;
  int n_max = 0, m = 0, radius = 0;
  double c_iso = 0, kappa = 0, tau = 0, tau_star = 0, lambda_star = 0, eta = 0;
  bool certified = false;   // τ ≥ τ★ for the window's D (diagnostic, not a gate)
  double q_spread = 0;      // worst same-parity probe disagreement in Q̂
  std::vector<Contour> pool;
  std::vector<int> cls;
  std::vector<double> w_tilde;  // w̃ per pool contour
  std::vector<double> w_hat;    // ŵ per pool contour (NaN where class > n_max)

  const PhaseState& final_state() const { return states.back(); }
};

namespace detail {

// γ and γ′ are each basis-connected, so their union is basis-connected exactly
// when some edge of one equals or neighbors (in the auxiliary graph) an edge
// of the other.
inline bool contours_clash(const Contour& a, const Contour& b, const CycleBasis& basis,
                           std::vector<char>& mark) {
  for (int e : a.edges) {
    mark[e] = 1;
    for (int f : basis.aux[e]) mark[f] = 1;
  }
  bool hit = false;
  for (int e : b.edges) hit |= mark[e] != 0;
  for (int e : a.edges) {
    mark[e] = 0;
    for (int f : basis.aux[e]) mark[f] = 0;
  }
  return hit;
}

// Q̂(v) from a cluster expansion: each cluster X with an edge of X̄ at v
// contributes (#edges of X̄ at v)·w(X)/|X̄|.
inline double qhat_at(const std::vector<Cluster<double>>& clusters,
                      const PolymerModel<double>& model, const HostWindow& h, int v) {
  Kahan acc;
  for (const auto& c : clusters) {
    std::set<int> bar;
    for (int i : c.ids) bar.insert(model.support[i].begin(), model.support[i].end());
    int cnt = 0;
    for (int e : bar) cnt += h.edges[e].first == v || h.edges[e].second == v;
    if (cnt) acc.add(static_cast<double>(cnt) * c.weight / static_cast<double>(bar.size()));
  }
  return acc.value();
}

}  // namespace detail

// The ladder: level 0 is the ideal gas (ψ̂ˣ₀ = qˣ); level n sums clusters of
// class-≤n contours of total size ≤ m for Q̂ˣₙ, with weights ŵ fixed at the
// level where their class first appears.  Q̂ is evaluated at the deepest
// even/odd probe vertices; a second probe of each parity records how far the
// window is from the translation-invariant ideal (q_spread).
inline PhaseLadder iterate_psi(const Generated& g, double lambda_e, double rho, int n_max, int m,
                               bool enforce_certification = false,
                               long long budget = 20'000'000, double c_iso_hint = -1) {
  if (g.sym.kind == SymmetryKind::none)
    throw UnsupportedFamily("iterate_psi needs a parity-transitive (or stronger) host");
  if (!(lambda_e > 1)) throw ActivityTooSmall("iterate_psi needs lambda_e > 1");
  if (!(rho > 0) || !std::isfinite(rho)) throw ConfigError("rho must be positive and finite");
  if (n_max < 0 || m < 1) throw ConfigError("need n_max >= 0 and m >= 1");
  const HostWindow& h = g.window;
  const CycleBasis& basis = g.basis;
  const int de = g.sym.deg_e, dn = g.sym.deg_o;

  PhaseLadder lad;
  lad.lambda_e = lambda_e;
  lad.rho = rho;
  lad.lambda_o = rho * std::pow(lambda_e, static_cast<double>(dn) / de);
  lad.n_max = n_max;
  lad.m = m;
  // The exhaustive isoperimetric scan is expensive; callers that evaluate the
  // ladder repeatedly on one host (the coexistence bisection) pass it in.
  lad.c_iso = c_iso_hint >= 0 ? c_iso_hint : certified_c_iso(h, 4);
  lad.kappa = lad.c_iso * std::log(lambda_e) / (8.0 * de);
  const double qe = std::log(lambda_e) / de, qo = std::log(lad.lambda_o) / dn;
  lad.tau = std::min(qe, qo) - 3.0;
  lad.eta = std::exp(-lad.tau / 3.0);
  lad.tau_star = 3.0 * (1.0 + std::log((1.0 + std::exp(1.0)) * basis.D));
  lad.lambda_star = lambda_star(basis.D, h.max_degree);
  lad.certified = lad.tau >= lad.tau_star;
  if (enforce_certification && !lad.certified)
    throw ActivityTooSmall("tau = " + std::to_string(lad.tau) + " below tau* = " +
                           std::to_string(lad.tau_star));

  // Probes: deepest even vertex, its deepest (odd) neighbor, and a
  // second-probe pair one more step in.
  int ve = -1;
  for (int v : g.center_candidates)
    if (h.parity[v] == Parity::even) {
      ve = v;
      break;
    }
  if (ve < 0) throw WindowTooSmall("no deep even vertex available");
  auto deepest_nb = [&](int v, int skip) {
    int best = -1;
    for (int u : h.adj[v])
      if (u != skip && (best < 0 || h.dist_frame[u] > h.dist_frame[best])) best = u;
    return best;
  };
  const int vo = deepest_nb(ve, -1);
  if (vo < 0) throw WindowTooSmall("even probe has no neighbor");
  const int ve2 = deepest_nb(vo, ve);
  const int vo2 = deepest_nb(ve, vo);

  // Pool: every contour of size ≤ m whose support can meet an edge at a probe
  // lies within (L/2 − 1)-steps per edge of it; +2 covers the probe offsets.
  const int span = m * std::max(1, basis.L / 2 - 1) + 2;
  const int radius = std::min(h.dist_frame[ve] - 1, span + 2);
  if (radius < 1) throw WindowTooSmall("probe too close to the frame for any contour pool");
  lad.radius = radius;
  Patch region = ball(h, ve, radius);
  lad.pool = contours_in(region, m, basis, budget);
  const int np = static_cast<int>(lad.pool.size());

  PhaseContext ctx{&basis, rat_from_double(lambda_e), rat_from_double(lad.lambda_o),
                   de,     dn,                        CutoffFunction{lad.kappa},
                   {}};
  lad.cls.reserve(np);
  lad.w_tilde.reserve(np);
  for (const auto& c : lad.pool) {
    lad.cls.push_back(contour_class(c));
    lad.w_tilde.push_back(to_double(tilde_weight(c, ctx.lambda_e, ctx.lambda_o, basis, ctx.table)));
  }
  lad.w_hat.assign(np, std::numeric_limits<double>::quiet_NaN());

  // Pairwise incompatibilities once, shared by every level's sub-model.
  std::vector<std::vector<int>> clash(np);
  {
    std::vector<char> mark(h.m(), 0);
    for (int i = 0; i < np; ++i)
      for (int j = i + 1; j < np; ++j)
        if (detail::contours_clash(lad.pool[i], lad.pool[j], basis, mark)) {
          clash[i].push_back(j);
          clash[j].push_back(i);
        }
  }

  PhaseState base;
  base.q_e = qe;
  base.q_o = qo;
  base.psi_e = qe;
  base.psi_o = qo;
  const double psi0 = std::max(qe, qo);
  base.a_e = psi0 - qe;
  base.a_o = psi0 - qo;
  base.kappa = lad.kappa;
  base.rho = rho;
  lad.states.push_back(base);

  for (int lvl = 1; lvl <= n_max; ++lvl) {
    for (int i = 0; i < np; ++i)
      if (lad.cls[i] == lvl)
        lad.w_hat[i] = truncated_weight(lad.pool[i], lad.states[lvl - 1], ctx);

    PhaseState st = base;
    st.n = lvl;
    for (Parity x : {Parity::even, Parity::odd}) {
      std::vector<int> ids;
      for (int i = 0; i < np; ++i)
        if (lad.pool[i].label == x && lad.cls[i] <= lvl) ids.push_back(i);
      PolymerModel<double> model;
      model.host = &h;
      std::vector<int> local(np, -1);
      for (size_t k = 0; k < ids.size(); ++k) local[ids[k]] = static_cast<int>(k);
      for (int i : ids) {
        model.size.push_back(lad.pool[i].size());
        model.w.push_back(lad.w_hat[i]);
        model.support.push_back(lad.pool[i].edges);
        std::vector<int> inc;
        for (int j : clash[i])
          if (local[j] >= 0) inc.push_back(local[j]);
        std::sort(inc.begin(), inc.end());
        model.incompat.push_back(std::move(inc));
      }
      auto clusters = enumerate_clusters(model, m, budget);
      const int p1 = x == Parity::even ? ve : vo;
      const int p2 = x == Parity::even ? ve2 : vo2;
      double q1 = detail::qhat_at(clusters, model, h, p1);
      if (p2 >= 0)
        lad.q_spread = std::max(lad.q_spread, std::abs(q1 - detail::qhat_at(clusters, model, h, p2)));
      (x == Parity::even ? st.qhat_e : st.qhat_o) = q1;
    }
    st.psi_e = st.q_e + st.qhat_e / de;
    st.psi_o = st.q_o + st.qhat_o / dn;
    const double psi = std::max(st.psi_e, st.psi_o);
    st.a_e = psi - st.psi_e;
    st.a_o = psi - st.psi_o;
    lad.states.push_back(st);
  }
  return lad;
}

// Root of ψ̂ᵒ − ψ̂ᵉ = (log ρ)/Δ_o − Q̂ᵉ/Δ_e + Q̂ᵒ/Δ_o in ρ over (1/2, 2).
struct CoexistenceResult {
  double rho_c = 1;
  double lambda_oc = 0;
  double residual = 0;  // objective at the reported root
  bool monotone = true; // objective nondecreasing across the sampled bracket
  int evals = 0;
  PhaseLadder ladder;   // the run at ρ_c
};

inline CoexistenceResult coexistence_solve(const Generated& g, double lambda_e, int n_max, int m,
                                           double tol = 1e-10, long long budget = 20'000'000) {
  if (!(tol > 0)) throw ConfigError("tol must be positive");
  CoexistenceResult res;
  const double c_iso = certified_c_iso(g.window, 4);
  auto objective = [&](double rho) {
    ++res.evals;
    PhaseLadder lad = iterate_psi(g, lambda_e, rho, n_max, m, false, budget, c_iso);
    const PhaseState& s = lad.final_state();
    return std::make_pair(s.psi_o - s.psi_e, std::move(lad));
  };

  double lo = 0.5 + 1e-9, hi = 2.0 - 1e-9;
  double flo = objective(lo).first, fhi = objective(hi).first;
  if (!(flo <= 0.0) || !(fhi >= 0.0))
    throw NoRootInBracket("objective has no sign change on (1/2, 2): f(lo) = " +
                          std::to_string(flo) + ", f(hi) = " + std::to_string(fhi));

  // Uniqueness evidence: the objective should be increasing in ρ.
  double prev = flo;
  for (int k = 1; k <= 4; ++k) {
    double r = lo + (hi - lo) * k / 5.0;
    double f = objective(r).first;
    if (f < prev) res.monotone = false;
    prev = f;
  }
  if (fhi < prev) res.monotone = false;

  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (objective(mid).first < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  res.rho_c = 0.5 * (lo + hi);
  auto [f, lad] = objective(res.rho_c);
  res.residual = f;
  res.ladder = std::move(lad);
  res.lambda_oc = res.ladder.lambda_o;
  return res;
}

// log Z^bc_{B_r(v)} / |E(B_r(v))| on growing balls around the deepest even
// vertex, with the surface-to-volume ratio alongside as the convergence
// diagnostic.
struct FreeEnergyPoint {
  int radius = 0;
  long long n_edges = 0;
  double log_z = 0;
  double value = 0;           // log Z / |E|
  double boundary_ratio = 0;  // |∂B| / |B|
};

inline std::vector<FreeEnergyPoint> free_energy_estimate(const Generated& g, const Rat& le,
                                                         const Rat& lo, Parity bc,
                                                         const std::vector<int>& radii,
                                                         long long budget = 2'000'000) {
  if (g.center_candidates.empty()) throw WindowTooSmall("no deep vertex available");
  const HostWindow& h = g.window;
  const int center = g.center_candidates.front();
  std::vector<FreeEnergyPoint> out;
  for (int r : radii) {
    if (r < 1) throw ConfigError("ball radius must be >= 1");
    Patch B = ball(h, center, r);
    if (B.edges.empty()) throw ConfigError("free_energy_estimate: ball has no edges");
    BoundaryCondition cond = boundary_set(B, bc, g.basis);
    FreeEnergyPoint pt;
    pt.radius = r;
    pt.n_edges = static_cast<long long>(B.edges.size());
    pt.log_z = log_rat(exact_Z(B, cond, le, lo, budget));
    pt.value = pt.log_z / static_cast<double>(pt.n_edges);
    pt.boundary_ratio =
        static_cast<double>(boundary_edges(B).size()) / static_cast<double>(B.size());
    out.push_back(pt);
  }
  return out;
}

}  // namespace hcps
