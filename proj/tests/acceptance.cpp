// Acceptance battery: one PASS/FAIL line per criterion, exit code = #failures.
// Usage: hcps_acceptance <path-to-hcps-cli>   (the CLI path is needed for the
// determinism criterion; all other criteria run in-process).

#include <hcps/contour.hpp>
#include <hcps/cycle_space.hpp>
#include <hcps/graph.hpp>
#include <hcps/io.hpp>
#include <hcps/lattice.hpp>
#include <hcps/numeric.hpp>
#include <hcps/phase.hpp>
#include <hcps/polymer.hpp>
#include <hcps/solver.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace hcps;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int num, bool ok, const std::string& detail, double secs) {
  std::ostringstream line;
  line << "criterion " << num << ": " << (ok ? "PASS" : "FAIL") << " — " << detail << " ["
       << std::fixed << std::setprecision(1) << secs << "s]";
  std::cout << line.str() << "\n" << std::flush;
  if (!ok) ++g_failures;
}

Generated make_host(Family f, int side) {
  HostSpec spec;
  spec.family = f;
  spec.side = side;
  return generate(spec);
}

int deep_vertex(const Generated& g, Parity p) {
  for (int v : g.center_candidates)
    if (g.window.parity[v] == p) return v;
  throw ConfigError("no deep vertex of requested parity");
}

// Deepest neighbour of v, excluding `avoid`.
int deep_neighbor(const Generated& g, int v, int avoid = -1) {
  int best = -1;
  for (int u : g.window.adj[v])
    if (u != avoid && (best < 0 || g.window.dist_frame[u] > g.window.dist_frame[best])) best = u;
  return best;
}

Patch rect_patch(const Generated& g, int ci, int cj, int di, int dj) {
  // Axis-aligned block on a grid window; vid = i*N + j.
  const int N = static_cast<int>(std::lround(std::sqrt(double(g.window.n()))));
  std::vector<int> verts;
  for (int i = ci - di; i <= ci + di; ++i)
    for (int j = cj - dj; j <= cj + dj; ++j) verts.push_back(i * N + j);
  return make_patch(g.window, verts);
}

std::pair<int, int> grid_center(const Generated& g) {
  const int N = static_cast<int>(std::lround(std::sqrt(double(g.window.n()))));
  int c = deep_vertex(g, Parity::even);
  return {c / N, c % N};
}

// All independent subsets of the free vertices of a patch under bc, each
// completed with the pinned occupied vertices. Returns nullopt if > 20 free.
std::optional<std::vector<std::vector<int>>> bc_independent_sets(const Patch& p, Parity bc,
                                                                 const CycleBasis& basis) {
  const HostWindow& h = *p.host;
  auto U = boundary_set(p, basis);
  std::set<int> pinned(U.begin(), U.end());
  std::vector<int> base, free_v;
  for (int v : p.verts) {
    if (pinned.count(v)) {
      if (h.parity[v] == bc) base.push_back(v);
    } else {
      free_v.push_back(v);
    }
  }
  if (free_v.size() > 20) return std::nullopt;
  std::vector<std::vector<int>> out;
  for (unsigned long long mask = 0; mask < (1ull << free_v.size()); ++mask) {
    std::vector<int> I = base;
    for (size_t i = 0; i < free_v.size(); ++i)
      if (mask >> i & 1) I.push_back(free_v[i]);
    std::sort(I.begin(), I.end());
    std::set<int> is(I.begin(), I.end());
    bool indep = true;
    for (int v : I) {
      for (int u : h.adj[v]) indep &= !is.count(u);
      if (!indep) break;
    }
    if (indep) out.push_back(std::move(I));
  }
  return out;
}

template <class T>
PolymerModel<T> contour_model(const std::vector<Contour>& pool, const CycleBasis& basis,
                              const Rat& le, const Rat& lo) {
  PolymerModel<T> m;
  m.host = basis.host;
  for (const auto& c : pool) {
    m.size.push_back(c.size());
    if constexpr (std::is_same_v<T, Rat>)
      m.w.push_back(weight(c, le, lo));
    else
      m.w.push_back(std::exp(log_weight(c, log_rat(le), log_rat(lo))));
    m.support.push_back(c.edges);
  }
  m.incompat.assign(pool.size(), {});
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = i + 1; j < pool.size(); ++j)
      if (!compatible(pool[i], pool[j], basis)) {
        m.incompat[i].push_back(static_cast<int>(j));
        m.incompat[j].push_back(static_cast<int>(i));
      }
  return m;
}

// ---------------------------------------------------------------------------
// 1. Bijection round-trip on grid and dice patches, both boundary parities.
bool crit1(std::string& detail) {
  auto gz = make_host(Family::grid_zd, 10);
  auto gd = make_host(Family::dice, 4);
  auto [ci, cj] = grid_center(gz);
  int cz = deep_vertex(gz, Parity::even);
  int ve = deep_vertex(gd, Parity::even);
  int vo = deep_neighbor(gd, ve);

  std::vector<std::pair<const Generated*, Patch>> patches;
  patches.emplace_back(&gz, ball(gz.window, cz, 2));
  patches.emplace_back(&gz, ball(gz.window, cz, 3));
  patches.emplace_back(&gz, rect_patch(gz, ci, cj, 2, 2));   // 5x5 block
  patches.emplace_back(&gz, rect_patch(gz, ci, cj, 1, 2));   // 3x5 block
  patches.emplace_back(&gd, ball(gd.window, ve, 1));
  patches.emplace_back(&gd, ball(gd.window, ve, 2));
  patches.emplace_back(&gd, ball(gd.window, vo, 1));
  patches.emplace_back(&gd, ball(gd.window, vo, 2));

  long total = 0;
  for (auto& [g, lam] : patches) {
    std::set<int> ok_edges;
    for (int e : allowed_edges(lam, g->basis)) ok_edges.insert(e);
    for (Parity bc : {Parity::even, Parity::odd}) {
      auto sets = bc_independent_sets(lam, bc, g->basis);
      if (!sets) {
        detail = "patch has more than 20 free vertices";
        return false;
      }
      std::set<std::vector<std::vector<int>>> keys;
      for (const auto& I : *sets) {
        auto gamma = contours_from_independent_set(I, lam, bc, g->basis);
        if (!gamma.pairwise_compatible || !gamma.matching) {
          detail = "image family not compatible/matching";
          return false;
        }
        for (const auto& c : gamma.contours)
          for (int e : c.edges)
            if (!ok_edges.count(e)) {
              detail = "contour uses a forbidden (exiting-cycle) edge";
              return false;
            }
        if (independent_set_from_contours(gamma, lam, bc, g->basis) != I) {
          detail = "round trip is not the identity";
          return false;
        }
        std::vector<std::vector<int>> key;
        for (const auto& c : gamma.contours) key.push_back(c.edges);
        keys.insert(key);
        ++total;
      }
      if (keys.size() != sets->size()) {
        detail = "map is not injective";
        return false;
      }
    }
  }
  detail = std::to_string(total) + " independent sets round-tripped over " +
           std::to_string(patches.size()) + " patches x 2 boundary parities, all identical";
  return true;
}

// ---------------------------------------------------------------------------
// 2. exact_Z == contour_Z == polymer_Z as exact rationals on >= 200 cases.
bool crit2(std::string& detail) {
  auto g = make_host(Family::grid_zd, 10);
  auto [ci, cj] = grid_center(g);
  const int N = static_cast<int>(std::lround(std::sqrt(double(g.window.n()))));
  int c = ci * N + cj;

  std::vector<Patch> patches;
  patches.push_back(make_patch(g.window, {c}));
  patches.push_back(make_patch(g.window, {c, c + 1}));
  patches.push_back(make_patch(g.window, {c, c + 1, c + N}));
  patches.push_back(make_patch(g.window, {c, c + 1, c + N, c + N + 1}));
  patches.push_back(ball(g.window, c, 1));
  patches.push_back(rect_patch(g, ci, cj, 1, 1));  // 3x3 block
  patches.push_back(ball(g.window, c, 2));

  const std::vector<Rat> lams = {Rat(1, 2), Rat(1), Rat(3), Rat(10)};
  long cases = 0;
  for (const auto& p : patches)
    for (const Rat& le : lams)
      for (const Rat& lo : lams)
        for (Parity x : {Parity::even, Parity::odd}) {
          Rat ze = exact_Z(p, boundary_set(p, x, g.basis), le, lo);
          Rat zc = contour_Z(p, x, le, lo, g.basis);
          Rat zp = polymer_Z(p, x, le, lo, g.basis);
          if (!(ze == zc && zc == zp)) {
            detail = "mismatch on case " + std::to_string(cases);
            return false;
          }
          ++cases;
        }
  detail = std::to_string(cases) + " (patch, lambda_e, lambda_o, bc) cases agree exactly";
  return cases >= 200;
}

// ---------------------------------------------------------------------------
// 3. Counts through a fixed edge bounded by (eD)^(k-1), k <= 8, plus an
//    independent exhaustive oracle (BFS with global dedup over sorted edge
//    sets — a different enumeration scheme than the library's banned-list
//    growth).
bool crit3(std::string& detail) {
  auto g = make_host(Family::grid_zd, 20);
  const HostWindow& h = g.window;
  if (g.basis.D != 6) {
    detail = "computed D != 6 on the planar grid";
    return false;
  }
  int c = deep_vertex(g, Parity::even);
  int e0 = -1;
  for (int e = 0; e < h.m(); ++e)
    if ((h.edges[e].first == c && h.edges[e].second == c + 1) ||
        (h.edges[e].second == c && h.edges[e].first == c + 1))
      e0 = e;
  if (e0 < 0) {
    detail = "no deep reference edge";
    return false;
  }

  const int kmax = 8;
  auto lib = enumerate_contours(g.basis, e0, kmax, 200'000'000);
  std::map<int, long> count_by_size;
  for (const auto& cgam : lib) ++count_by_size[cgam.size()];
  for (auto [k, cnt] : count_by_size)
    if (double(cnt) > std::pow(std::exp(1.0) * g.basis.D, k - 1)) {
      detail = "count at size " + std::to_string(k) + " exceeds (eD)^(k-1)";
      return false;
    }

  // Oracle: all basis-connected edge sets containing e0, sizes <= kmax.
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  seen.insert({e0});
  queue.push_back({e0});
  long long work = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    auto cur = queue[head];
    if (static_cast<int>(cur.size()) == kmax) continue;
    for (int e : cur)
      for (int f : g.basis.aux[e]) {
        if (++work > 400'000'000) {
          detail = "oracle budget exhausted";
          return false;
        }
        if (std::binary_search(cur.begin(), cur.end(), f)) continue;
        auto nxt = cur;
        nxt.insert(std::lower_bound(nxt.begin(), nxt.end(), f), f);
        if (seen.insert(nxt).second) queue.push_back(std::move(nxt));
      }
  }
  ContourValidator val(g.basis);
  std::set<std::vector<int>> oracle;
  for (const auto& s : seen)
    if (auto cgam = try_make_contour(s, val)) oracle.insert(cgam->edges);
  std::set<std::vector<int>> lib_keys;
  for (const auto& cgam : lib) lib_keys.insert(cgam.edges);
  if (oracle != lib_keys) {
    detail = "oracle and enumerate_contours disagree (" + std::to_string(oracle.size()) + " vs " +
             std::to_string(lib_keys.size()) + ")";
    return false;
  }
  detail = std::to_string(lib.size()) + " contours through the edge, sizes within (eD)^(k-1); oracle over " +
           std::to_string(seen.size()) + " connected edge sets matches exactly";
  return true;
}

// ---------------------------------------------------------------------------
// 4. Convergence certification at lambda*, cluster-correction bounds, and the
//    certified tail against exact counts.
bool crit4(std::string& detail) {
  auto g = make_host(Family::grid_zd, 10);
  int c = deep_vertex(g, Parity::even);
  const double lam_star = lambda_star(g.basis.D, 4);
  const double tau = std::log(lam_star) / 4.0 - 3.0;
  const double eta = std::exp(-tau / 3.0);
  const Rat ls = rat_from_double(lam_star);

  auto pool = contours_in(ball(g.window, c, 5), 8, g.basis);
  auto model = contour_model<double>(pool, g.basis, ls, ls);
  auto rep = kp_verify(model, tau);
  if (!rep.pass) {
    detail = "kp_verify fails at lambda*";
    return false;
  }

  auto lam = ball(g.window, c, 3);
  std::vector<char> in_lam(pool.size(), 0);
  {
    std::set<int> ok;
    for (int e : allowed_edges(lam, g.basis)) ok.insert(e);
    for (size_t i = 0; i < pool.size(); ++i) {
      bool in = true;
      for (int e : pool[i].edges) in &= ok.count(e) == 1;
      in_lam[i] = in;
    }
  }
  const double n_boundary = double(boundary_set(lam, g.basis).size());
  for (Parity x : {Parity::even, Parity::odd}) {
    auto qs = q_and_surface(model, lam, x, 12, in_lam);
    for (const auto& [v, q] : qs.Q)
      if (std::abs(q) > eta) {
        detail = "|Q(v)| exceeds e^{-tau/3}";
        return false;
      }
    if (std::abs(qs.S) > eta * n_boundary) {
      detail = "|S| exceeds e^{-tau/3}|dLambda|";
      return false;
    }
  }

  auto [cir, cjr] = grid_center(g);
  std::vector<Patch> patches = {ball(g.window, c, 1), rect_patch(g, cir, cjr, 1, 1),
                                ball(g.window, c, 2), ball(g.window, c, 3)};
  long checked = 0;
  double worst_ratio = 0;
  for (const auto& p : patches)
    for (Parity x : {Parity::even, Parity::odd})
      for (double eps : {1e-3, 1e-6}) {
        auto [lz, cert] = fptas_log_Z(p, x, lam_star, eps, g.basis);
        double exact = log_rat(exact_Z(p, boundary_set(p, x, g.basis), ls, ls));
        double err = std::abs(lz - exact);
        if (err > cert.tail + 1e-9) {
          detail = "fptas error exceeds the certified tail";
          return false;
        }
        if (cert.tail > eps) {
          detail = "certified tail exceeds requested epsilon";
          return false;
        }
        worst_ratio = std::max(worst_ratio, cert.tail > 0 ? err / cert.tail : 0.0);
        ++checked;
      }
  std::ostringstream os;
  os << "kp_verify passes at lambda*=" << std::scientific << std::setprecision(2) << lam_star
     << "; Q/S bounds hold; " << checked << " fptas runs within tail (worst err/tail "
     << std::fixed << std::setprecision(3) << worst_ratio << ")";
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------------------
// 5. |w~_gamma| <= (e^3 lambda^{-1/Delta})^{|gamma|} on grid and slab.
bool crit5(std::string& detail) {
  long checked = 0;
  for (Family fam : {Family::grid_zd, Family::slab_zd2}) {
    HostSpec spec;
    spec.family = fam;
    spec.side = fam == Family::grid_zd ? 14 : 6;
    auto g = generate(spec);
    int delta = 0;
    for (int v = 0; v < g.window.n(); ++v)
      delta = std::max(delta, static_cast<int>(g.window.adj[v].size()));
    int ve = deep_vertex(g, Parity::even);

    std::vector<Contour> pool;
    for (int r = g.window.dist_frame[ve] - 1; r >= 2; --r) {
      try {
        pool = contours_in(ball(g.window, ve, r), 10, g.basis, 100'000'000);
        break;
      } catch (const CapExceeded&) {
        continue;
      }
    }
    if (pool.empty()) {
      detail = "no size-<=10 contour pool on family " + std::to_string(int(fam));
      return false;
    }
    for (double mult : {1.0, 10.0}) {
      const double lam = mult * lambda_star(g.basis.D, delta);
      const Rat lr = rat_from_double(lam);
      TildeWeightTable table;
      const double log_bound_base = 3.0 - std::log(lam) / delta;
      for (const auto& cgam : pool) {
        double lw = std::log(std::abs(to_double(tilde_weight(cgam, lr, lr, g.basis, table))));
        if (lw > cgam.size() * log_bound_base + 1e-9) {
          detail = "weight bound violated at size " + std::to_string(cgam.size());
          return false;
        }
        ++checked;
      }
    }
  }
  detail = std::to_string(checked) + " tilde weights within (e^3 lambda^{-1/Delta})^{|gamma|} on grid and slab";
  return true;
}

// ---------------------------------------------------------------------------
// 6. Occupation signature of the ordered phase: center marginal > 1/2 at
//    lambda = 50 under even bc, increasing over {5, 10, 50, 200}.
bool crit6(std::string& detail) {
  auto g = make_host(Family::grid_zd, 10);
  int c = deep_vertex(g, Parity::even);
  auto p = ball(g.window, c, 3);
  Rat at50 = marginal(p, Parity::even, Rat(50), Rat(50), c, g.basis);
  if (!(at50 > Rat(1, 2))) {
    detail = "marginal at lambda=50 is not above 1/2";
    return false;
  }
  Rat prev(-1);
  for (int l : {5, 10, 50, 200}) {
    Rat m = marginal(p, Parity::even, Rat(l), Rat(l), c, g.basis);
    if (!(m > prev)) {
      detail = "marginal not increasing at lambda=" + std::to_string(l);
      return false;
    }
    prev = m;
  }
  std::ostringstream os;
  os << "center marginal " << std::fixed << std::setprecision(4) << to_double(at50)
     << " > 1/2 at lambda=50, strictly increasing over {5,10,50,200}";
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------------------
// 7. Sampler fidelity: empirical TV distance against the exact law.
bool crit7(std::string& detail) {
  auto g = make_host(Family::grid_zd, 8);
  auto [ci, cj] = grid_center(g);
  auto p = rect_patch(g, ci, cj, 2, 2);  // 5x5 block, 9 free vertices
  const Rat le(2), lo(2);
  const double eps = 0.01;
  const long N = 100000;

  auto sets = bc_independent_sets(p, Parity::even, g.basis);
  if (!sets || sets->size() < 2) {
    detail = "reference enumeration failed";
    return false;
  }
  std::map<std::vector<int>, double> prob;
  Rat z(0);
  for (const auto& I : *sets) {
    int ne = 0, no = 0;
    for (int v : I) (g.window.parity[v] == Parity::even ? ne : no)++;
    Rat w = rat_pow(le, ne) * rat_pow(lo, no);
    prob[I] = to_double(w);
    z += w;
  }
  const double zd = to_double(z);
  for (auto& [I, w] : prob) w /= zd;

  std::mt19937_64 rng(20260823ull);
  std::map<std::vector<int>, long> emp;
  for (long i = 0; i < N; ++i) {
    auto I = sample(p, Parity::even, le, lo, eps, rng, g.basis);
    std::sort(I.begin(), I.end());
    ++emp[I];
  }
  double tv = 0;
  for (const auto& [I, pr] : prob) {
    auto it = emp.find(I);
    double f = it == emp.end() ? 0.0 : double(it->second) / N;
    tv += std::abs(f - pr);
  }
  for (const auto& [I, cnt] : emp)
    if (!prob.count(I)) tv += double(cnt) / N;  // mass outside the support
  tv /= 2;

  const double slack = eps + 3.0 * std::sqrt(std::pow(2.0, 15) / double(N));
  std::ostringstream os;
  os << "TV distance " << std::fixed << std::setprecision(4) << tv << " over " << N
     << " draws (allowed " << std::setprecision(4) << slack << ", support "
     << prob.size() << " configurations)";
  detail = os.str();
  return tv <= slack;
}

// ---------------------------------------------------------------------------
// 8. Dice coexistence curve: gap = log lambda_{6,c} - 2 log lambda_3.
//    (a) |gap| decreasing in lambda_3; (b) lambda_3 * gap -> 6 within 20% at
//    lambda_3 = 400 with clusters of total size <= 6.
bool crit8a(std::string& detail, std::vector<double>& coefs) {
  auto g = make_host(Family::dice, 4);
  double prev_gap = std::numeric_limits<double>::infinity();
  std::ostringstream os;
  os << "gap(lambda_3)=";
  for (double l3 : {50.0, 100.0, 200.0, 400.0}) {
    auto res = coexistence_solve(g, l3, 1, 6, 1e-8, 100'000'000);
    double gap = std::log(res.lambda_oc) - 2.0 * std::log(l3);
    coefs.push_back(l3 * gap);
    os << std::scientific << std::setprecision(3) << gap << (l3 < 400 ? "," : "");
    if (!(std::abs(gap) < std::abs(prev_gap))) {
      detail = "|gap| not decreasing at lambda_3=" + std::to_string(int(l3));
      return false;
    }
    prev_gap = gap;
  }
  detail = os.str() + " strictly shrinking";
  return true;
}

bool crit8b(std::string& detail, const std::vector<double>& coefs) {
  if (coefs.size() != 4) {
    detail = "coexistence solve did not complete";
    return false;
  }
  const double coef = coefs.back();
  std::ostringstream os;
  os << "lambda_3 * gap at lambda_3=400 measured " << std::fixed << std::setprecision(4) << coef
     << ", required 6 within 20% (i.e. in [4.8, 7.2]); measured values over the grid:";
  for (double v : coefs) os << " " << std::setprecision(4) << v;
  os << ". The truncated coexistence equation gives log rho_c = 2/lambda_3 + O(lambda_3^-2)"
        " (single-vacancy defect per degree-3 vertex), so the limiting coefficient is 2, not 6;"
        " reported as a failing criterion rather than adjusted.";
  detail = os.str();
  return coef >= 4.8 && coef <= 7.2;
}

// ---------------------------------------------------------------------------
// 9. Symmetry controls: rho_c = 1 on the grid; decorated host is refused.
bool crit9(std::string& detail) {
  auto g = make_host(Family::grid_zd, 10);
  auto res = coexistence_solve(g, 30.0, 1, 4, 1e-12, 100'000'000);
  if (std::abs(res.rho_c - 1.0) > 1e-10) {
    detail = "grid rho_c deviates from 1 by more than 1e-10";
    return false;
  }
  auto dec = make_host(Family::decorated_zd2, 6);
  if (dec.sym.kind != SymmetryKind::none) {
    detail = "decorated host not flagged kind=none";
    return false;
  }
  std::string msg;
  try {
    iterate_psi(dec, 50.0, 1.0, 1, 3);
    detail = "phase iteration accepted the decorated host";
    return false;
  } catch (const UnsupportedFamily& e) {
    msg = e.what();
  }
  std::ostringstream os;
  os << "grid |rho_c - 1| = " << std::scientific << std::setprecision(2)
     << std::abs(res.rho_c - 1.0) << "; decorated host flagged none and refused (\"" << msg
     << "\")";
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------------------
// 10. CLI determinism across thread counts and re-runs.
struct CliRun {
  std::string args;   // after the binary path
  std::string name;   // artifact stem
};

bool crit10(const std::string& cli, std::string& detail) {
  fs::path dir = fs::path("acceptance_cli_artifacts");
  fs::create_directories(dir);
  std::string gen_host = (dir / "host.hcg").string();
  {
    std::string cmd = cli + " gen --family grid_zd --side 6 --out " + gen_host + " 2> /dev/null";
    if (std::system(cmd.c_str()) != 0) {
      detail = "gen pipeline failed";
      return false;
    }
  }
  std::vector<CliRun> runs = {
      {"gen --family dice --side 3", "gen"},
      {"basis validate --in " + gen_host, "basis"},
      {"contours --in " + gen_host + " --size 4 --radius 2", "contours"},
      {"clusters --in " + gen_host + " --max-size 6 --size 4 --radius 2 --bc even --lambda-e 1e9 --lambda-o 1e9",
       "clusters"},
      {"count --exact --in " + gen_host + " --radius 2 --lambda-e 3 --lambda-o 2 --bc even",
       "count"},
      {"sample --in " + gen_host + " --n 50 --seed 7 --bc even --lambda-e 5 --lambda-o 5 --radius 2",
       "sample"},
      {"marginal --in " + gen_host + " --bc even --lambda-e 50 --lambda-o 50 --radius 2",
       "marginal"},
      {"phase --family dice --side 3 --lambda-e 50 --n-max 1 --m 3 --tol 1e-6", "phase"},
  };
  auto slurp = [](const fs::path& f) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  long compared = 0;
  for (const auto& r : runs) {
    std::vector<std::string> blobs;
    for (const std::string& t : {std::string("1"), std::string("4"), std::string("1")}) {
      fs::path out = dir / (r.name + "_t" + t + "_" + std::to_string(blobs.size()) + ".txt");
      std::string cmd =
          cli + " --threads " + t + " " + r.args + " > " + out.string() + " 2> /dev/null";
      if (std::system(cmd.c_str()) != 0) {
        detail = "pipeline '" + r.name + "' exited nonzero";
        return false;
      }
      blobs.push_back(slurp(out));
    }
    if (blobs[0].empty()) {
      detail = "pipeline '" + r.name + "' produced no artifact";
      return false;
    }
    if (blobs[0] != blobs[1] || blobs[0] != blobs[2]) {
      detail = "pipeline '" + r.name + "' artifacts differ across thread counts / re-runs";
      return false;
    }
    ++compared;
  }
  detail = std::to_string(compared) + " pipelines byte-identical across --threads {1,4} and re-runs";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  auto run = [&](int num, auto&& fn) {
    Timer t;
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    report(num, ok, detail, t.secs());
  };

  run(1, [](std::string& d) { return crit1(d); });
  run(2, [](std::string& d) { return crit2(d); });
  run(3, [](std::string& d) { return crit3(d); });
  run(4, [](std::string& d) { return crit4(d); });
  run(5, [](std::string& d) { return crit5(d); });
  run(6, [](std::string& d) { return crit6(d); });
  run(7, [](std::string& d) { return crit7(d); });
  {
    // Criterion 8 solves the coexistence curve once and checks both clauses.
    Timer t;
    std::vector<double> coefs;
    std::string d8a, d8b;
    bool ok_a = false, ok_b = false;
    try {
      ok_a = crit8a(d8a, coefs);
      ok_b = crit8b(d8b, coefs);
    } catch (const std::exception& e) {
      d8a = d8b = std::string("unexpected exception: ") + e.what();
    }
    double secs = t.secs();
    report(8, ok_a && ok_b, (ok_a ? "(a) " + d8a : "(a) " + d8a) + "; (b) " + d8b, secs);
  }
  run(9, [](std::string& d) { return crit9(d); });
  if (cli.empty()) {
    report(10, false, "no CLI path supplied on the command line", 0.0);
  } else {
    run(10, [&](std::string& d) { return crit10(cli, d); });
  }

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : std::to_string(g_failures) + " criterion(s) failing")
            << "\n";
  return g_failures;
}
