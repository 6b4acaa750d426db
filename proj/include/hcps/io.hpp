// The .hcg graph format: line-oriented UTF-8, ordering insignificant.
//   hcg 1
//   v <id> <e|o> <i|f>
//   e <id1> <id2>
//   c <edge-id>...
#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hcps/cycle_space.hpp"
#include "hcps/graph.hpp"

namespace hcps {

inline void write_hcg(std::ostream& os, const HostWindow& w, const CycleBasis* basis = nullptr) {
  os << "hcg 1\n";
  for (int v = 0; v < w.n(); ++v)
    os << "v " << v << ' ' << parity_char(w.parity[v]) << ' ' << (w.is_frame(v) ? 'f' : 'i') << '\n';
  for (auto [u, v] : w.edges) os << "e " << u << ' ' << v << '\n';
  if (basis)
    for (const auto& cyc : basis->cycles) {
      os << 'c';
      for (int e : cyc) os << ' ' << e;
      os << '\n';
    }
}

struct HcgFile {
  HostWindow window;
  std::vector<std::vector<int>> cycles;  // raw cycle lines; basis built by caller
};

inline HcgFile read_hcg(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.substr(0, 5) != "hcg 1")
    throw ConfigError("read_hcg: missing 'hcg 1' header");

  std::vector<std::pair<int, Parity>> vparity;
  std::vector<std::pair<int, char>> vframe;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> cycles;
  int max_id = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      int id;
      char p, f;
      if (!(ls >> id >> p >> f) || (p != 'e' && p != 'o') || (f != 'i' && f != 'f'))
        throw ConfigError("read_hcg: bad vertex line '" + line + "'");
      vparity.emplace_back(id, p == 'e' ? Parity::even : Parity::odd);
      vframe.emplace_back(id, f == 'f' ? 1 : 0);
      max_id = std::max(max_id, id);
    } else if (tag == "e") {
      int u, v;
      if (!(ls >> u >> v)) throw ConfigError("read_hcg: bad edge line '" + line + "'");
      edges.emplace_back(u, v);
    } else if (tag == "c") {
      std::vector<int> cyc;
      int e;
      while (ls >> e) cyc.push_back(e);
      if (cyc.empty()) throw ConfigError("read_hcg: empty cycle line");
      cycles.push_back(std::move(cyc));
    } else {
      throw ConfigError("read_hcg: unknown line tag '" + tag + "'");
    }
  }
  if (static_cast<int>(vparity.size()) != max_id + 1)
    throw ConfigError("read_hcg: vertex ids must be dense from 0");
  std::vector<Parity> parity(max_id + 1, Parity::even);
  std::vector<char> frame(max_id + 1, 0);
  std::vector<char> seen(max_id + 1, 0);
  for (auto [id, p] : vparity) {
    if (id < 0 || seen[id]) throw ConfigError("read_hcg: duplicate or negative vertex id");
    seen[id] = 1;
    parity[id] = p;
  }
  for (auto [id, f] : vframe) frame[id] = f;

  HcgFile out{make_window(std::move(parity), std::move(frame), std::move(edges)), std::move(cycles)};
  return out;
}

}  // namespace hcps
