#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "gosyn/design.hpp"

namespace gosyn {

int Design::add(std::string kind, StrategyAutomaton s) {
  int counter = 0;
  for (const auto& k : kinds)
    if (k == kind) ++counter;
  names.push_back(kind + std::to_string(counter));
  kinds.push_back(std::move(kind));
  parts.push_back(std::move(s));
  return static_cast<int>(parts.size()) - 1;
}

int Design::find(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

struct Route {
  enum Kind { Dangling, External, Wire } kind = Dangling;
  int ext = -1;
  Endpoint peer;
};

using Tuple = std::vector<int>;

struct Edge {
  int label;  // external move id, or -1 for an internal step
  int to;
};

}  // namespace

StrategyAutomaton link(const Design& d) {
  const size_t n = d.parts.size();
  std::vector<std::vector<Route>> routes(n);
  for (size_t p = 0; p < n; ++p) routes[p].resize(d.parts[p].arena().size());
  for (size_t e = 0; e < d.exports.size(); ++e) {
    const Endpoint& ep = d.exports[e];
    if (ep.part < 0) continue;
    routes[ep.part][ep.move] = Route{Route::External, static_cast<int>(e), {}};
  }
  for (const auto& [a, b] : d.wires) {
    routes[a.part][a.move] = Route{Route::Wire, -1, b};
    routes[b.part][b.move] = Route{Route::Wire, -1, a};
  }

  // Explore the product of all instances.
  std::map<Tuple, int> ids;
  std::vector<Tuple> tuples;
  std::vector<std::vector<Edge>> edges;
  auto id_of = [&](const Tuple& t) {
    auto it = ids.find(t);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(tuples.size());
    ids.emplace(t, id);
    tuples.push_back(t);
    edges.emplace_back();
    return id;
  };
  id_of(Tuple(n, 0));
  for (size_t i = 0; i < tuples.size(); ++i) {
    std::vector<Edge> out;
    for (size_t p = 0; p < n; ++p) {
      const auto& sp = d.parts[p];
      int st = tuples[i][p];
      for (const auto& [m, to] : sp.out(st)) {
        const Route& r = routes[p][m];
        bool input = sp.arena().move(m).input();
        Tuple next = tuples[i];
        next[p] = to;
        if (input) {
          // Wired inputs fire only together with the driving output.
          if (r.kind == Route::External) out.push_back({r.ext, id_of(next)});
          continue;
        }
        if (r.kind == Route::External) {
          out.push_back({r.ext, id_of(next)});
        } else if (r.kind == Route::Dangling) {
          out.push_back({-1, id_of(next)});
        } else {
          int peer_to = d.parts[r.peer.part].next(next[r.peer.part], r.peer.move);
          if (peer_to < 0) continue;
          next[r.peer.part] = peer_to;
          out.push_back({-1, id_of(next)});
        }
      }
    }
    edges[i] = std::move(out);
  }

  // Divergence: an internal cycle from which no external move is reachable.
  const int T = static_cast<int>(tuples.size());
  {
    std::vector<int> index(T, -1), low(T, 0), comp(T, -1);
    std::vector<bool> on(T, false);
    std::vector<int> stack;
    int counter = 0, comps = 0;
    auto strong = [&](auto&& self, int v) -> void {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on[v] = true;
      for (const auto& e : edges[v]) {
        if (e.label >= 0) continue;
        if (index[e.to] < 0) {
          self(self, e.to);
          low[v] = std::min(low[v], low[e.to]);
        } else if (on[e.to]) {
          low[v] = std::min(low[v], index[e.to]);
        }
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = false;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
    };
    for (int v = 0; v < T; ++v)
      if (index[v] < 0) strong(strong, v);
    // Tarjan numbers components sinks first, so successors are final.
    std::vector<std::vector<int>> members(comps);
    for (int v = 0; v < T; ++v) members[comp[v]].push_back(v);
    std::vector<bool> exit(comps, false), cyclic(comps, false);
    for (int c = 0; c < comps; ++c) {
      cyclic[c] = members[c].size() > 1;
      for (int v : members[c])
        for (const auto& e : edges[v]) {
          if (e.label >= 0) exit[c] = true;
          else if (e.to == v) cyclic[c] = true;
          else if (comp[e.to] != c && exit[comp[e.to]]) exit[c] = true;
        }
      if (cyclic[c] && !exit[c])
        throw DivergenceDetected("internal cycle with no observable exit");
    }
  }

  // Subset construction over internal-step closures.
  auto closure = [&](std::vector<int> set) {
    std::set<int> seen(set.begin(), set.end());
    std::vector<int> work = set;
    while (!work.empty()) {
      int v = work.back();
      work.pop_back();
      for (const auto& e : edges[v])
        if (e.label < 0 && seen.insert(e.to).second) work.push_back(e.to);
    }
    return std::vector<int>(seen.begin(), seen.end());
  };
  std::map<std::vector<int>, int> subset_ids;
  std::vector<std::vector<int>> subsets;
  std::vector<Transition> ts;
  auto subset_id = [&](const std::vector<int>& s) {
    auto it = subset_ids.find(s);
    if (it != subset_ids.end()) return it->second;
    int id = static_cast<int>(subsets.size());
    subset_ids.emplace(s, id);
    subsets.push_back(s);
    return id;
  };
  subset_id(closure({0}));
  for (size_t i = 0; i < subsets.size(); ++i) {
    std::map<int, std::set<int>> by_label;
    for (int v : subsets[i])
      for (const auto& e : edges[v])
        if (e.label >= 0) by_label[e.label].insert(e.to);
    for (const auto& [label, targets] : by_label) {
      auto c = closure(std::vector<int>(targets.begin(), targets.end()));
      int to = subset_id(c);
      ts.push_back({static_cast<int>(i), label, to});
    }
  }
  StrategyAutomaton raw(d.iface, d.arena, static_cast<int>(subsets.size()), ts);
  return minimize_strategy(raw);
}

}  // namespace gosyn
