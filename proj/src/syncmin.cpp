#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"
#include "gosyn/syncmin.hpp"

namespace gosyn {

SyncMachine::SyncMachine(Interface iface, Arena arena, int num_states,
                         std::vector<SyncTransition> transitions)
    : iface_(std::move(iface)),
      arena_(std::move(arena)),
      num_states_(num_states),
      transitions_(std::move(transitions)) {
  std::sort(transitions_.begin(), transitions_.end(),
            [](const SyncTransition& a, const SyncTransition& b) {
              return std::tie(a.from, a.inputs) < std::tie(b.from, b.inputs);
            });
  for (size_t i = 0; i < transitions_.size(); ++i) {
    auto& t = transitions_[i];
    if (t.from < 0 || t.from >= num_states_ || t.to < 0 || t.to >= num_states_)
      throw std::logic_error("sync machine: state out of range");
    if (!std::is_sorted(t.inputs.begin(), t.inputs.end()) ||
        !std::is_sorted(t.outputs.begin(), t.outputs.end()) ||
        std::adjacent_find(t.inputs.begin(), t.inputs.end()) != t.inputs.end() ||
        std::adjacent_find(t.outputs.begin(), t.outputs.end()) != t.outputs.end())
      throw std::logic_error("sync machine: port used twice in a round");
    for (int m : t.inputs)
      if (!arena_.move(m).input()) throw std::logic_error("sync machine: input is an output");
    for (int m : t.outputs)
      if (arena_.move(m).input()) throw std::logic_error("sync machine: output is an input");
    if (!index_.emplace(std::make_pair(t.from, t.inputs), static_cast<int>(i)).second)
      throw std::logic_error("sync machine: not input-deterministic");
  }
  for (int s = 0; s < num_states_; ++s) idle_.push_back({s, {}, {}, s});
}

const SyncTransition* SyncMachine::find(int state, const std::vector<int>& inputs) const {
  auto it = index_.find({state, inputs});
  if (it != index_.end()) return &transitions_[it->second];
  if (inputs.empty()) return &idle_[state];
  return nullptr;
}

std::vector<const SyncTransition*> SyncMachine::from(int state) const {
  std::vector<const SyncTransition*> out;
  for (auto it = index_.lower_bound({state, {}});
       it != index_.end() && it->first.first == state; ++it)
    out.push_back(&transitions_[it->second]);
  return out;
}

const SyncTransition& react(const SyncMachine& m, int state,
                            const std::vector<int>& offered) {
  std::vector<int> order = offered, taken;
  std::sort(order.begin(), order.end());
  for (bool grew = true; grew;) {
    grew = false;
    for (int x : order) {
      if (std::binary_search(taken.begin(), taken.end(), x)) continue;
      std::vector<int> trial = taken;
      trial.insert(std::lower_bound(trial.begin(), trial.end(), x), x);
      if (m.find(state, trial)) {
        taken = std::move(trial);
        grew = true;
      }
    }
  }
  return *m.find(state, taken);
}

// ---------------------------------------------------------------------------
// Round abstraction

namespace {

struct Closed {
  int state;
  std::vector<int> outputs;  // sorted
  bool operator==(const Closed& o) const {
    return state == o.state && outputs == o.outputs;
  }
};

class Abstractor {
 public:
  explicit Abstractor(const StrategyAutomaton& s) : s_(s) {}

  SyncMachine run() {
    std::map<int, int> number{{s_.initial(), 0}};
    std::vector<int> order{s_.initial()};
    std::vector<SyncTransition> ts;
    for (size_t i = 0; i < order.size(); ++i) {
      rounds_.clear();
      memo_.clear();
      ambiguous_.clear();
      Closed c = close(order[i], {}, {});
      explore(c.state, {}, c.outputs);
      for (const auto& [inputs, r] : rounds_) {
        if (ambiguous_.count(inputs)) continue;
        auto [it, fresh] = number.emplace(r.state, static_cast<int>(order.size()));
        if (fresh) order.push_back(r.state);
        if (inputs.empty() && r.outputs.empty() && r.state == order[i]) continue;
        ts.push_back({static_cast<int>(i), inputs, r.outputs, it->second});
      }
    }
    return SyncMachine(s_.iface(), s_.arena(), static_cast<int>(order.size()), ts);
  }

 private:
  const StrategyAutomaton& s_;
  std::map<std::vector<int>, Closed> rounds_;
  // Input sets whose outcome depends on arrival order; left undefined.
  std::set<std::vector<int>> ambiguous_;
  std::set<std::tuple<int, std::vector<int>, std::vector<int>>> memo_;

  /// A base occurrence carries at most one question and one answer per
  /// round, and a question never follows a move of its own occurrence
  /// (that would let a port's answer re-raise its question combinationally).
  bool clashes(int m, const std::vector<int>& a, const std::vector<int>& b) const {
    const Move& x = s_.arena().move(m);
    for (const auto* v : {&a, &b})
      for (int n : *v) {
        const Move& y = s_.arena().move(n);
        if (y.face != x.face || y.occurrence() != x.occurrence()) continue;
        if (y.kind == x.kind || x.question()) return true;
      }
    return false;
  }

  /// Fires every enabled output whose port is still free this round.
  Closed close(int state, std::vector<int> used, const std::vector<int>& inputs) const {
    std::vector<Closed> ends;
    std::function<void(int, std::vector<int>&)> go = [&](int st, std::vector<int>& out) {
      bool moved = false;
      for (auto [m, to] : s_.out(st)) {
        if (s_.arena().move(m).input()) continue;
        if (clashes(m, out, inputs)) continue;
        moved = true;
        out.push_back(m);
        go(to, out);
        out.pop_back();
      }
      if (!moved) {
        std::vector<int> sorted = out;
        std::sort(sorted.begin(), sorted.end());
        Closed c{st, sorted};
        if (ends.empty())
          ends.push_back(c);
        else if (!(ends.front() == c))
          throw NonConfluent("round abstraction: output interleavings diverge at state " +
                             std::to_string(state));
      }
    };
    go(state, used);
    return ends.front();
  }

  void explore(int state, std::vector<int> inputs, std::vector<int> outputs) {
    if (!memo_.emplace(state, inputs, outputs).second) return;
    Closed here{state, outputs};
    auto [it, fresh] = rounds_.emplace(inputs, here);
    if (!fresh && !(it->second == here)) ambiguous_.insert(inputs);
    for (auto [m, to] : s_.out(state)) {
      if (!s_.arena().move(m).input()) continue;
      if (clashes(m, inputs, outputs)) continue;
      std::vector<int> in2 = inputs;
      in2.insert(std::lower_bound(in2.begin(), in2.end(), m), m);
      Closed c = close(to, outputs, in2);
      explore(c.state, in2, c.outputs);
    }
  }
};

}  // namespace

SyncMachine round_abstract(const StrategyAutomaton& s) { return Abstractor(s).run(); }

// ---------------------------------------------------------------------------
// Plain minimization

namespace {

SyncMachine renumber(const SyncMachine& m, const std::vector<int>& cls, int classes) {
  // BFS from the initial class in input-set order for a canonical numbering.
  std::vector<int> rep(classes, -1);
  for (int s = m.num_states() - 1; s >= 0; --s) rep[cls[s]] = s;
  std::vector<int> number(classes, -1);
  std::vector<int> order{cls[m.initial()]};
  number[cls[m.initial()]] = 0;
  for (size_t i = 0; i < order.size(); ++i)
    for (const auto* t : m.from(rep[order[i]])) {
      int c = cls[t->to];
      if (number[c] < 0) {
        number[c] = static_cast<int>(order.size());
        order.push_back(c);
      }
    }
  std::vector<SyncTransition> ts;
  for (size_t i = 0; i < order.size(); ++i)
    for (const auto* t : m.from(rep[order[i]]))
      ts.push_back({static_cast<int>(i), t->inputs, t->outputs, number[cls[t->to]]});
  return SyncMachine(m.iface(), m.arena(), static_cast<int>(order.size()), ts);
}

}  // namespace

SyncMachine minimize(const SyncMachine& m) {
  int n = m.num_states();
  std::vector<int> cls(n, 0);
  int classes = 1;
  while (true) {
    using Sig = std::vector<std::tuple<std::vector<int>, std::vector<int>, int>>;
    std::map<std::pair<int, Sig>, int> ids;
    std::vector<int> next(n);
    for (int s = 0; s < n; ++s) {
      Sig sig;
      for (const auto* t : m.from(s)) {
        if (t->inputs.empty() && t->outputs.empty() && t->to == s) continue;
        sig.emplace_back(t->inputs, t->outputs, cls[t->to]);
      }
      auto [it, fresh] = ids.emplace(std::make_pair(cls[s], sig), static_cast<int>(ids.size()));
      next[s] = it->second;
    }
    int count = static_cast<int>(ids.size());
    cls = next;
    if (count == classes) break;
    classes = count;
  }
  return renumber(m, cls, classes);
}

// ---------------------------------------------------------------------------
// Protocol-aware minimization

namespace {

struct Entry {
  bool blocked = false;
  std::vector<int> outputs;
  int succ = -1;  // product state
};

struct Product {
  std::vector<std::pair<int, std::set<int>>> states;
  std::vector<std::map<std::vector<int>, Entry>> table;
};

Product protocol_product(const SyncMachine& m, const ProtocolAutomaton& p) {
  Product pr;
  std::map<std::pair<int, std::set<int>>, int> ids;
  auto id_of = [&](int s, std::set<int> ps) {
    auto key = std::make_pair(s, ps);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(pr.states.size());
    ids.emplace(key, id);
    pr.states.push_back(key);
    pr.table.emplace_back();
    return id;
  };
  id_of(m.initial(), {p.initial()});
  // Input sets worth asking about: every set the machine names anywhere.
  std::set<std::vector<int>> alphabet;
  for (const auto& t : m.transitions()) alphabet.insert(t.inputs);
  for (size_t i = 0; i < pr.states.size(); ++i) {
    auto [s, ps] = pr.states[i];
    std::map<std::vector<int>, Entry> row;
    for (const auto& in : alphabet) {
      const SyncTransition* t = m.find(s, in);
      if (!t) {
        if (!in.empty() && !p.step_round(ps, in).empty()) row[in].blocked = true;
        continue;
      }
      Round r = t->inputs;
      r.insert(r.end(), t->outputs.begin(), t->outputs.end());
      std::set<int> next = p.step_round(ps, r);
      if (next.empty()) continue;
      Entry e;
      e.outputs = t->outputs;
      e.succ = id_of(t->to, next);
      row[in] = e;
    }
    if (!row.count({})) row[{}] = Entry{false, {}, static_cast<int>(i)};
    pr.table[i] = std::move(row);
  }
  return pr;
}

using Table = std::vector<std::vector<char>>;

Table compatibility(const Product& pr) {
  size_t n = pr.states.size();
  Table ok(n, std::vector<char>(n, 1));
  auto conflict = [&](size_t x, size_t y) {
    for (const auto& [in, ex] : pr.table[x]) {
      auto it = pr.table[y].find(in);
      if (it == pr.table[y].end()) continue;
      const Entry& ey = it->second;
      if (ex.blocked != ey.blocked) return true;
      if (ex.blocked) continue;
      if (ex.outputs != ey.outputs) return true;
      if (!ok[ex.succ][ey.succ]) return true;
    }
    return false;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t x = 0; x < n; ++x)
      for (size_t y = x + 1; y < n; ++y)
        if (ok[x][y] && conflict(x, y)) {
          ok[x][y] = ok[y][x] = 0;
          changed = true;
        }
  }
  return ok;
}

bool closed(const Product& pr, const std::vector<int>& cls) {
  std::map<std::pair<int, std::vector<int>>, int> target;
  for (size_t x = 0; x < pr.states.size(); ++x)
    for (const auto& [in, e] : pr.table[x]) {
      if (e.blocked) continue;
      auto [it, fresh] = target.emplace(std::make_pair(cls[x], in), cls[e.succ]);
      if (!fresh && it->second != cls[e.succ]) return false;
    }
  return true;
}

int count_classes(const std::vector<int>& cls) {
  return cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
}

std::vector<int> compact(std::vector<int> cls) {
  std::map<int, int> ren;
  for (int& c : cls) c = ren.emplace(c, static_cast<int>(ren.size())).first->second;
  return cls;
}

/// Non-blocked product moves as (input set id, successor) per state.
using Flat = std::vector<std::vector<std::pair<int, int>>>;

Flat flatten(const Product& pr, int* alphabet) {
  std::map<std::vector<int>, int> ids;
  Flat f(pr.states.size());
  for (size_t x = 0; x < pr.states.size(); ++x)
    for (const auto& [in, e] : pr.table[x])
      if (!e.blocked)
        f[x].push_back({ids.emplace(in, static_cast<int>(ids.size())).first->second, e.succ});
  *alphabet = static_cast<int>(ids.size());
  return f;
}

/// Merges classes a and b together with every merge that closure forces.
/// Returns false when some forced merge joins incompatible states.
bool merge_closed(const Flat& f, int alphabet, const Table& ok, std::vector<int>& cls,
                  int a, int b) {
  int k = count_classes(cls);
  std::vector<int> parent(k);
  std::vector<std::vector<int>> members(k);
  for (int c = 0; c < k; ++c) parent[c] = c;
  for (size_t x = 0; x < cls.size(); ++x) members[cls[x]].push_back(static_cast<int>(x));
  auto root = [&](int c) {
    while (parent[c] != c) c = parent[c] = parent[parent[c]];
    return c;
  };
  std::vector<std::pair<int, int>> todo{{a, b}};
  std::vector<int> target;
  while (!todo.empty()) {
    while (!todo.empty()) {
      auto [x, y] = todo.back();
      todo.pop_back();
      int rx = root(x), ry = root(y);
      if (rx == ry) continue;
      for (int u : members[rx])
        for (int v : members[ry])
          if (!ok[u][v]) return false;
      parent[ry] = rx;
      members[rx].insert(members[rx].end(), members[ry].begin(), members[ry].end());
      members[ry].clear();
    }
    target.assign(static_cast<size_t>(k) * alphabet, -1);
    for (size_t x = 0; x < f.size(); ++x) {
      int c = root(cls[x]);
      for (auto [in, succ] : f[x]) {
        int t = root(cls[succ]);
        int& slot = target[static_cast<size_t>(c) * alphabet + in];
        if (slot < 0)
          slot = t;
        else if (root(slot) != t)
          todo.push_back({slot, t});
      }
    }
  }
  for (int& c : cls) c = root(c);
  cls = compact(cls);
  return true;
}

/// Start from the plain partition (closed by construction) and merge class
/// pairs while the result stays compatible and closed.
std::vector<int> greedy_cover(const Product& pr, const Table& ok,
                              const std::vector<int>& plain_class) {
  std::vector<int> cls(pr.states.size());
  for (size_t x = 0; x < cls.size(); ++x) cls[x] = plain_class[pr.states[x].first];
  cls = compact(cls);
  int alphabet = 0;
  Flat f = flatten(pr, &alphabet);
  for (bool merged = true; merged;) {
    merged = false;
    for (int a = 0; a < count_classes(cls); ++a)
      for (int b = a + 1; b < count_classes(cls); ++b) {
        std::vector<int> trial = cls;
        if (merge_closed(f, alphabet, ok, trial, a, b)) {
          cls = std::move(trial);
          merged = true;
        }
      }
  }
  return cls;
}

class ExactCover {
 public:
  ExactCover(const Product& pr, const Table& ok, std::vector<int> best)
      : pr_(pr), ok_(ok), best_(std::move(best)) {}

  std::vector<int> run() {
    std::vector<int> cls(pr_.states.size(), -1);
    search(0, cls, 0);
    return best_;
  }

 private:
  const Product& pr_;
  const Table& ok_;
  std::vector<int> best_;
  size_t budget_ = 200000;

  void search(size_t i, std::vector<int>& cls, int used) {
    if (budget_ == 0 || used >= count_classes(best_)) return;
    --budget_;
    if (i == cls.size()) {
      if (closed(pr_, cls)) best_ = cls;
      return;
    }
    for (int c = 0; c <= used; ++c) {
      bool fits = true;
      for (size_t y = 0; y < i && fits; ++y)
        if (cls[y] == c && !ok_[i][y]) fits = false;
      if (!fits) continue;
      cls[i] = c;
      search(i + 1, cls, std::max(used, c + 1));
      cls[i] = -1;
    }
  }
};

}  // namespace

SyncMachine minimize_under_protocol(const SyncMachine& m, const ProtocolAutomaton& p) {
  if (!m.arena().same_shape(p.arena()))
    throw std::invalid_argument("minimize_under_protocol: arena mismatch");
  SyncMachine plain = minimize(m);
  // Class of each state of m in the plain quotient, read off a joint walk.
  std::vector<int> plain_class(m.num_states(), -1);
  {
    std::queue<std::pair<int, int>> todo;
    todo.push({m.initial(), plain.initial()});
    plain_class[m.initial()] = plain.initial();
    while (!todo.empty()) {
      auto [a, b] = todo.front();
      todo.pop();
      for (const auto* t : m.from(a)) {
        const SyncTransition* u = plain.find(b, t->inputs);
        if (u && plain_class[t->to] < 0) {
          plain_class[t->to] = u->to;
          todo.push({t->to, u->to});
        }
      }
    }
    for (int& c : plain_class)
      if (c < 0) c = 0;  // unreachable states never appear in the product
  }
  Product pr = protocol_product(m, p);
  Table ok = compatibility(pr);
  std::vector<int> cls = greedy_cover(pr, ok, plain_class);
  if (pr.states.size() <= 64) cls = ExactCover(pr, ok, cls).run();
  int k = count_classes(cls);
  if (k > plain.num_states()) return plain;

  // Class 0 must hold the initial product state.
  std::vector<int> perm(k);
  for (int c = 0; c < k; ++c) perm[c] = c;
  std::swap(perm[0], perm[cls[0]]);
  std::map<std::pair<int, std::vector<int>>, SyncTransition> rows;
  for (size_t x = 0; x < pr.states.size(); ++x)
    for (const auto& [in, e] : pr.table[x]) {
      if (e.blocked) continue;
      int from = perm[cls[x]], to = perm[cls[e.succ]];
      if (in.empty() && e.outputs.empty() && from == to) continue;
      rows.emplace(std::make_pair(from, in), SyncTransition{from, in, e.outputs, to});
    }
  std::vector<SyncTransition> ts;
  for (auto& [key, t] : rows) ts.push_back(t);
  SyncMachine raw(m.iface(), m.arena(), k, ts);
  // Canonical numbering; classes unreachable in the quotient are dropped.
  std::vector<int> ident(k);
  for (int c = 0; c < k; ++c) ident[c] = c;
  SyncMachine out = renumber(raw, ident, k);
  return out.num_states() <= plain.num_states() ? out : plain;
}

EquivalenceVerdict equivalent_under_protocol(const SyncMachine& m1, const SyncMachine& m2,
                                             const ProtocolAutomaton& p, size_t max_len) {
  if (max_len > 24) throw LimitExceeded("equivalent_under_protocol: max_len above 24");
  if (!m1.arena().same_shape(m2.arena()) || !m1.arena().same_shape(p.arena()))
    throw std::invalid_argument("equivalent_under_protocol: arena mismatch");
  struct Node {
    int a, b;
    std::set<int> ps;
    RoundTrace trace;
  };
  std::set<std::tuple<int, int, std::set<int>>> seen{{m1.initial(), m2.initial(), {p.initial()}}};
  std::vector<Node> frontier{{m1.initial(), m2.initial(), {p.initial()}, {}}};
  std::set<std::vector<int>> alphabet{{}};
  for (const auto& t : m1.transitions()) alphabet.insert(t.inputs);
  for (const auto& t : m2.transitions()) alphabet.insert(t.inputs);
  EquivalenceVerdict v;
  for (size_t depth = 1; depth <= max_len && !frontier.empty(); ++depth) {
    std::vector<Node> next;
    for (const auto& n : frontier)
      for (const auto& in : alphabet) {
        const SyncTransition* t1 = m1.find(n.a, in);
        const SyncTransition* t2 = m2.find(n.b, in);
        auto differ = [&](const std::string& why) {
          v.equivalent = false;
          v.round = depth;
          v.witness = n.trace;
          v.witness.push_back(in);
          v.detail = why;
        };
        if (!t1) {
          if (in.empty() || p.step_round(n.ps, in).empty() || !t2) continue;
          differ("reference refuses " + format_word(m1.arena(), in) + ", other accepts");
          return v;
        }
        Round r = t1->inputs;
        r.insert(r.end(), t1->outputs.begin(), t1->outputs.end());
        std::set<int> ps = p.step_round(n.ps, r);
        if (ps.empty()) continue;
        if (!t2) {
          differ("other refuses " + format_word(m1.arena(), in));
          return v;
        }
        if (t1->outputs != t2->outputs) {
          differ("outputs " + format_word(m1.arena(), t1->outputs) + " vs " +
                 format_word(m2.arena(), t2->outputs));
          return v;
        }
        if (seen.emplace(t1->to, t2->to, ps).second) {
          Node k{t1->to, t2->to, ps, n.trace};
          k.trace.push_back(in);
          next.push_back(std::move(k));
        }
      }
    frontier = std::move(next);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Dumps

namespace {

std::string set_text(const Arena& a, const std::vector<int>& ms) {
  std::string out = "{";
  for (size_t i = 0; i < ms.size(); ++i) out += (i ? "," : "") + a.move(ms[i]).name;
  return out + "}";
}

}  // namespace

std::string sync_table(const SyncMachine& m) {
  std::ostringstream out;
  out << "states " << m.num_states() << (m.combinational() ? " (combinational)" : "")
      << "\n";
  for (const auto& t : m.transitions())
    out << "s" << t.from << " " << set_text(m.arena(), t.inputs) << " / "
        << set_text(m.arena(), t.outputs) << " -> s" << t.to << "\n";
  return out.str();
}

std::string sync_dot(const SyncMachine& m, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
  out << "  start [shape=point];\n  start -> s0;\n";
  for (int i = 0; i < m.num_states(); ++i) out << "  s" << i << ";\n";
  for (const auto& t : m.transitions())
    out << "  s" << t.from << " -> s" << t.to << " [label=\""
        << set_text(m.arena(), t.inputs) << "/" << set_text(m.arena(), t.outputs)
        << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string sync_json(const SyncMachine& m) {
  using nlohmann::json;
  json j;
  j["result"] = to_string(*m.iface().result);
  j["context"] = json::array();
  for (const auto& [x, t] : m.iface().context)
    j["context"].push_back({{"name", x}, {"type", to_string(*t)}});
  j["states"] = m.num_states();
  j["combinational"] = m.combinational();
  j["transitions"] = json::array();
  auto names = [&](const std::vector<int>& ms) {
    json a = json::array();
    for (int x : ms) a.push_back(m.arena().move(x).name);
    return a;
  };
  for (const auto& t : m.transitions())
    j["transitions"].push_back(
        {{"from", t.from}, {"in", names(t.inputs)}, {"out", names(t.outputs)}, {"to", t.to}});
  return j.dump(2) + "\n";
}

}  // namespace gosyn
