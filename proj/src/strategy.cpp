#include <algorithm>
#include <map>
#include <queue>

#include "gosyn/strategy.hpp"

namespace gosyn {

StrategyAutomaton::StrategyAutomaton(Interface iface, Arena arena, int num_states,
                                     std::vector<Transition> transitions)
    : iface_(std::move(iface)),
      arena_(std::move(arena)),
      num_states_(num_states),
      transitions_(std::move(transitions)),
      adjacency_(num_states) {
  std::sort(transitions_.begin(), transitions_.end(),
            [](const Transition& a, const Transition& b) {
              return std::tie(a.from, a.move, a.to) < std::tie(b.from, b.move, b.to);
            });
  for (const auto& t : transitions_) {
    auto& row = adjacency_[t.from];
    if (!row.empty() && row.back().first == t.move)
      throw std::logic_error("strategy automaton is not deterministic on move " +
                             arena_.move(t.move).name);
    row.emplace_back(t.move, t.to);
  }
}

int StrategyAutomaton::next(int state, int move) const {
  for (const auto& [m, to] : adjacency_[state])
    if (m == move) return to;
  return -1;
}

StrategyAutomaton StrategyAutomaton::with_arena(Arena a) const {
  StrategyAutomaton s = *this;
  s.arena_ = std::move(a);
  return s;
}

Language StrategyAutomaton::language(size_t max_len) const {
  Language out;
  Word w;
  auto dfs = [&](auto&& self, int state) -> void {
    out.insert(w);
    if (w.size() >= max_len) return;
    for (const auto& [m, to] : adjacency_[state]) {
      w.push_back(m);
      self(self, to);
      w.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

int constant_first_index(const Type& t) {
  return t.kind == TypeKind::Arrow ? 0 : 1;
}

namespace {

class Builder {
 public:
  explicit Builder(Interface iface, int first_index = 1)
      : iface_(std::move(iface)), arena_(interface_arena(iface_, first_index)) {}

  int state() { return states_++; }
  void edge(int from, const std::string& move, int to) {
    int m = arena_.find(move);
    if (m < 0) throw std::logic_error("no move " + move);
    ts_.push_back({from, m, to});
  }
  StrategyAutomaton build() { return StrategyAutomaton(iface_, arena_, states_, ts_); }

 private:
  Interface iface_;
  Arena arena_;
  int states_ = 1;
  std::vector<Transition> ts_;
};

bool op_value(const std::string& op, bool a, bool b) {
  if (op == "and") return a && b;
  if (op == "or") return a || b;
  if (op == "xor") return a != b;
  return a == b;  // eq
}

}  // namespace

StrategyAutomaton denote_constant(const std::string& name) {
  TypePtr t = constant_type(name);
  if (!t) throw std::invalid_argument("unknown constant '" + name + "'");
  Builder b(Interface{t, {}}, constant_first_index(*t));
  const int s0 = 0;
  if (name == "skip") {
    int s1 = b.state();
    b.edge(s0, "q1", s1);
    b.edge(s1, "a1", s0);
  } else if (name == "1" || name == "0") {
    int s1 = b.state();
    b.edge(s0, "q1", s1);
    b.edge(s1, name == "1" ? "t1" : "f1", s0);
  } else if (name == "seq") {
    int s1 = b.state(), s2 = b.state(), s3 = b.state(), s4 = b.state(),
        s5 = b.state();
    b.edge(s0, "q0", s1);
    b.edge(s1, "q1", s2);
    b.edge(s2, "a1", s3);
    b.edge(s3, "q2", s4);
    b.edge(s4, "a2", s5);
    b.edge(s5, "a0", s0);
  } else if (name == "par") {
    int started = b.state(), left = b.state(), right = b.state(),
        both = b.state(), got1 = b.state(), got2 = b.state(), done = b.state();
    b.edge(s0, "q0", started);
    b.edge(started, "q1", left);
    b.edge(started, "q2", right);
    b.edge(left, "q2", both);
    b.edge(right, "q1", both);
    b.edge(both, "a1", got1);
    b.edge(both, "a2", got2);
    b.edge(got1, "a2", done);
    b.edge(got2, "a1", done);
    b.edge(done, "a0", s0);
  } else if (is_binary_op(name)) {
    int s1 = b.state(), s2 = b.state();
    int first[2] = {b.state(), b.state()};   // first operand false / true
    int second[2] = {b.state(), b.state()};  // awaiting second operand
    int answer[2] = {b.state(), b.state()};  // emit f0 / t0
    b.edge(s0, "q0", s1);
    b.edge(s1, "q1", s2);
    b.edge(s2, "f1", first[0]);
    b.edge(s2, "t1", first[1]);
    for (int v = 0; v < 2; ++v) b.edge(first[v], "q2", second[v]);
    for (int v = 0; v < 2; ++v) {
      b.edge(second[v], "f2", answer[op_value(name, v, false)]);
      b.edge(second[v], "t2", answer[op_value(name, v, true)]);
    }
    b.edge(answer[0], "f0", s0);
    b.edge(answer[1], "t0", s0);
  } else if (name == "not") {
    int s1 = b.state(), s2 = b.state(), emit_f = b.state(), emit_t = b.state();
    b.edge(s0, "q0", s1);
    b.edge(s1, "q1", s2);
    b.edge(s2, "t1", emit_f);
    b.edge(s2, "f1", emit_t);
    b.edge(emit_f, "f0", s0);
    b.edge(emit_t, "t0", s0);
  } else if (name == "if") {
    int s1 = b.state(), s2 = b.state(), then_q = b.state(), then_run = b.state(),
        else_q = b.state(), else_run = b.state(), done = b.state();
    b.edge(s0, "q0", s1);
    b.edge(s1, "q1", s2);
    b.edge(s2, "t1", then_q);
    b.edge(then_q, "q2", then_run);
    b.edge(then_run, "a2", done);
    b.edge(s2, "f1", else_q);
    b.edge(else_q, "q3", else_run);
    b.edge(else_run, "a3", done);
    b.edge(done, "a0", s0);
  } else if (name == "while") {
    int test = b.state(), testing = b.state(), body_q = b.state(),
        body_run = b.state(), done = b.state();
    b.edge(s0, "q0", test);
    b.edge(test, "q1", testing);
    b.edge(testing, "t1", body_q);
    b.edge(body_q, "q2", body_run);
    b.edge(body_run, "a2", test);
    b.edge(testing, "f1", done);
    b.edge(done, "a0", s0);
  } else if (name == "asg") {
    int s1 = b.state(), eval = b.state(), wt = b.state(), wf = b.state(),
        writing = b.state(), done = b.state();
    b.edge(s0, "q0", s1);
    b.edge(s1, "q2", eval);
    b.edge(eval, "t2", wt);
    b.edge(eval, "f2", wf);
    b.edge(wt, "wt1", writing);
    b.edge(wf, "wf1", writing);
    b.edge(writing, "a1", done);
    b.edge(done, "a0", s0);
  } else if (name == "der") {
    int s1 = b.state(), reading = b.state(), emit_t = b.state(),
        emit_f = b.state();
    b.edge(s0, "q0", s1);
    b.edge(s1, "q1", reading);
    b.edge(reading, "t1", emit_t);
    b.edge(reading, "f1", emit_f);
    b.edge(emit_t, "t0", s0);
    b.edge(emit_f, "f0", s0);
  } else if (name == "newvar") {
    // Register holding one bit, cleared whenever the block starts.
    int start = b.state(), finish = b.state();
    int run[2] = {b.state(), b.state()};
    int read[2] = {b.state(), b.state()};
    int write[2] = {b.state(), b.state()};
    b.edge(s0, "q0", start);
    b.edge(start, "q1", run[0]);
    for (int v = 0; v < 2; ++v) {
      b.edge(run[v], "q2", read[v]);
      b.edge(read[v], v ? "t2" : "f2", run[v]);
      b.edge(run[v], "wt2", write[1]);
      b.edge(run[v], "wf2", write[0]);
      b.edge(write[v], "a2", run[v]);
      b.edge(run[v], "a1", finish);
    }
    b.edge(finish, "a0", s0);
  }
  return b.build();
}

StrategyAutomaton copycat(const TypePtr& t, const std::string& ident) {
  Interface iface{t, {{ident, t}}};
  Arena a = interface_arena(iface);
  Arena base = arena_of_type(*t);
  ProtocolAutomaton proto(base);
  // States: (protocol state, -1) waiting, or (protocol state, echo move).
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> keys;
  auto id_of = [&](std::pair<int, int> k) {
    auto [it, fresh] = ids.emplace(k, static_cast<int>(keys.size()));
    if (fresh) keys.push_back(k);
    return it->second;
  };
  id_of({proto.initial(), -1});
  std::vector<Transition> ts;
  for (size_t i = 0; i < keys.size(); ++i) {
    auto [p, echo] = keys[i];
    int from = static_cast<int>(i);
    if (echo >= 0) {
      ts.push_back({from, echo, id_of({p, -1})});
      continue;
    }
    for (const auto& m : a.moves()) {
      if (!m.input()) continue;
      int next = proto.step(p, base.find(0, m.path));
      if (next < 0) continue;
      int partner = a.find(m.face == 0 ? 1 : 0, m.path);
      ts.push_back({from, m.id, id_of({next, partner})});
    }
  }
  return StrategyAutomaton(iface, a, static_cast<int>(keys.size()), ts);
}

StrategyAutomaton identity(const TypePtr& t) {
  return abstract(copycat(t, "x"), "x", t);
}

StrategyAutomaton diagonal(const TypePtr& t, const std::string& ident) {
  Interface iface{Type::product(t, t), {{ident, t}}};
  Arena a = interface_arena(iface);
  Arena base = arena_of_type(*t);
  ProtocolAutomaton proto(base);

  // Move of the AM arena for (component, base move); component 0 is shared.
  auto port = [&](int component, int base_move) {
    const std::string& p = base.move(base_move).path;
    if (component == 0) return a.find(1, p);
    return a.find(0, std::to_string(component) + p);
  };

  struct Key {
    int owner, proto, echo;  // echo: base move awaiting output, or -1
    int target;              // component that receives the echo
    bool operator<(const Key& o) const {
      return std::tie(owner, proto, echo, target) <
             std::tie(o.owner, o.proto, o.echo, o.target);
    }
  };
  std::map<Key, int> ids;
  std::vector<Key> keys;
  std::vector<Transition> ts;
  auto id_of = [&](const Key& k) {
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(keys.size());
    ids.emplace(k, id);
    keys.push_back(k);
    return id;
  };
  id_of(Key{0, proto.initial(), -1, -1});
  for (size_t s = 0; s < keys.size(); ++s) {
    Key k = keys[s];
    int from = static_cast<int>(s);
    if (k.echo >= 0) {
      int owner = proto.complete(k.proto) ? 0 : k.owner;
      ts.push_back({from, port(k.target, k.echo), id_of(Key{owner, k.proto, -1, -1})});
      continue;
    }
    for (const auto& m : base.moves()) {
      int next = proto.step(k.proto, m.id);
      if (next < 0) continue;
      if (m.input()) {
        // Client request or answer from the owning projection.
        for (int c = 1; c <= 2; ++c) {
          if (k.owner != 0 && k.owner != c) continue;
          if (k.owner == 0 && !base.initial(m.id)) continue;
          ts.push_back({from, port(c, m.id), id_of(Key{c, next, m.id, 0})});
        }
      } else if (k.owner != 0) {
        ts.push_back({from, port(0, m.id), id_of(Key{k.owner, next, m.id, k.owner})});
      }
    }
  }
  Arena named = primed_names(a, [](const Move& m) {
    if (m.face == 1) return std::string("0");
    return std::string(1, m.path[0]);
  });
  return StrategyAutomaton(iface, named, static_cast<int>(keys.size()), ts);
}

StrategyAutomaton minimize_strategy(const StrategyAutomaton& s) {
  int n = s.num_states();
  // Reachable states only.
  std::vector<bool> reach(n, false);
  std::queue<int> q;
  reach[0] = true;
  q.push(0);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (const auto& [m, to] : s.out(x))
      if (!reach[to]) reach[to] = true, q.push(to);
  }
  std::vector<int> block(n, 0);
  int blocks = 1;
  for (;;) {
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> sig;
    std::vector<int> next(n, -1);
    for (int x = 0; x < n; ++x) {
      if (!reach[x]) continue;
      std::vector<std::pair<int, int>> row;
      for (const auto& [m, to] : s.out(x)) row.emplace_back(m, block[to]);
      auto key = std::make_pair(block[x], row);
      auto it = sig.find(key);
      if (it == sig.end()) it = sig.emplace(key, static_cast<int>(sig.size())).first;
      next[x] = it->second;
    }
    int count = static_cast<int>(sig.size());
    block = next;
    if (count == blocks) break;
    blocks = count;
  }
  // Canonical numbering: breadth-first from the initial block by move id.
  std::vector<int> rep(blocks, -1);
  for (int x = 0; x < n; ++x)
    if (reach[x] && rep[block[x]] < 0) rep[block[x]] = x;
  std::vector<int> order(blocks, -1);
  int counter = 0;
  order[block[0]] = counter++;
  q.push(block[0]);
  std::vector<Transition> ts;
  while (!q.empty()) {
    int b = q.front();
    q.pop();
    for (const auto& [m, to] : s.out(rep[b])) {
      int tb = block[to];
      if (order[tb] < 0) {
        order[tb] = counter++;
        q.push(tb);
      }
      ts.push_back({order[b], m, order[tb]});
    }
  }
  return StrategyAutomaton(s.iface(), s.arena(), counter, ts);
}

}  // namespace gosyn
