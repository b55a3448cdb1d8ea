#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "gosyn/strategy.hpp"

namespace gosyn {

namespace {

int face_of(const Interface& iface, const std::string& ident) {
  for (size_t i = 0; i < iface.context.size(); ++i)
    if (iface.context[i].first == ident) return static_cast<int>(i) + 1;
  return -1;
}

struct OracleSearch {
  const StrategyAutomaton& s;
  const StrategyAutomaton& t;
  Arena out;
  size_t max_len;
  Language words;
  // External moves of the composite: (source 0 = s / 1 = t, local move) per id.
  std::vector<std::pair<int, int>> source;
  std::map<std::pair<std::set<std::pair<int, int>>, Word>, bool> seen;

  std::set<std::pair<int, int>> closure(std::pair<int, int> c) const {
    std::set<std::pair<int, int>> done{c};
    std::vector<std::pair<int, int>> todo{c};
    while (!todo.empty()) {
      auto [a, b] = todo.back();
      todo.pop_back();
      for (auto [m, to] : s.out(a)) {
        if (s.arena().move(m).face != 0) continue;
        int tm = t.arena().find(0, "L" + s.arena().move(m).path);
        int tt = t.next(b, tm);
        if (tt >= 0 && done.insert({to, tt}).second) todo.push_back({to, tt});
      }
    }
    return done;
  }

  void run(std::set<std::pair<int, int>> configs, Word w) {
    words.insert(w);
    if (w.size() == max_len) return;
    std::set<std::pair<int, int>> full;
    for (auto c : configs) {
      auto cl = closure(c);
      full.insert(cl.begin(), cl.end());
    }
    if (!seen.emplace(std::make_pair(full, w), true).second) return;
    for (size_t m = 0; m < out.size(); ++m) {
      std::set<std::pair<int, int>> next;
      auto [src, local] = source[m];
      if (local < 0) continue;
      for (auto [a, b] : full) {
        if (src == 0) {
          int n = s.next(a, local);
          if (n >= 0) next.insert({n, b});
        } else {
          int n = t.next(b, local);
          if (n >= 0) next.insert({a, n});
        }
      }
      if (next.empty()) continue;
      Word w2 = w;
      w2.push_back(static_cast<int>(m));
      run(next, w2);
    }
  }
};

}  // namespace

Language compose_oracle(const StrategyAutomaton& s, const StrategyAutomaton& t,
                        size_t max_len) {
  if (max_len > 16) throw LimitExceeded("compose_oracle: max_len above 16");
  const Type& tr = *t.iface().result;
  if (tr.kind != TypeKind::Arrow || !type_equal(tr.left, s.iface().result))
    throw std::invalid_argument("compose_oracle: types do not match");
  Interface iface;
  iface.result = tr.right;
  iface.context = t.iface().context;
  for (const auto& e : s.iface().context) iface.context.push_back(e);
  OracleSearch o{s, t, interface_arena(iface), max_len, {}, {}, {}};
  o.source.resize(o.out.size());
  for (const auto& m : o.out.moves()) {
    if (m.face == 0) {
      o.source[m.id] = {1, t.arena().find(0, "R" + m.path)};
      continue;
    }
    const std::string& id = iface.context[m.face - 1].first;
    int tf = face_of(t.iface(), id);
    if (tf > 0)
      o.source[m.id] = {1, t.arena().find(tf, m.path)};
    else
      o.source[m.id] = {0, s.arena().find(face_of(s.iface(), id), m.path)};
  }
  o.run({{0, 0}}, {});
  return o.words;
}

std::vector<Word> illegal_paths(const StrategyAutomaton& s, size_t max_len,
                                size_t limit) {
  std::vector<Word> found;
  struct Frame {
    int state;
    PlayChecker checker;
    Word word;
  };
  std::vector<Frame> stack{{0, PlayChecker(s.arena(), PlayChecker::Mode::Reentrant), {}}};
  while (!stack.empty() && found.size() < limit) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.word.size() == max_len) continue;
    for (auto [m, to] : s.out(f.state)) {
      Frame n{to, f.checker, f.word};
      n.word.push_back(m);
      if (n.checker.step(m)) {
        found.push_back(n.word);
        if (found.size() >= limit) break;
        continue;
      }
      stack.push_back(std::move(n));
    }
  }
  return found;
}

namespace {

/// Visits the reachable product of `s` with its protocol; `visit` returns
/// false to stop.
template <class F>
void protocol_product(const StrategyAutomaton& s, F visit) {
  ProtocolAutomaton p(s.arena());
  std::set<std::pair<int, int>> seen{{0, 0}};
  std::queue<std::pair<int, int>> todo;
  todo.push({0, 0});
  while (!todo.empty()) {
    auto [a, b] = todo.front();
    todo.pop();
    for (auto [m, to] : s.out(a)) {
      int pb = p.step(b, m);
      if (!visit(p, a, b, m, to, pb)) return;
      if (pb >= 0 && seen.insert({to, pb}).second) todo.push({to, pb});
    }
  }
}

}  // namespace

bool protocol_compliant(const StrategyAutomaton& s, std::string* why) {
  bool ok = true;
  protocol_product(s, [&](const ProtocolAutomaton& p, int a, int b, int m, int,
                          int pb) {
    if (pb >= 0) return true;
    ok = false;
    if (why)
      *why = "state " + std::to_string(a) + " plays " + s.arena().move(m).name +
             " with pending " + p.describe(b);
    return false;
  });
  return ok;
}

bool has_reset_property(const StrategyAutomaton& s, std::string* why) {
  bool ok = true;
  protocol_product(s, [&](const ProtocolAutomaton& p, int, int, int m, int to,
                          int pb) {
    if (pb < 0 || !p.complete(pb) || to == s.initial()) return true;
    ok = false;
    if (why)
      *why = "play completed by " + s.arena().move(m).name + " ends in state " +
             std::to_string(to);
    return false;
  });
  return ok;
}

}  // namespace gosyn
