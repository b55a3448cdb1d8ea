#include <algorithm>
#include <map>
#include <sstream>

#include "gosyn/plays.hpp"

namespace gosyn {

const char* to_string(Rule r) {
  switch (r) {
    case Rule::Fork:
      return "Fork";
    case Rule::Wait:
      return "Wait";
    case Rule::Serial:
      return "Serial";
    case Rule::Justification:
      return "Justification";
    case Rule::Duplicate:
      return "Duplicate";
  }
  return "?";
}

PlayChecker::PlayChecker(const Arena& arena, Mode mode)
    : arena_(&arena), mode_(mode), seen_(arena.size(), false) {}

int PlayChecker::pending_enabler(int move) const {
  for (size_t i = pending_.size(); i-- > 0;)
    if (pending_[i].move >= 0 && arena_->enables(pending_[i].move, move))
      return static_cast<int>(i);
  return -1;
}

std::optional<Rule> PlayChecker::step(int move) {
  const Move& m = arena_->move(move);
  if (mode_ == Mode::SinglePlay && count_ > 0 && pending_.empty())
    return Rule::Fork;  // the play's process tree has terminated

  int slot = -1;
  if (!arena_->initial(move)) {
    slot = pending_enabler(move);
    if (slot < 0) {
      bool ever = false;
      for (int e : arena_->enablers(move)) ever = ever || seen_[e];
      return ever ? Rule::Fork : Rule::Justification;
    }
  }
  if (m.question()) {
    for (const auto& p : pending_)
      if (p.move == move) return Rule::Serial;
    pending_.push_back(Pending{move, static_cast<int>(count_),
                               slot < 0 ? -1 : pending_[slot].occurrence});
    history_.push_back(
        Occurrence{move, slot < 0 ? -1 : pending_[slot].occurrence});
  } else {
    int q_occ = pending_[slot].occurrence;
    for (const auto& p : pending_)
      if (p.justifier == q_occ) return Rule::Wait;
    history_.push_back(Occurrence{move, q_occ});
    pending_.erase(pending_.begin() + slot);
  }
  seen_[move] = true;
  ++count_;
  return std::nullopt;
}

std::vector<std::pair<int, int>> PlayChecker::key() const {
  std::vector<std::pair<int, int>> k;
  for (const auto& p : pending_) {
    int jm = -1;
    for (const auto& q : pending_)
      if (q.occurrence == p.justifier) jm = q.move;
    k.emplace_back(p.move, jm);
  }
  return k;
}

std::vector<std::pair<int, int>> PlayChecker::canonical_key() const {
  auto k = key();
  std::sort(k.begin(), k.end());
  // Opening order only decides justifiers between pending moves that enable
  // a common move.
  for (size_t i = 0; i < pending_.size(); ++i)
    for (size_t j = i + 1; j < pending_.size(); ++j)
      for (const auto& m : arena_->moves())
        if (arena_->enables(pending_[i].move, m.id) &&
            arena_->enables(pending_[j].move, m.id)) {
          k.emplace_back(-1 - pending_[i].move, pending_[j].move);
          break;
        }
  return k;
}

std::vector<int> PlayChecker::pending_moves() const {
  std::vector<int> out;
  for (const auto& p : pending_) out.push_back(p.move);
  return out;
}

PlayResult check_play(const Arena& a, const Word& moves) {
  PlayChecker c(a, PlayChecker::Mode::SinglePlay);
  for (size_t i = 0; i < moves.size(); ++i) {
    if (auto r = c.step(moves[i])) {
      std::string detail = "move " + a.move(moves[i]).name;
      return PlayResult{std::nullopt, Violation{*r, i, detail}};
    }
  }
  return PlayResult{Play{c.history()}, std::nullopt};
}

Word parse_moves(const Arena& a, const std::string& text) {
  std::istringstream lines(text);
  Word w;
  std::string line, tok;
  while (std::getline(lines, line)) {
    std::istringstream is(line.substr(0, line.find('#')));
    while (is >> tok) {
      int id = a.find(tok);
      if (id < 0) throw std::invalid_argument("unknown move '" + tok + "'");
      w.push_back(id);
    }
  }
  return w;
}

std::string format_word(const Arena& a, const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += a.move(w[i]).name;
  }
  return out;
}

struct ProtocolAutomaton::Graph {
  Arena arena;
  std::map<std::vector<std::pair<int, int>>, int> index;
  std::vector<PlayChecker> reps;
  std::vector<std::vector<std::pair<int, int>>> keys;
  std::vector<std::vector<int>> delta;  // -2: not yet explored

  int add(const PlayChecker& c) {
    auto [it, fresh] = index.emplace(c.canonical_key(), static_cast<int>(keys.size()));
    if (fresh) {
      keys.push_back(c.key());
      reps.push_back(c);
      delta.emplace_back(arena.size(), -2);
    }
    return it->second;
  }
};

ProtocolAutomaton::ProtocolAutomaton(const Arena& a) : g_(std::make_shared<Graph>()) {
  g_->arena = a;
  g_->add(PlayChecker(g_->arena, PlayChecker::Mode::Reentrant));
}

const Arena& ProtocolAutomaton::arena() const { return g_->arena; }
size_t ProtocolAutomaton::num_states() const { return g_->keys.size(); }
bool ProtocolAutomaton::complete(int state) const { return g_->keys[state].empty(); }
const std::vector<std::pair<int, int>>& ProtocolAutomaton::key(int state) const {
  return g_->keys[state];
}

int ProtocolAutomaton::step(int state, int move) const {
  int& cached = g_->delta[state][move];
  if (cached != -2) return cached;
  PlayChecker next = g_->reps[state];
  int target = -1;
  if (!next.step(move)) {
    next.forget_history();
    target = g_->add(next);
  }
  // add() may have grown delta; index again.
  g_->delta[state][move] = target;
  return target;
}

std::string ProtocolAutomaton::describe(int state) const {
  std::string out = "{";
  const auto& k = g_->keys[state];
  for (size_t i = 0; i < k.size(); ++i) {
    if (i) out += ",";
    out += g_->arena.move(k[i].first).name;
  }
  return out + "}";
}

Language ProtocolAutomaton::language(size_t max_len, bool single_session) const {
  Language out;
  Word w;
  auto dfs = [&](auto&& self, int state) -> void {
    out.insert(w);
    if (w.size() >= max_len) return;
    if (single_session && !w.empty() && complete(state)) return;
    for (size_t m = 0; m < g_->arena.size(); ++m) {
      int t = step(state, static_cast<int>(m));
      if (t < 0) continue;
      w.push_back(static_cast<int>(m));
      self(self, t);
      w.pop_back();
    }
  };
  dfs(dfs, initial());
  return out;
}

std::set<int> ProtocolAutomaton::step_round(const std::set<int>& from,
                                            const Round& round) const {
  std::set<int> out;
  for (size_t i = 0; i < round.size(); ++i)
    for (size_t j = i + 1; j < round.size(); ++j)
      if (round[i] == round[j]) return out;
  std::vector<bool> used(round.size(), false);
  std::set<std::pair<std::vector<bool>, int>> visited;
  auto dfs = [&](auto&& self, int state, size_t depth) -> void {
    if (!visited.insert({used, state}).second) return;
    if (depth == round.size()) {
      out.insert(state);
      return;
    }
    for (size_t i = 0; i < round.size(); ++i) {
      if (used[i]) continue;
      int t = step(state, round[i]);
      if (t < 0) continue;
      used[i] = true;
      self(self, t, depth + 1);
      used[i] = false;
    }
  };
  for (int s : from) dfs(dfs, s, 0);
  return out;
}

ProtocolAutomaton protocol_automaton(const Arena& a) { return ProtocolAutomaton(a); }

Language enumerate_plays(const Arena& a, size_t max_len) {
  if (max_len > 14)
    throw LimitExceeded("enumerate_plays: max_len " + std::to_string(max_len) +
                        " exceeds 14");
  Language out;
  Word w;
  auto dfs = [&](auto&& self) -> void {
    out.insert(w);
    if (w.size() >= max_len) return;
    for (const auto& m : a.moves()) {
      w.push_back(m.id);
      if (check_play(a, w).legal()) self(self);
      w.pop_back();
    }
  };
  dfs(dfs);
  return out;
}

RoundMonitor::RoundMonitor(const Arena& a) : arena_(&a) {
  states_.emplace_back(a, PlayChecker::Mode::Reentrant);
}

std::vector<PlayChecker> RoundMonitor::advance(const Round& round, Rule* failure,
                                               size_t* best) const {
  std::vector<PlayChecker> out;
  std::set<std::vector<std::pair<int, int>>> seen_keys;
  *best = 0;
  *failure = Rule::Justification;
  std::vector<bool> used(round.size(), false);
  std::set<std::pair<std::vector<bool>, std::vector<std::pair<int, int>>>> visited;
  auto dfs = [&](auto&& self, const PlayChecker& c, size_t depth) -> void {
    if (!visited.insert({used, c.key()}).second) return;
    if (depth == round.size()) {
      if (seen_keys.insert(c.key()).second) out.push_back(c);
      return;
    }
    for (size_t i = 0; i < round.size(); ++i) {
      if (used[i]) continue;
      PlayChecker next = c;
      if (auto r = next.step(round[i])) {
        if (depth >= *best) {
          *best = depth;
          *failure = *r;
        }
        continue;
      }
      used[i] = true;
      self(self, next, depth + 1);
      used[i] = false;
    }
  };
  for (const auto& s : states_) dfs(dfs, s, 0);
  return out;
}

std::optional<Violation> RoundMonitor::push(const Round& round) {
  size_t index = rounds_++;
  for (size_t i = 0; i < round.size(); ++i)
    for (size_t j = i + 1; j < round.size(); ++j)
      if (round[i] == round[j])
        return Violation{Rule::Duplicate, index,
                         "port " + arena_->move(round[i]).name +
                             " twice in one round"};
  Rule failure;
  size_t depth;
  auto next = advance(round, &failure, &depth);
  if (next.empty())
    return Violation{failure, index, "no legal linearization of round"};
  states_ = std::move(next);
  return std::nullopt;
}

bool RoundMonitor::accepts(const Round& round) const {
  for (size_t i = 0; i < round.size(); ++i)
    for (size_t j = i + 1; j < round.size(); ++j)
      if (round[i] == round[j]) return false;
  Rule failure;
  size_t depth;
  return !advance(round, &failure, &depth).empty();
}

bool RoundMonitor::complete() const {
  return std::any_of(states_.begin(), states_.end(),
                     [](const PlayChecker& c) { return c.complete(); });
}

std::vector<int> RoundMonitor::pending_moves() const {
  return states_.front().pending_moves();
}

SyncResult check_sync_trace(const Arena& a, const RoundTrace& rounds) {
  RoundMonitor mon(a);
  for (const auto& r : rounds)
    if (auto v = mon.push(r)) return SyncResult{v};
  return SyncResult{};
}

RoundTrace parse_round_trace(const std::vector<std::string>& names,
                             const std::string& text) {
  RoundTrace out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    Round r;
    std::string item;
    std::istringstream ls(line);
    bool any = false;
    while (std::getline(ls, item, ',')) {
      auto b = item.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      auto e = item.find_last_not_of(" \t\r");
      std::string name = item.substr(b, e - b + 1);
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end())
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": unknown port '" + name + "'");
      r.push_back(static_cast<int>(it - names.begin()));
      any = true;
    }
    if (any) out.push_back(r);
  }
  return out;
}

RoundTrace parse_round_trace(const Arena& a, const std::string& text) {
  std::vector<std::string> names;
  for (const auto& m : a.moves()) names.push_back(m.name);
  return parse_round_trace(names, text);
}

std::string format_round_trace(const Arena& a, const RoundTrace& t) {
  std::string out;
  for (const auto& r : t) {
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) out += ", ";
      out += a.move(r[i]).name;
    }
    out += "\n";
  }
  return out;
}

}  // namespace gosyn
