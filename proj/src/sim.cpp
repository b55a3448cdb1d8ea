#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"
#include "gosyn/sim.hpp"

namespace gosyn {

const char* to_string(SimStatus s) {
  switch (s) {
    case SimStatus::Completed: return "Completed";
    case SimStatus::Deadlock: return "Deadlock";
    case SimStatus::ProtocolViolation: return "ProtocolViolation";
    case SimStatus::Race: return "Race";
  }
  return "?";
}

int SyncDesign::find(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

SyncMachine synthesize(const StrategyAutomaton& s, MinMode mode) {
  SyncMachine m = round_abstract(s);
  switch (mode) {
    case MinMode::None: return m;
    case MinMode::Plain: return minimize(m);
    case MinMode::Protocol: return minimize_under_protocol(m, ProtocolAutomaton(s.arena()));
  }
  return m;
}

SyncDesign synthesize(const Design& d, MinMode mode) {
  SyncDesign out;
  out.iface = d.iface;
  out.arena = d.arena;
  out.names = d.names;
  out.kinds = d.kinds;
  for (const auto& p : d.parts) out.parts.push_back(synthesize(p, mode));
  out.wires = d.wires;
  out.exports = d.exports;
  return out;
}

SyncDesign single_instance(const SyncMachine& m, const std::string& name) {
  SyncDesign d;
  d.iface = m.iface();
  d.arena = m.arena();
  d.names = {name};
  d.kinds = {"machine"};
  d.parts = {m};
  for (const auto& mv : m.arena().moves()) d.exports.push_back(Endpoint{0, mv.id});
  return d;
}

// ---------------------------------------------------------------------------
// Wiring files

namespace {

int find_port(const Arena& a, const std::string& name) {
  int m = a.find(name);
  if (m >= 0) return m;
  for (const auto& mv : a.moves())
    if (port_name(mv.name) == name) return mv.id;
  return -1;
}

}  // namespace

SyncDesign parse_wiring(const std::string& text, MinMode mode) {
  SyncDesign d;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_iface = false;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("wiring line " + std::to_string(lineno) + ": " + why);
  };
  auto endpoint = [&](const std::string& ref) {
    auto dot = ref.find('.');
    if (dot == std::string::npos) fail("expected <instance>.<port>, got '" + ref + "'");
    int part = d.find(ref.substr(0, dot));
    if (part < 0) fail("unknown instance '" + ref.substr(0, dot) + "'");
    int move = find_port(d.parts[part].arena(), ref.substr(dot + 1));
    if (move < 0) fail("unknown port '" + ref + "'");
    return Endpoint{part, move};
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::string cmd;
    if (!(ls >> cmd)) continue;
    std::string rest;
    std::getline(ls, rest);
    std::istringstream rs(rest);
    if (cmd == "interface") {
      try {
        d.iface.result = parse_type(rest);
      } catch (const std::exception& e) {
        fail(e.what());
      }
      d.arena = interface_arena(d.iface);
      d.exports.assign(d.arena.size(), Endpoint{});
      have_iface = true;
    } else if (cmd == "instance") {
      std::string name, kind;
      rs >> name >> kind;
      if (name.empty() || kind.empty()) fail("expected: instance <name> <kind>");
      if (d.find(name) >= 0) fail("duplicate instance '" + name + "'");
      std::string type_text;
      std::getline(rs, type_text);
      StrategyAutomaton s;
      try {
        if (kind == "am")
          s = diagonal(parse_type(type_text));
        else if (kind == "id")
          s = copycat(parse_type(type_text));
        else if (is_constant(kind))
          s = denote_constant(kind);
        else
          fail("unknown instance kind '" + kind + "'");
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      d.names.push_back(name);
      d.kinds.push_back(kind);
      d.parts.push_back(synthesize(s, mode));
    } else if (cmd == "wire") {
      std::string a, b;
      rs >> a >> b;
      Endpoint ea = endpoint(a), eb = endpoint(b);
      bool ia = d.parts[ea.part].arena().move(ea.move).input();
      bool ib = d.parts[eb.part].arena().move(eb.move).input();
      if (ia == ib) fail("wire joins two " + std::string(ia ? "inputs" : "outputs"));
      d.wires.emplace_back(ea, eb);
    } else if (cmd == "export") {
      if (!have_iface) fail("export before interface");
      std::string mv, ref;
      rs >> mv >> ref;
      int m = find_port(d.arena, mv);
      if (m < 0) fail("unknown external move '" + mv + "'");
      Endpoint e = endpoint(ref);
      if (d.arena.move(m).input() != d.parts[e.part].arena().move(e.move).input())
        fail("export polarity mismatch for '" + mv + "'");
      d.exports[m] = e;
    } else {
      fail("unknown directive '" + cmd + "'");
    }
  }
  if (!have_iface) throw std::invalid_argument("wiring: missing interface line");
  return d;
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

class Engine {
 public:
  explicit Engine(const SyncDesign& d) : d_(d), state_(d.parts.size(), 0) {
    for (const auto& [a, b] : d.wires) {
      bool a_out = !d.parts[a.part].arena().move(a.move).input();
      if (a_out)
        route_[{a.part, a.move}].push_back(b);
      else
        route_[{b.part, b.move}].push_back(a);
    }
    for (const auto& mv : d.arena.moves()) {
      Endpoint e = d.exports[mv.id];
      if (e.part < 0) continue;
      if (!mv.input()) ext_out_[{e.part, e.move}] = mv.id;
    }
    for (const auto& p : d.parts) initial_.push_back(p.initial());
  }

  struct Cycle {
    std::vector<std::set<int>> offered;
    std::vector<std::vector<int>> taken, out;
    std::set<int> ext;
    std::vector<int> next;
  };

  Cycle run(const Round& inputs) const {
    size_t n = d_.parts.size();
    Cycle c;
    c.offered.resize(n);
    c.taken.resize(n);
    c.out.resize(n);
    for (size_t i = 0; i < n; ++i) c.out[i] = d_.parts[i].find(state_[i], {})->outputs;
    for (int m : inputs) {
      Endpoint e = d_.exports[m];
      if (e.part >= 0) c.offered[e.part].insert(e.move);
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (size_t i = 0; i < n; ++i)
        for (int o : c.out[i]) {
          auto r = route_.find({static_cast<int>(i), o});
          if (r != route_.end())
            for (const auto& e : r->second)
              changed |= c.offered[e.part].insert(e.move).second;
          auto x = ext_out_.find({static_cast<int>(i), o});
          if (x != ext_out_.end()) c.ext.insert(x->second);
        }
      for (size_t i = 0; i < n; ++i)
        for (int m : c.offered[i]) {
          if (std::binary_search(c.taken[i].begin(), c.taken[i].end(), m)) continue;
          std::vector<int> trial = c.taken[i];
          trial.insert(std::lower_bound(trial.begin(), trial.end(), m), m);
          if (const SyncTransition* t = d_.parts[i].find(state_[i], trial)) {
            c.taken[i] = std::move(trial);
            c.out[i] = t->outputs;
            changed = true;
          }
        }
    }
    for (size_t i = 0; i < n; ++i) c.next.push_back(d_.parts[i].find(state_[i], c.taken[i])->to);
    // An external input counts once its instance has taken it.
    for (int m : inputs) {
      Endpoint e = d_.exports[m];
      if (e.part >= 0 && std::binary_search(c.taken[e.part].begin(),
                                            c.taken[e.part].end(), e.move))
        c.ext.insert(m);
    }
    return c;
  }

  void commit(const Cycle& c) { state_ = c.next; }
  bool at_initial() const { return state_ == initial_; }

  static Round boundary(const Cycle& c, size_t i) {
    Round r(c.offered[i].begin(), c.offered[i].end());
    r.insert(r.end(), c.out[i].begin(), c.out[i].end());
    std::sort(r.begin(), r.end());
    return r;
  }

 private:
  const SyncDesign& d_;
  std::vector<int> state_, initial_;
  std::map<std::pair<int, int>, std::vector<Endpoint>> route_;
  std::map<std::pair<int, int>, int> ext_out_;
};

std::vector<int> race_ports(const SyncDesign& d, const Engine::Cycle& c, size_t i) {
  if (d.kinds[i] != "am") return {};
  const Arena& a = d.parts[i].arena();
  // Requests that follow one another within the cycle are all taken; a
  // refused one among several means they arrived together.
  std::vector<int> initials;
  bool refused = false;
  for (int m : c.offered[i])
    if (a.move(m).face == 0 && a.initial(m)) {
      initials.push_back(m);
      refused |= std::find(c.taken[i].begin(), c.taken[i].end(), m) == c.taken[i].end();
    }
  return initials.size() >= 2 && refused ? initials : std::vector<int>{};
}

}  // namespace

SimReport simulate(const SyncDesign& d, const RoundTrace& stimulus,
                   const SimOptions& options) {
  for (const auto& r : stimulus)
    for (int m : r)
      if (m < 0 || m >= static_cast<int>(d.arena.size()) || !d.arena.move(m).input())
        throw std::invalid_argument("stimulus names a move that is not a device input");
  Engine eng(d);
  SimReport rep;
  RoundMonitor ext_mon(d.arena);
  std::vector<RoundMonitor> mons;
  for (const auto& p : d.parts) mons.emplace_back(p.arena());
  std::vector<int> probed;
  for (const auto& name : options.probes) {
    int i = d.find(name);
    if (i < 0) throw std::invalid_argument("probe: unknown instance '" + name + "'");
    probed.push_back(i);
    rep.probes[name];
  }
  size_t k = 0;
  for (size_t cycle = 1; cycle <= options.max_cycles; ++cycle) {
    Engine::Cycle c;
    bool presented = false;
    if (k < stimulus.size()) {
      c = eng.run(stimulus[k]);
      Round r(c.ext.begin(), c.ext.end());
      bool taken = std::all_of(stimulus[k].begin(), stimulus[k].end(),
                               [&](int m) { return c.ext.count(m) > 0; });
      presented = options.unsafe || (taken && ext_mon.accepts(r));
    }
    if (!presented) c = eng.run({});
    Round ext(c.ext.begin(), c.ext.end());
    bool active = !ext.empty();
    for (size_t i = 0; i < d.parts.size(); ++i)
      active |= !c.offered[i].empty() || !c.out[i].empty();
    rep.cycles = cycle;
    rep.cycle = cycle;

    if (!active) {
      rep.at_initial = eng.at_initial();
      if (k == stimulus.size() && ext_mon.complete()) {
        rep.status = SimStatus::Completed;
      } else {
        rep.status = SimStatus::Deadlock;
        rep.detail = k < stimulus.size()
                         ? "stimulus round " + std::to_string(k + 1) + " never enabled"
                         : "pending: " + format_word(d.arena, ext_mon.pending_moves());
      }
      rep.cycles = cycle - 1;
      return rep;
    }

    rep.trace.push_back(ext);
    for (size_t j = 0; j < probed.size(); ++j)
      rep.probes[d.names[probed[j]]].push_back(Engine::boundary(c, probed[j]));
    for (size_t i = 0; i < d.parts.size(); ++i) {
      auto ports = race_ports(d, c, i);
      if (!ports.empty()) {
        rep.status = SimStatus::Race;
        rep.where = d.names[i];
        rep.race_ports = ports;
        rep.detail = "simultaneous initial requests " +
                     format_word(d.parts[i].arena(), ports) + " at " + d.names[i];
        return rep;
      }
    }
    if (auto v = ext_mon.push(ext)) {
      rep.status = SimStatus::ProtocolViolation;
      rep.violation = v;
      rep.where = "external";
      rep.detail = v->detail;
      return rep;
    }
    for (size_t i = 0; i < d.parts.size(); ++i)
      if (auto v = mons[i].push(Engine::boundary(c, i))) {
        rep.status = SimStatus::ProtocolViolation;
        rep.violation = v;
        rep.where = d.names[i];
        rep.detail = v->detail;
        return rep;
      }
    eng.commit(c);
    if (presented) ++k;
  }
  rep.status = SimStatus::Deadlock;
  rep.detail = "max cycles exhausted";
  rep.at_initial = eng.at_initial();
  return rep;
}

SimReport simulate(const Netlist& n, const Arena& a, const RoundTrace& stimulus,
                   const SimOptions& options) {
  SimReport rep;
  RoundMonitor mon(a);
  std::vector<bool> state = netlist_reset(n);
  std::vector<bool> reset = state;
  auto evaluate = [&](const Round& inputs, std::vector<bool>& st) {
    std::vector<bool> in(n.inputs.size(), false);
    for (int m : inputs) {
      auto it = std::find(n.inputs.begin(), n.inputs.end(), m);
      if (it == n.inputs.end())
        throw std::invalid_argument("stimulus names a move that is not a device input");
      in[it - n.inputs.begin()] = true;
    }
    std::vector<bool> out = netlist_step(n, st, in);
    Round r = inputs;
    for (size_t i = 0; i < out.size(); ++i)
      if (out[i]) r.push_back(n.outputs[i]);
    std::sort(r.begin(), r.end());
    return r;
  };
  size_t k = 0;
  for (size_t cycle = 1; cycle <= options.max_cycles; ++cycle) {
    std::vector<bool> next = state;
    Round r;
    bool presented = false;
    if (k < stimulus.size()) {
      r = evaluate(stimulus[k], next);
      presented = options.unsafe || mon.accepts(r);
    }
    if (!presented) {
      next = state;
      r = evaluate({}, next);
    }
    rep.cycle = cycle;
    if (r.empty()) {
      rep.at_initial = state == reset;
      if (k == stimulus.size() && mon.complete()) {
        rep.status = SimStatus::Completed;
      } else {
        rep.status = SimStatus::Deadlock;
        rep.detail = k < stimulus.size()
                         ? "stimulus round " + std::to_string(k + 1) + " never enabled"
                         : "pending: " + format_word(a, mon.pending_moves());
      }
      rep.cycles = cycle - 1;
      return rep;
    }
    rep.cycles = cycle;
    rep.trace.push_back(r);
    if (auto v = mon.push(r)) {
      rep.status = SimStatus::ProtocolViolation;
      rep.violation = v;
      rep.where = "external";
      rep.detail = v->detail;
      return rep;
    }
    state = next;
    if (presented) ++k;
  }
  rep.status = SimStatus::Deadlock;
  rep.detail = "max cycles exhausted";
  return rep;
}

// ---------------------------------------------------------------------------
// Output

std::string to_vcd(const std::vector<std::string>& ports, const RoundTrace& t,
                   const std::string& scope) {
  auto code = [](size_t i) {
    std::string c;
    do {
      c += static_cast<char>('!' + i % 94);
      i /= 94;
    } while (i);
    return c;
  };
  std::ostringstream out;
  out << "$timescale 1ns $end\n$scope module " << scope << " $end\n";
  for (size_t i = 0; i < ports.size(); ++i)
    out << "$var wire 1 " << code(i) << " " << ports[i] << " $end\n";
  out << "$upscope $end\n$enddefinitions $end\n#0\n$dumpvars\n";
  for (size_t i = 0; i < ports.size(); ++i) out << "0" << code(i) << "\n";
  out << "$end\n";
  for (size_t c = 0; c < t.size(); ++c) {
    if (t[c].empty()) continue;
    out << "#" << c * 10 + 10 << "\n";
    for (int m : t[c]) out << "1" << code(m) << "\n";
    out << "#" << c * 10 + 15 << "\n";
    for (int m : t[c]) out << "0" << code(m) << "\n";
  }
  out << "#" << t.size() * 10 + 10 << "\n";
  return out.str();
}

std::string report_text(const SimReport& r, const Arena& a) {
  std::ostringstream out;
  out << "status: " << to_string(r.status);
  if (r.status != SimStatus::Completed) out << " at cycle " << r.cycle;
  out << "\ncycles: " << r.cycles << "\n";
  if (!r.where.empty()) out << "where: " << r.where << "\n";
  if (r.violation) out << "rule: " << to_string(r.violation->rule) << "\n";
  if (!r.detail.empty()) out << "detail: " << r.detail << "\n";
  out << "trace:\n" << format_round_trace(a, r.trace);
  return out.str();
}

std::string report_json(const SimReport& r, const Arena& a) {
  nlohmann::json j;
  j["status"] = to_string(r.status);
  j["cycle"] = r.cycle;
  j["cycles"] = r.cycles;
  if (!r.where.empty()) j["where"] = r.where;
  if (r.violation) {
    j["violation"] = {{"rule", to_string(r.violation->rule)},
                      {"index", r.violation->index},
                      {"detail", r.violation->detail}};
  }
  if (!r.detail.empty()) j["detail"] = r.detail;
  j["trace"] = nlohmann::json::array();
  for (const auto& round : r.trace) {
    nlohmann::json names = nlohmann::json::array();
    for (int m : round) names.push_back(a.move(m).name);
    j["trace"].push_back(names);
  }
  j["at_initial"] = r.at_initial;
  return j.dump(2) + "\n";
}

}  // namespace gosyn
