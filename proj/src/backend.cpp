#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "gosyn/backend.hpp"

namespace gosyn {

namespace {

constexpr int kMaxInputs = 12;

/// Protocol configurations reaching each machine state.
std::vector<std::set<std::set<int>>> reach_sets(const SyncMachine& m,
                                               const ProtocolAutomaton& p) {
  std::vector<std::set<std::set<int>>> reach(m.num_states());
  std::vector<std::pair<int, std::set<int>>> todo{{m.initial(), {p.initial()}}};
  reach[m.initial()].insert({p.initial()});
  while (!todo.empty()) {
    auto [s, ps] = todo.back();
    todo.pop_back();
    for (const auto* t : m.from(s)) {
      Round r = t->inputs;
      r.insert(r.end(), t->outputs.begin(), t->outputs.end());
      std::set<int> next = p.step_round(ps, r);
      if (!next.empty() && reach[t->to].insert(next).second) todo.push_back({t->to, next});
    }
  }
  return reach;
}

Sop with_state(const std::vector<Sop>& per_state, int state_base) {
  bool uniform = std::all_of(per_state.begin(), per_state.end(),
                             [&](const Sop& f) { return f == per_state.front(); });
  if (per_state.size() == 1 || uniform) return per_state.front();
  Sop out;
  for (size_t s = 0; s < per_state.size(); ++s)
    for (Cube c : per_state[s]) {
      c.push_back({state_base + static_cast<int>(s), true});
      out.push_back(c);
    }
  return out;
}

}  // namespace

Netlist to_netlist(const SyncMachine& m, const std::string& name) {
  const Arena& a = m.arena();
  Netlist n;
  n.name = name;
  for (const auto& mv : a.moves()) {
    n.ports.push_back({port_name(mv.name), mv.id, mv.input()});
    (mv.input() ? n.inputs : n.outputs).push_back(mv.id);
  }
  int k = static_cast<int>(n.inputs.size());
  if (k > kMaxInputs)
    throw LimitExceeded("to_netlist: " + std::to_string(k) + " input ports (limit " +
                        std::to_string(kMaxInputs) + ")");
  int states = m.num_states();
  n.registers = m.combinational() ? 0 : states;

  ProtocolAutomaton p(a);
  auto reach = reach_sets(m, p);
  uint32_t combos = 1u << k;
  // Per state and combination: the transition, or null for a don't-care.
  std::vector<std::vector<const SyncTransition*>> act(
      states, std::vector<const SyncTransition*>(combos, nullptr));
  for (int s = 0; s < states; ++s)
    for (uint32_t c = 0; c < combos; ++c) {
      std::vector<int> offered;
      for (int i = 0; i < k; ++i)
        if (c >> i & 1u) offered.push_back(n.inputs[i]);
      const SyncTransition* t = m.find(s, offered);
      if (!t) continue;
      Round r = offered;
      r.insert(r.end(), t->outputs.begin(), t->outputs.end());
      bool legal = c == 0 || std::any_of(reach[s].begin(), reach[s].end(),
                                         [&](const std::set<int>& ps) {
                                           return !p.step_round(ps, r).empty();
                                         });
      if (legal) act[s][c] = t;
    }

  auto build = [&](const std::function<bool(const SyncTransition&)>& on) {
    std::vector<Sop> per_state;
    for (int s = 0; s < states; ++s) {
      std::vector<uint32_t> ons, dcs;
      for (uint32_t c = 0; c < combos; ++c) {
        if (!act[s][c])
          dcs.push_back(c);
        else if (on(*act[s][c]))
          ons.push_back(c);
      }
      per_state.push_back(minimize_sop(k, ons, dcs));
    }
    return with_state(per_state, k);
  };
  for (int o : n.outputs) {
    auto on = [&](const SyncTransition& t) {
      return std::binary_search(t.outputs.begin(), t.outputs.end(), o);
    };
    // Outputs read only the inputs they depend on in specified behaviour,
    // so don't-cares cannot add combinational paths.
    uint32_t support = 0;
    for (int s = 0; s < states; ++s)
      for (uint32_t c = 0; c < combos; ++c)
        for (int i = 0; i < k; ++i) {
          uint32_t d = c ^ (1u << i);
          if (act[s][c] && act[s][d] && on(*act[s][c]) != on(*act[s][d]))
            support |= 1u << i;
        }
    std::vector<Sop> per_state;
    bool projected = true;
    for (int s = 0; s < states && projected; ++s) {
      std::vector<int> value(combos, -1);  // over support bits only
      for (uint32_t c = 0; c < combos && projected; ++c) {
        if (!act[s][c]) continue;
        int v = on(*act[s][c]);
        int& slot = value[c & support];
        if (slot >= 0 && slot != v) projected = false;
        slot = v;
      }
      std::vector<uint32_t> ons, dcs;
      for (uint32_t c = 0; c < combos; ++c) {
        if ((c & ~support) != 0 || value[c] < 0)
          dcs.push_back(c);
        else if (value[c])
          ons.push_back(c);
      }
      per_state.push_back(minimize_sop(k, ons, dcs));
    }
    // Bits outside the support were don't-cares; drop any literal left on them.
    for (auto& f : per_state)
      for (auto& cube : f)
        cube.erase(std::remove_if(cube.begin(), cube.end(),
                                  [&](Literal l) { return !(support >> l.var & 1u); }),
                   cube.end());
    n.output_logic.push_back(projected ? with_state(per_state, k) : build(on));
  }
  for (int j = 0; j < n.registers; ++j)
    n.next_state.push_back(
        build([&](const SyncTransition& t) { return t.to == j; }));
  return n;
}

std::vector<bool> netlist_reset(const Netlist& n) {
  std::vector<bool> st(n.registers, false);
  if (n.registers) st[0] = true;
  return st;
}

std::vector<bool> netlist_step(const Netlist& n, std::vector<bool>& state,
                               const std::vector<bool>& inputs) {
  std::vector<bool> vars = inputs;
  vars.insert(vars.end(), state.begin(), state.end());
  std::vector<bool> out;
  for (const auto& f : n.output_logic) out.push_back(eval_sop(f, vars));
  std::vector<bool> next;
  for (const auto& f : n.next_state) next.push_back(eval_sop(f, vars));
  state = next;
  return out;
}

namespace {

std::string var_name(const Netlist& n, int v) {
  int k = static_cast<int>(n.inputs.size());
  if (v < k) return n.ports[n.inputs[v]].name;
  return "s" + std::to_string(v - k);
}

std::string sop_text(const Netlist& n, const Sop& f) {
  if (f.empty()) return "1'b0";
  std::string out;
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) out += " | ";
    if (f[i].empty()) return "1'b1";
    bool paren = f.size() > 1 && f[i].size() > 1;
    if (paren) out += "(";
    for (size_t j = 0; j < f[i].size(); ++j) {
      if (j) out += " & ";
      out += (f[i][j].positive ? "" : "~") + var_name(n, f[i][j].var);
    }
    if (paren) out += ")";
  }
  return out;
}

}  // namespace

namespace {

std::string module_name(std::string name) {
  static const std::set<std::string> reserved = {
      "always", "and", "assign", "begin", "case", "default", "else", "end",
      "endcase", "endmodule", "for", "if", "initial", "inout", "input", "module",
      "nand", "nor", "not", "or", "output", "reg", "wait", "while", "wire", "xor"};
  for (char& c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
  if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0])) ||
      reserved.count(name))
    name = "m_" + name;
  return name;
}

}  // namespace

std::string emit_verilog(const Netlist& n, const std::string& name) {
  std::ostringstream out;
  std::string module = module_name(name.empty() ? n.name : name);
  std::vector<std::string> decls;
  if (n.registers) {
    decls.push_back("input clk");
    decls.push_back("input rst");
  }
  for (const auto& p : n.ports) decls.push_back((p.input ? "input " : "output ") + p.name);
  out << "module " << module << " (";
  for (size_t i = 0; i < decls.size(); ++i)
    out << (i ? ",\n" : "\n") << "  " << decls[i];
  out << "\n);\n";
  if (n.registers) {
    out << "  reg";
    for (int j = 0; j < n.registers; ++j) out << (j ? ", s" : " s") << j;
    out << ";\n";
  }
  for (size_t i = 0; i < n.outputs.size(); ++i)
    out << "  assign " << n.ports[n.outputs[i]].name << " = "
        << sop_text(n, n.output_logic[i]) << ";\n";
  if (n.registers) {
    out << "  always @(posedge clk) begin\n    if (rst) begin\n";
    for (int j = 0; j < n.registers; ++j)
      out << "      s" << j << " <= 1'b" << (j == 0 ? 1 : 0) << ";\n";
    out << "    end else begin\n";
    for (int j = 0; j < n.registers; ++j)
      out << "      s" << j << " <= " << sop_text(n, n.next_state[j]) << ";\n";
    out << "    end\n  end\n";
  }
  out << "endmodule\n";
  return out.str();
}

std::string emit_dot(const Netlist& n) {
  std::ostringstream out;
  out << "digraph \"" << n.name << "\" {\n  rankdir=LR;\n";
  for (const auto& p : n.ports)
    out << "  " << p.name << " [shape=" << (p.input ? "triangle" : "invtriangle")
        << "];\n";
  for (int j = 0; j < n.registers; ++j) out << "  s" << j << " [shape=box];\n";
  auto edges = [&](const Sop& f, const std::string& target) {
    std::set<int> vars;
    for (const auto& c : f)
      for (auto l : c) vars.insert(l.var);
    for (int v : vars) out << "  " << var_name(n, v) << " -> " << target << ";\n";
  };
  for (size_t i = 0; i < n.outputs.size(); ++i)
    edges(n.output_logic[i], n.ports[n.outputs[i]].name);
  for (int j = 0; j < n.registers; ++j) edges(n.next_state[j], "s" + std::to_string(j));
  out << "}\n";
  return out.str();
}

namespace {

nlohmann::json sop_json(const Sop& f) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : f) {
    nlohmann::json cube = nlohmann::json::array();
    for (auto l : c) cube.push_back(l.positive ? l.var : ~l.var);
    a.push_back(cube);
  }
  return a;
}

Sop sop_from_json(const nlohmann::json& a) {
  Sop f;
  for (const auto& cube : a) {
    Cube c;
    for (const auto& v : cube) {
      int x = v.get<int>();
      c.push_back(x >= 0 ? Literal{x, true} : Literal{~x, false});
    }
    f.push_back(c);
  }
  return f;
}

}  // namespace

std::string emit_json(const Netlist& n) {
  nlohmann::json j;
  j["name"] = n.name;
  j["ports"] = nlohmann::json::array();
  for (const auto& p : n.ports)
    j["ports"].push_back({{"name", p.name}, {"move", p.move}, {"input", p.input}});
  j["inputs"] = n.inputs;
  j["outputs"] = n.outputs;
  j["registers"] = n.registers;
  j["output_logic"] = nlohmann::json::array();
  for (const auto& f : n.output_logic) j["output_logic"].push_back(sop_json(f));
  j["next_state"] = nlohmann::json::array();
  for (const auto& f : n.next_state) j["next_state"].push_back(sop_json(f));
  return j.dump(2) + "\n";
}

Netlist netlist_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    Netlist n;
    n.name = j.at("name").get<std::string>();
    for (const auto& p : j.at("ports"))
      n.ports.push_back({p.at("name").get<std::string>(), p.at("move").get<int>(),
                         p.at("input").get<bool>()});
    n.inputs = j.at("inputs").get<std::vector<int>>();
    n.outputs = j.at("outputs").get<std::vector<int>>();
    n.registers = j.at("registers").get<int>();
    for (const auto& f : j.at("output_logic")) n.output_logic.push_back(sop_from_json(f));
    for (const auto& f : j.at("next_state")) n.next_state.push_back(sop_from_json(f));
    if (n.output_logic.size() != n.outputs.size() ||
        static_cast<int>(n.next_state.size()) != n.registers)
      throw std::invalid_argument("netlist json: logic does not match ports");
    return n;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("netlist json: ") + e.what());
  }
}

void check_combinational_cycles(const std::vector<const Netlist*>& instances,
                                const std::vector<std::string>& names,
                                const std::vector<NetWire>& wires) {
  // Nodes: (instance, move) for every port.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> succ;
  for (size_t i = 0; i < instances.size(); ++i) {
    const Netlist& n = *instances[i];
    int k = static_cast<int>(n.inputs.size());
    for (size_t o = 0; o < n.outputs.size(); ++o)
      for (const auto& c : n.output_logic[o])
        for (auto l : c)
          if (l.var < k)
            succ[{static_cast<int>(i), n.inputs[l.var]}].push_back(
                {static_cast<int>(i), n.outputs[o]});
  }
  for (const auto& w : wires)
    succ[{w.from_instance, w.from_port}].push_back({w.to_instance, w.to_port});
  std::map<std::pair<int, int>, int> color;
  std::vector<std::pair<int, int>> stack;
  auto label = [&](std::pair<int, int> v) {
    return names[v.first] + "." + instances[v.first]->ports[v.second].name;
  };
  std::function<void(std::pair<int, int>)> dfs = [&](std::pair<int, int> v) {
    color[v] = 1;
    stack.push_back(v);
    for (auto w : succ[v]) {
      if (color[w] == 1) {
        std::vector<std::string> path;
        auto it = std::find(stack.begin(), stack.end(), w);
        for (; it != stack.end(); ++it) path.push_back(label(*it));
        path.push_back(label(w));
        std::string text;
        for (size_t i = 0; i < path.size(); ++i) text += (i ? " -> " : "") + path[i];
        throw CombinationalCycle("combinational cycle: " + text, path);
      }
      if (color[w] == 0) dfs(w);
    }
    stack.pop_back();
    color[v] = 2;
  };
  std::vector<std::pair<int, int>> nodes;
  for (const auto& [v, _] : succ) nodes.push_back(v);
  for (auto v : nodes)
    if (color[v] == 0) dfs(v);
}

}  // namespace gosyn
