#include <sstream>

#include "json.hpp"

#include "gosyn/strategy.hpp"

namespace gosyn {

using nlohmann::json;

std::string to_dot(const StrategyAutomaton& s, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
  out << "  start [shape=point];\n  start -> s0;\n";
  for (int i = 0; i < s.num_states(); ++i) out << "  s" << i << ";\n";
  for (const auto& t : s.transitions()) {
    const Move& m = s.arena().move(t.move);
    out << "  s" << t.from << " -> s" << t.to << " [label=\"" << m.name
        << (m.input() ? "?" : "!") << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_json(const StrategyAutomaton& s) {
  json j;
  j["result"] = to_string(*s.iface().result);
  j["context"] = json::array();
  for (const auto& [x, t] : s.iface().context)
    j["context"].push_back({{"name", x}, {"type", to_string(*t)}});
  j["states"] = s.num_states();
  j["initial"] = s.initial();
  j["moves"] = json::array();
  for (const auto& m : s.arena().moves())
    j["moves"].push_back({{"id", m.id},
                          {"name", m.name},
                          {"polarity", m.input() ? "O" : "P"},
                          {"kind", m.question() ? "Q" : "A"},
                          {"face", m.face},
                          {"path", m.path}});
  j["transitions"] = json::array();
  for (const auto& t : s.transitions()) {
    const Move& m = s.arena().move(t.move);
    j["transitions"].push_back(
        {{"from", t.from}, {"move", m.name}, {"dir", m.input() ? "in" : "out"}, {"to", t.to}});
  }
  return j.dump(2) + "\n";
}

StrategyAutomaton strategy_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("strategy json: ") + e.what());
  }
  try {
    Interface iface;
    iface.result = parse_type(j.at("result").get<std::string>());
    for (const auto& e : j.at("context"))
      iface.context.emplace_back(e.at("name").get<std::string>(),
                                 parse_type(e.at("type").get<std::string>()));
    Arena base = interface_arena(iface);
    const auto& moves = j.at("moves");
    if (moves.size() != base.size())
      throw std::invalid_argument("strategy json: move count does not match type");
    std::vector<std::string> names(base.size());
    for (const auto& m : moves) {
      int id = m.at("id").get<int>();
      if (id < 0 || id >= static_cast<int>(names.size()) ||
          base.move(id).path != m.at("path").get<std::string>())
        throw std::invalid_argument("strategy json: move " + std::to_string(id) +
                                    " does not match type");
      names[id] = m.at("name").get<std::string>();
    }
    Arena a = base.renamed([&](const Move& m) { return names[m.id]; });
    std::vector<Transition> ts;
    for (const auto& t : j.at("transitions")) {
      int m = a.find(t.at("move").get<std::string>());
      if (m < 0)
        throw std::invalid_argument("strategy json: unknown move " +
                                    t.at("move").get<std::string>());
      ts.push_back({t.at("from").get<int>(), m, t.at("to").get<int>()});
    }
    return StrategyAutomaton(iface, a, j.at("states").get<int>(), ts);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("strategy json: ") + e.what());
  }
}

}  // namespace gosyn
