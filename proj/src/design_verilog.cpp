#include <map>
#include <sstream>

#include "gosyn/sim.hpp"

namespace gosyn {

std::string emit_design_verilog(const SyncDesign& d, const std::string& top) {
  std::vector<Netlist> nets;
  for (size_t i = 0; i < d.parts.size(); ++i)
    nets.push_back(to_netlist(d.parts[i], top + "_" + d.names[i]));
  std::vector<const Netlist*> ptrs;
  for (const auto& n : nets) ptrs.push_back(&n);
  std::vector<NetWire> wires;
  std::map<std::pair<int, int>, std::string> driver;  // instance input -> net
  for (const auto& [a, b] : d.wires) {
    bool a_out = !d.parts[a.part].arena().move(a.move).input();
    Endpoint from = a_out ? a : b, to = a_out ? b : a;
    wires.push_back({from.part, from.move, to.part, to.move});
    driver[{to.part, to.move}] =
        d.names[from.part] + "_" + port_name(d.parts[from.part].arena().move(from.move).name);
  }
  check_combinational_cycles(ptrs, d.names, wires);

  std::ostringstream out;
  bool clocked = false;
  for (const auto& n : nets) {
    out << emit_verilog(n) << "\n";
    clocked |= n.registers > 0;
  }
  std::map<std::pair<int, int>, std::string> ext_in;
  std::map<int, std::pair<int, int>> ext_out;
  for (const auto& mv : d.arena.moves()) {
    Endpoint e = d.exports[mv.id];
    if (e.part < 0) continue;
    if (mv.input())
      ext_in[{e.part, e.move}] = port_name(mv.name);
    else
      ext_out[mv.id] = {e.part, e.move};
  }
  std::vector<std::string> decls;
  if (clocked) {
    decls.push_back("input clk");
    decls.push_back("input rst");
  }
  for (const auto& mv : d.arena.moves())
    decls.push_back((mv.input() ? "input " : "output ") + port_name(mv.name));
  out << "module " << top << " (";
  for (size_t i = 0; i < decls.size(); ++i) out << (i ? ",\n" : "\n") << "  " << decls[i];
  out << "\n);\n";
  for (size_t i = 0; i < nets.size(); ++i)
    for (int o : nets[i].outputs)
      out << "  wire " << d.names[i] << "_" << nets[i].ports[o].name << ";\n";
  for (size_t i = 0; i < nets.size(); ++i) {
    const Netlist& n = nets[i];
    out << "  " << n.name << " " << d.names[i] << " (";
    std::vector<std::string> conns;
    if (n.registers) {
      conns.push_back(".clk(clk)");
      conns.push_back(".rst(rst)");
    }
    for (const auto& p : n.ports) {
      std::string net;
      if (p.input) {
        auto w = driver.find({static_cast<int>(i), p.move});
        auto x = ext_in.find({static_cast<int>(i), p.move});
        net = w != driver.end() ? w->second : x != ext_in.end() ? x->second : "1'b0";
      } else {
        net = d.names[i] + "_" + p.name;
      }
      conns.push_back("." + p.name + "(" + net + ")");
    }
    for (size_t c = 0; c < conns.size(); ++c) out << (c ? ",\n    " : "\n    ") << conns[c];
    out << "\n  );\n";
  }
  for (const auto& mv : d.arena.moves()) {
    if (mv.input()) continue;
    auto it = ext_out.find(mv.id);
    std::string src = "1'b0";
    if (it != ext_out.end())
      src = d.names[it->second.first] + "_" +
            port_name(d.parts[it->second.first].arena().move(it->second.second).name);
    out << "  assign " << port_name(mv.name) << " = " << src << ";\n";
  }
  out << "endmodule\n";
  return out.str();
}

}  // namespace gosyn
