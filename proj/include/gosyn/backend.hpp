#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gosyn/logic.hpp"
#include "gosyn/syncmin.hpp"

namespace gosyn {

struct NetPort {
  std::string name;  // Verilog identifier
  int move;
  bool input;
};

/// Synchronous circuit for one machine. Logic variables are the input
/// ports (0..inputs-1, in `inputs` order) followed by the one-hot state
/// bits. Outputs depend on inputs and state only.
struct Netlist {
  std::string name;
  std::vector<NetPort> ports;     // by move id
  std::vector<int> inputs;        // port indices
  std::vector<int> outputs;       // port indices
  int registers = 0;              // one-hot bits; 0 for a combinational machine
  std::vector<Sop> output_logic;  // parallel to outputs
  std::vector<Sop> next_state;    // parallel to registers

  int state_var(int bit) const { return static_cast<int>(inputs.size()) + bit; }
};

class CombinationalCycle : public std::runtime_error {
 public:
  CombinationalCycle(const std::string& what, std::vector<std::string> path)
      : std::runtime_error(what), path(std::move(path)) {}
  std::vector<std::string> path;
};

/// Behaviour is specified where the machine accepts exactly the offered
/// inputs and the round is protocol-legal; everything else is a don't-care.
/// Each output reads only the inputs it depends on in specified behaviour.
Netlist to_netlist(const SyncMachine& m, const std::string& name = "top");

/// Register state after reset.
std::vector<bool> netlist_reset(const Netlist& n);
/// One cycle: returns the output port values (parallel to n.outputs) and
/// updates `state`.
std::vector<bool> netlist_step(const Netlist& n, std::vector<bool>& state,
                               const std::vector<bool>& inputs);

std::string emit_verilog(const Netlist& n, const std::string& name = "");
std::string emit_dot(const Netlist& n);
std::string emit_json(const Netlist& n);
Netlist netlist_from_json(const std::string& text);

/// Instance-level combinational dependency check. `wires` join
/// (instance, output port) to (instance, input port), port = move id.
struct NetWire {
  int from_instance, from_port, to_instance, to_port;
};
void check_combinational_cycles(const std::vector<const Netlist*>& instances,
                                const std::vector<std::string>& names,
                                const std::vector<NetWire>& wires);

}  // namespace gosyn
