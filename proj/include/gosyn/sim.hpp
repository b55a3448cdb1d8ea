#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gosyn/backend.hpp"
#include "gosyn/design.hpp"
#include "gosyn/syncmin.hpp"

namespace gosyn {

/// A design whose instances are synchronous machines.
struct SyncDesign {
  Interface iface;
  Arena arena;
  std::vector<std::string> names;
  std::vector<std::string> kinds;
  std::vector<SyncMachine> parts;
  std::vector<std::pair<Endpoint, Endpoint>> wires;
  std::vector<Endpoint> exports;  // by external move id

  int find(const std::string& name) const;
};

enum class MinMode { None, Plain, Protocol };

SyncMachine synthesize(const StrategyAutomaton& s, MinMode mode);
SyncDesign synthesize(const Design& d, MinMode mode);
/// One-instance design around a flat machine.
SyncDesign single_instance(const SyncMachine& m, const std::string& name = "top");

/// Hand-written wiring (no typechecking). Lines:
///   interface <type>               external result type (closed)
///   instance <name> <constant>     e.g. instance s skip
///   instance <name> am <type>      activation manager at <type>
///   instance <name> id <type>      copycat
///   wire <inst>.<port> <inst>.<port>
///   export <move> <inst>.<port>
/// Ports are move names (Q'1) or Verilog names (QP1); '#' starts a comment.
SyncDesign parse_wiring(const std::string& text, MinMode mode = MinMode::Protocol);

enum class SimStatus { Completed, Deadlock, ProtocolViolation, Race };
const char* to_string(SimStatus s);

struct SimOptions {
  size_t max_cycles = 1000;
  bool unsafe = false;  // force stimulus rounds without consulting the monitor
  std::vector<std::string> probes;  // instances whose port traces are kept
};

struct SimReport {
  SimStatus status = SimStatus::Completed;
  size_t cycle = 0;   // cycle of the verdict (1-based)
  size_t cycles = 0;  // cycles simulated
  std::optional<Violation> violation;
  std::string where;  // boundary of a violation or race
  std::vector<int> race_ports;
  std::string detail;
  RoundTrace trace;  // external rounds, one per cycle
  std::map<std::string, RoundTrace> probes;
  bool at_initial = false;  // every instance back in its initial state
};

SimReport simulate(const SyncDesign& d, const RoundTrace& stimulus,
                   const SimOptions& options = {});
SimReport simulate(const Netlist& n, const Arena& a, const RoundTrace& stimulus,
                   const SimOptions& options = {});

/// Waveform of a round trace; each port pulses high for one cycle.
std::string to_vcd(const std::vector<std::string>& ports, const RoundTrace& t,
                   const std::string& scope = "top");
std::string report_text(const SimReport& r, const Arena& a);
std::string report_json(const SimReport& r, const Arena& a);

}  // namespace gosyn

namespace gosyn {

/// Hierarchical Verilog: one module per instance plus a top module wiring
/// them. Throws CombinationalCycle if instance logic and wires form a loop.
std::string emit_design_verilog(const SyncDesign& d, const std::string& top);

}  // namespace gosyn
