#pragma once

#include <string>
#include <vector>

#include "gosyn/strategy.hpp"

namespace gosyn {

struct Endpoint {
  int part = -1;  // -1: not connected
  int move = -1;
};

/// A network of strategy instances. Wires join an output port of one
/// instance to an input port of another; exports bind every external move
/// to an instance port.
struct Design {
  Interface iface;
  Arena arena;
  std::vector<std::string> names;
  std::vector<std::string> kinds;
  std::vector<StrategyAutomaton> parts;
  std::vector<std::pair<Endpoint, Endpoint>> wires;
  std::vector<Endpoint> exports;  // indexed by external move id

  int add(std::string kind, StrategyAutomaton s);
  /// Index of the instance called `name`, or -1.
  int find(const std::string& name) const;
};

/// Flattens a design into one automaton: synchronized product on wires,
/// internal moves hidden, determinized and minimized.
/// Throws DivergenceDetected on a reachable internal cycle with no exit.
StrategyAutomaton link(const Design& d);

/// Hardware-structured interpretation: one instance per constant and
/// identifier occurrence, an activation manager per shared identifier.
/// The left use of a shared identifier drives the manager's second
/// projection and the right use its first.
Design denote_design(const TermPtr& typed);

}  // namespace gosyn
