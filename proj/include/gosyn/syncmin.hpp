#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gosyn/strategy.hpp"

namespace gosyn {

/// One clock cycle: the input moves consumed and the outputs emitted.
/// Both sets are sorted move ids.
struct SyncTransition {
  int from;
  std::vector<int> inputs;
  std::vector<int> outputs;
  int to;
};

/// Synchronous Mealy machine over the ports of an interface arena.
/// A round missing from the table with no inputs is an idle self-loop;
/// any other missing round is undefined (the inputs are not accepted).
class SyncMachine {
 public:
  SyncMachine() = default;
  SyncMachine(Interface iface, Arena arena, int num_states,
              std::vector<SyncTransition> transitions);

  const Interface& iface() const { return iface_; }
  const Arena& arena() const { return arena_; }
  int num_states() const { return num_states_; }
  int initial() const { return 0; }
  bool combinational() const { return num_states_ == 1; }
  const std::vector<SyncTransition>& transitions() const { return transitions_; }
  /// Transition from `state` on exactly `inputs`, or nullptr. The idle
  /// round is synthesized when not listed.
  const SyncTransition* find(int state, const std::vector<int>& inputs) const;
  /// Transitions leaving `state`.
  std::vector<const SyncTransition*> from(int state) const;

 private:
  Interface iface_;
  Arena arena_;
  int num_states_ = 0;
  std::vector<SyncTransition> transitions_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
  std::vector<SyncTransition> idle_;
};

/// Cycle reaction to the offered inputs: inputs are taken in move id order
/// while the machine accepts the growing set; the rest are refused.
const SyncTransition& react(const SyncMachine& m, int state,
                            const std::vector<int>& offered);

class NonConfluent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Asynchronous strategy to synchronous machine. Outputs fire as soon as
/// they are enabled; inputs enabled by an output may be consumed in the same
/// round. A base occurrence carries at most one question and one answer
/// per round, and a question cannot follow a move of its own occurrence;
/// anything further waits for the next cycle. Input sets whose outcome
/// depends on arrival order are left undefined. Throws NonConfluent when
/// output interleavings disagree.
SyncMachine round_abstract(const StrategyAutomaton& s);

/// Mealy minimization by partition refinement; undefined rounds count.
SyncMachine minimize(const SyncMachine& m);

/// Minimization with protocol-illegal rounds as don't-cares. Exact search
/// for up to 64 product states, greedy merging beyond. Never larger than
/// minimize(m).
SyncMachine minimize_under_protocol(const SyncMachine& m, const ProtocolAutomaton& p);

struct EquivalenceVerdict {
  bool equivalent = true;
  size_t round = 0;  // 1-based round of the first difference
  RoundTrace witness;  // inputs leading to the difference
  std::string detail;
};

/// Drives both machines with every protocol-legal input sequence of up to
/// max_len rounds (<= 24). m1 is the reference: rounds that are illegal for
/// m1's outputs are don't-cares, rounds m1 refuses must be refused by m2.
EquivalenceVerdict equivalent_under_protocol(const SyncMachine& m1,
                                             const SyncMachine& m2,
                                             const ProtocolAutomaton& p,
                                             size_t max_len);

std::string sync_table(const SyncMachine& m);
std::string sync_dot(const SyncMachine& m, const std::string& name = "machine");
std::string sync_json(const SyncMachine& m);

}  // namespace gosyn
