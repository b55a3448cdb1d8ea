#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gosyn/arena.hpp"
#include "gosyn/plays.hpp"
#include "gosyn/term.hpp"

namespace gosyn {

struct Transition {
  int from;
  int move;
  int to;
};

/// Deterministic finite automaton over the moves of an interface arena.
/// O-moves are inputs, P-moves outputs; every state accepts, so the
/// language (the set of plays of the strategy) is prefix-closed.
class StrategyAutomaton {
 public:
  StrategyAutomaton() = default;
  StrategyAutomaton(Interface iface, Arena arena, int num_states,
                    std::vector<Transition> transitions);

  const Interface& iface() const { return iface_; }
  const Arena& arena() const { return arena_; }
  int num_states() const { return num_states_; }
  int initial() const { return 0; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  /// (move, target) pairs leaving `state`, ordered by move id.
  const std::vector<std::pair<int, int>>& out(int state) const {
    return adjacency_[state];
  }
  /// Target of `move` from `state`, or -1.
  int next(int state, int move) const;

  StrategyAutomaton with_arena(Arena a) const;

  /// Words of length <= max_len spelled by paths from the initial state.
  Language language(size_t max_len) const;

 private:
  Interface iface_;
  Arena arena_;
  int num_states_ = 0;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

class DivergenceDetected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First port index used when naming the arena of a closed constant.
int constant_first_index(const Type& t);

StrategyAutomaton denote_constant(const std::string& name);
/// Identifier x:θ ⊢ x:θ.
StrategyAutomaton copycat(const TypePtr& t, const std::string& ident = "x");
/// Closed identity λx.x : θ → θ.
StrategyAutomaton identity(const TypePtr& t);
/// Activation manager: diagonal x:θ ⊢ ⟨x, x⟩ : θ × θ.
StrategyAutomaton diagonal(const TypePtr& t, const std::string& ident = "x");

/// Language minimization and canonical state numbering.
StrategyAutomaton minimize_strategy(const StrategyAutomaton& s);

/// λx.M: the binder's context face becomes the argument of the result.
StrategyAutomaton abstract(const StrategyAutomaton& body, const std::string& x,
                           const TypePtr& binder);
/// F M, F: θ'→θ and M: θ' with disjoint contexts. `order` fixes the
/// context order of the result (default: F's then M's).
StrategyAutomaton apply(const StrategyAutomaton& fun, const StrategyAutomaton& arg,
                        const Context* order = nullptr);
/// compose(s, t): s yields B, t consumes B (result type B → C); this is t s.
StrategyAutomaton compose(const StrategyAutomaton& s, const StrategyAutomaton& t);
/// Categorical composition over context faces: s: a:A ⊢ B, t: b:B ⊢ C.
StrategyAutomaton compose_faces(const StrategyAutomaton& s,
                                const StrategyAutomaton& t);
/// ⟨M, N⟩ over disjoint contexts; one component session at a time.
StrategyAutomaton pair(const StrategyAutomaton& left, const StrategyAutomaton& right,
                       const Context* order = nullptr);
/// fst / snd.
StrategyAutomaton project(const StrategyAutomaton& s, int component);

/// Structural interpretation of a typechecked term.
StrategyAutomaton denote(const TermPtr& typed);

/// Independent oracle for compose: enumerates interaction sequences of the
/// two automata directly, hides the shared face, returns the external
/// language up to max_len (<= 16).
Language compose_oracle(const StrategyAutomaton& s, const StrategyAutomaton& t,
                        size_t max_len);

/// Paths of `s` that leave the protocol language of its arena (empty when
/// every path is a legal play), searched up to max_len.
std::vector<Word> illegal_paths(const StrategyAutomaton& s, size_t max_len,
                                size_t limit = 1);
/// True when every path is legal: checked on the product with the protocol
/// automaton, no transition may leave the protocol language.
bool protocol_compliant(const StrategyAutomaton& s, std::string* why = nullptr);
/// Reset: every complete play ends in the initial state.
bool has_reset_property(const StrategyAutomaton& s, std::string* why = nullptr);

std::string to_dot(const StrategyAutomaton& s, const std::string& name = "strategy");
std::string to_json(const StrategyAutomaton& s);
StrategyAutomaton strategy_from_json(const std::string& text);

}  // namespace gosyn
