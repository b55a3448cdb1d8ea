#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gosyn/term.hpp"
#include "gosyn/type.hpp"

namespace gosyn {

enum class Polarity { O, P };
enum class MoveKind { Q, A };

/// One observable action of an interface: a 1-bit port in hardware.
struct Move {
  int id = 0;
  std::string name;
  Polarity pol = Polarity::O;
  MoveKind kind = MoveKind::Q;
  int face = 0;      // 0: result; i > 0: context entry i - 1
  std::string path;  // structural position within the face, e.g. "RL.q"
  std::string base;  // q, a, t, f, wt, wf

  bool input() const { return pol == Polarity::O; }
  bool question() const { return kind == MoveKind::Q; }
  std::string occurrence() const { return path.substr(0, path.find('.')); }
};

/// Moves, labelling and enabling relation. Immutable once built.
class Arena {
 public:
  Arena() = default;
  Arena(std::vector<Move> moves, std::vector<std::vector<int>> enablers);

  size_t size() const { return moves_.size(); }
  const std::vector<Move>& moves() const { return moves_; }
  const Move& move(int id) const { return moves_[id]; }
  const std::vector<int>& enablers(int id) const { return enablers_[id]; }
  bool enables(int m, int n) const;
  bool initial(int id) const { return enablers_[id].empty(); }
  std::vector<int> initials() const;

  /// Move id by name, or -1.
  int find(std::string_view name) const;
  /// Move id by (face, path), or -1.
  int find(int face, std::string_view path) const;

  /// Checks the three labelling conditions on the enabling relation.
  bool well_formed(std::string* why = nullptr) const;

  /// Replaces move names; structure is unchanged.
  Arena renamed(const std::function<std::string(const Move&)>& name) const;

  bool same_shape(const Arena& other) const;

 private:
  std::vector<Move> moves_;
  std::vector<std::vector<int>> enablers_;
};

/// Typing interface of a term Γ ⊢ M : T; its arena is ⟦Γ⟧ → ⟦T⟧.
struct Interface {
  TypePtr result;
  Context context;
};

/// Arena of a type. Base-type occurrences are numbered starting at
/// `first_index`, visiting the final result of an arrow spine first and then
/// its arguments left to right: com -> com gives q1/a1 (result), q2/a2.
Arena arena_of_type(const Type& t, int first_index = 1);
inline Arena arena_of_type(const TypePtr& t, int first_index = 1) {
  return arena_of_type(*t, first_index);
}

/// Arena of an interface: face 0 is the result, faces 1.. the context
/// entries (polarity flipped). Numbering continues across faces.
Arena interface_arena(const Interface& iface, int first_index = 1);

/// Upper-case primed naming used for activation-manager boundaries: within a
/// group of n base occurrences, occurrence k gets n-1-k primes, so the outer
/// pair of com -> com in group "2" is Q'2/A'2 and the argument pair Q2/A2.
Arena primed_names(const Arena& a,
                   const std::function<std::string(const Move&)>& group);

std::vector<int> initial_moves(const Arena& a);

/// Human-readable table of moves, labels and enabling.
std::string arena_table(const Arena& a);
std::string arena_dot(const Arena& a, const std::string& name = "arena");

/// Identifier-safe port name for HDL: upper case, primes become 'P'.
std::string port_name(const std::string& move_name);

}  // namespace gosyn
