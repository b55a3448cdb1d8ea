#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gosyn/type.hpp"

namespace gosyn {

enum class TermKind { Ident, Const, Lambda, Apply, Pair, Fst, Snd };

/// Ordered identifier -> type assignment.
using Context = std::vector<std::pair<std::string, TypePtr>>;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  std::string name;   // identifier, constant name, or lambda binder
  TypePtr binder;     // lambda binder annotation
  TermPtr lhs;        // lambda body, apply function, pair left, projection arg
  TermPtr rhs;        // apply argument, pair right

  // Filled in by typecheck.
  TypePtr type;
  Context context;    // identifiers the node actually uses, outermost first

  bool typed() const { return type != nullptr; }

  static TermPtr ident(std::string n);
  static TermPtr constant(std::string n);
  static TermPtr lambda(std::string x, TypePtr t, TermPtr body);
  static TermPtr apply(TermPtr f, TermPtr a);
  static TermPtr pair(TermPtr l, TermPtr r);
  static TermPtr fst(TermPtr t);
  static TermPtr snd(TermPtr t);
};

/// Structural equality, ignoring annotations.
bool term_equal(const Term& a, const Term& b);

/// Functional form: newvar(λx. seq⟨asg⟨x, 1⟩, skip⟩).
std::string to_functional(const Term& t);
/// Surface syntax accepted by parse(); parse(to_source(t)) == t.
std::string to_source(const Term& t);

struct SourcePos {
  int line = 1;
  int column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, std::vector<std::string> expected,
             const std::string& found);
  SourcePos pos;
  std::vector<std::string> expected;
  std::string found;
};

enum class TypeErrorKind { Mismatch, Unbound, Affinity };

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind(kind) {}
  TypeErrorKind kind;
};

const char* to_string(TypeErrorKind k);

TermPtr parse(const std::string& source);

/// Type of a constant, or nullptr when the name is not a constant.
TypePtr constant_type(const std::string& name);
bool is_constant(const std::string& name);
/// Binary logical operators usable as op⟨k⟩.
bool is_binary_op(const std::string& name);

/// Affine typing. Returns a fully annotated copy of `t`.
TermPtr typecheck(const TermPtr& t, const Context& ctx = {});

}  // namespace gosyn
