#include <map>
#include <sstream>

#include "gosyn/term.hpp"

namespace gosyn {

namespace {

TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }

bool atomic(const Term& t) {
  return t.kind == TermKind::Ident || t.kind == TermKind::Const;
}

std::string join_expected(const std::vector<std::string>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += xs[i];
  }
  return out;
}

}  // namespace

TermPtr Term::ident(std::string n) {
  return make(Term{TermKind::Ident, std::move(n), nullptr, nullptr, nullptr,
                   nullptr, {}});
}
TermPtr Term::constant(std::string n) {
  return make(Term{TermKind::Const, std::move(n), nullptr, nullptr, nullptr,
                   nullptr, {}});
}
TermPtr Term::lambda(std::string x, TypePtr t, TermPtr body) {
  return make(Term{TermKind::Lambda, std::move(x), std::move(t),
                   std::move(body), nullptr, nullptr, {}});
}
TermPtr Term::apply(TermPtr f, TermPtr a) {
  return make(Term{TermKind::Apply, "", nullptr, std::move(f), std::move(a),
                   nullptr, {}});
}
TermPtr Term::pair(TermPtr l, TermPtr r) {
  return make(Term{TermKind::Pair, "", nullptr, std::move(l), std::move(r),
                   nullptr, {}});
}
TermPtr Term::fst(TermPtr t) {
  return make(
      Term{TermKind::Fst, "", nullptr, std::move(t), nullptr, nullptr, {}});
}
TermPtr Term::snd(TermPtr t) {
  return make(
      Term{TermKind::Snd, "", nullptr, std::move(t), nullptr, nullptr, {}});
}

bool term_equal(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  if ((a.binder == nullptr) != (b.binder == nullptr)) return false;
  if (a.binder && !type_equal(*a.binder, *b.binder)) return false;
  if ((a.lhs == nullptr) != (b.lhs == nullptr)) return false;
  if ((a.rhs == nullptr) != (b.rhs == nullptr)) return false;
  if (a.lhs && !term_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !term_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

namespace {

void tuple_items(const Term& t, std::vector<const Term*>& out) {
  if (t.kind == TermKind::Pair) {
    out.push_back(t.lhs.get());
    tuple_items(*t.rhs, out);
  } else {
    out.push_back(&t);
  }
}

std::string functional(const Term& t);

std::string functional_tuple(const Term& t) {
  std::vector<const Term*> items;
  tuple_items(t, items);
  std::string out = "⟨";
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += functional(*items[i]);
  }
  return out + "⟩";
}

std::string functional(const Term& t) {
  switch (t.kind) {
    case TermKind::Ident:
    case TermKind::Const:
      return t.name;
    case TermKind::Lambda:
      return "λ" + t.name + ". " + functional(*t.lhs);
    case TermKind::Pair:
      return functional_tuple(t);
    case TermKind::Fst:
    case TermKind::Snd: {
      std::string op = t.kind == TermKind::Fst ? "fst " : "snd ";
      if (atomic(*t.lhs)) return op + functional(*t.lhs);
      return op + "(" + functional(*t.lhs) + ")";
    }
    case TermKind::Apply: {
      std::string f = functional(*t.lhs);
      if (!atomic(*t.lhs) && t.lhs->kind != TermKind::Apply) f = "(" + f + ")";
      const Term& a = *t.rhs;
      if (a.kind == TermKind::Pair) return f + functional_tuple(a);
      // Arguments that are abstractions print in call form, as in newvar(λx. M).
      if (a.kind == TermKind::Lambda) return f + "(" + functional(a) + ")";
      if (atomic(a)) return f + " " + functional(a);
      return f + " (" + functional(a) + ")";
    }
  }
  return {};
}

std::string source(const Term& t) {
  switch (t.kind) {
    case TermKind::Ident:
    case TermKind::Const:
      return t.name;
    case TermKind::Lambda:
      return "(fn (" + t.name + " : " + to_string(*t.binder) + ") -> " +
             source(*t.lhs) + ")";
    case TermKind::Apply:
      return "(" + source(*t.lhs) + " " + source(*t.rhs) + ")";
    case TermKind::Pair:
      return "<" + source(*t.lhs) + ", " + source(*t.rhs) + ">";
    case TermKind::Fst:
      return "(fst " + source(*t.lhs) + ")";
    case TermKind::Snd:
      return "(snd " + source(*t.lhs) + ")";
  }
  return {};
}

}  // namespace

std::string to_functional(const Term& t) { return functional(t); }
std::string to_source(const Term& t) { return source(t); }

ParseError::ParseError(SourcePos p, std::vector<std::string> exp,
                       const std::string& f)
    : std::runtime_error(std::to_string(p.line) + ":" +
                         std::to_string(p.column) + ": expected " +
                         join_expected(exp) + ", found " + f),
      pos(p),
      expected(std::move(exp)),
      found(f) {}

const char* to_string(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::Mismatch:
      return "mismatch";
    case TypeErrorKind::Unbound:
      return "unbound";
    case TypeErrorKind::Affinity:
      return "affinity";
  }
  return "?";
}

namespace {

const std::map<std::string, TypePtr>& constant_table() {
  static const std::map<std::string, TypePtr> table = [] {
    auto com = Type::com(), exp = Type::exp(), cell = Type::cell();
    auto arrow = Type::arrow;
    auto prod = Type::product;
    std::map<std::string, TypePtr> m;
    m["1"] = exp;
    m["0"] = exp;
    m["skip"] = com;
    m["asg"] = arrow(prod(cell, exp), com);
    m["der"] = arrow(cell, exp);
    m["seq"] = arrow(prod(com, com), com);
    m["par"] = arrow(com, arrow(com, com));
    for (const char* op : {"and", "or", "xor", "eq"})
      m[op] = arrow(prod(exp, exp), exp);
    m["not"] = arrow(exp, exp);
    m["if"] = arrow(prod(exp, prod(com, com)), com);
    m["while"] = arrow(prod(exp, com), com);
    m["newvar"] = arrow(arrow(cell, com), com);
    return m;
  }();
  return table;
}

}  // namespace

TypePtr constant_type(const std::string& name) {
  const auto& t = constant_table();
  auto it = t.find(name);
  return it == t.end() ? nullptr : it->second;
}

bool is_constant(const std::string& name) {
  return constant_type(name) != nullptr;
}

bool is_binary_op(const std::string& name) {
  return name == "and" || name == "or" || name == "xor" || name == "eq";
}

}  // namespace gosyn
