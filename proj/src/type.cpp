#include "gosyn/type.hpp"

namespace gosyn {

namespace {
TypePtr make(TypeKind k, TypePtr l = nullptr, TypePtr r = nullptr) {
  return std::make_shared<const Type>(Type{k, std::move(l), std::move(r)});
}
}  // namespace

TypePtr Type::com() {
  static const TypePtr t = make(TypeKind::Com);
  return t;
}
TypePtr Type::exp() {
  static const TypePtr t = make(TypeKind::Exp);
  return t;
}
TypePtr Type::cell() {
  static const TypePtr t = make(TypeKind::Cell);
  return t;
}
TypePtr Type::product(TypePtr l, TypePtr r) {
  return make(TypeKind::Product, std::move(l), std::move(r));
}
TypePtr Type::arrow(TypePtr arg, TypePtr res) {
  return make(TypeKind::Arrow, std::move(arg), std::move(res));
}

bool type_equal(const Type& a, const Type& b) {
  if (a.kind != b.kind) return false;
  if (a.is_base()) return true;
  return type_equal(*a.left, *b.left) && type_equal(*a.right, *b.right);
}

std::string to_string(const Type& t) {
  switch (t.kind) {
    case TypeKind::Com:
      return "com";
    case TypeKind::Exp:
      return "exp";
    case TypeKind::Cell:
      return "cell";
    case TypeKind::Product: {
      // Right-nested products print flat; a left operand that is itself a
      // product or arrow needs parentheses.
      auto l = to_string(*t.left);
      if (!t.left->is_base()) l = "(" + l + ")";
      auto r = to_string(*t.right);
      if (t.right->kind == TypeKind::Arrow) r = "(" + r + ")";
      return l + " * " + r;
    }
    case TypeKind::Arrow: {
      auto l = to_string(*t.left);
      if (t.left->kind == TypeKind::Arrow) l = "(" + l + ")";
      return l + " -> " + to_string(*t.right);
    }
  }
  return {};
}

}  // namespace gosyn
