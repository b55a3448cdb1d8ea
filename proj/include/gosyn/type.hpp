#pragma once

#include <memory>
#include <string>

namespace gosyn {

enum class TypeKind { Com, Exp, Cell, Product, Arrow };

struct Type;
using TypePtr = std::shared_ptr<const Type>;

/// SCI type: com | exp | cell | T * T | T -> T.
struct Type {
  TypeKind kind;
  TypePtr left;   // product left / arrow argument
  TypePtr right;  // product right / arrow result

  static TypePtr com();
  static TypePtr exp();
  static TypePtr cell();
  static TypePtr product(TypePtr l, TypePtr r);
  static TypePtr arrow(TypePtr arg, TypePtr res);

  bool is_base() const {
    return kind == TypeKind::Com || kind == TypeKind::Exp ||
           kind == TypeKind::Cell;
  }
};

bool type_equal(const Type& a, const Type& b);
inline bool type_equal(const TypePtr& a, const TypePtr& b) {
  return type_equal(*a, *b);
}

/// Prints with product binding tighter than arrow; both right-associative.
std::string to_string(const Type& t);
inline std::string to_string(const TypePtr& t) { return to_string(*t); }

/// Parses a type expression such as "com -> com * exp". Throws ParseError.
TypePtr parse_type(const std::string& text);

}  // namespace gosyn
