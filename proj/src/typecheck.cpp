#include <algorithm>

#include "gosyn/term.hpp"

namespace gosyn {

namespace {

class Checker {
 public:
  explicit Checker(const Context& ctx) : env_(ctx) {}

  TermPtr check(const TermPtr& t) {
    Term out = *t;
    switch (t->kind) {
      case TermKind::Ident: {
        int i = lookup(t->name);
        if (i < 0)
          throw TypeError(TypeErrorKind::Unbound,
                          "unbound identifier '" + t->name + "'");
        out.type = env_[i].second;
        out.context = {env_[i]};
        break;
      }
      case TermKind::Const: {
        out.type = constant_type(t->name);
        if (!out.type)
          throw TypeError(TypeErrorKind::Unbound,
                          "unknown constant '" + t->name + "'");
        break;
      }
      case TermKind::Lambda: {
        env_.emplace_back(t->name, t->binder);
        auto body = check(t->lhs);
        env_.pop_back();
        out.lhs = body;
        out.type = Type::arrow(t->binder, body->type);
        for (const auto& e : body->context)
          if (e.first != t->name) out.context.push_back(e);
        break;
      }
      case TermKind::Apply: {
        auto f = check(t->lhs);
        auto a = check(t->rhs);
        if (f->type->kind != TypeKind::Arrow)
          throw TypeError(TypeErrorKind::Mismatch,
                          "applying a term of non-function type " +
                              to_string(f->type));
        if (!type_equal(f->type->left, a->type))
          throw TypeError(TypeErrorKind::Mismatch,
                          "argument of type " + to_string(a->type) +
                              " where " + to_string(f->type->left) +
                              " is expected");
        for (const auto& e : f->context)
          for (const auto& g : a->context)
            if (e.first == g.first)
              throw TypeError(TypeErrorKind::Affinity,
                              "identifier '" + e.first +
                                  "' is used by both a function and its "
                                  "argument");
        out.lhs = f;
        out.rhs = a;
        out.type = f->type->right;
        out.context = merge(f->context, a->context);
        break;
      }
      case TermKind::Pair: {
        auto l = check(t->lhs);
        auto r = check(t->rhs);
        out.lhs = l;
        out.rhs = r;
        out.type = Type::product(l->type, r->type);
        out.context = merge(l->context, r->context);
        break;
      }
      case TermKind::Fst:
      case TermKind::Snd: {
        auto p = check(t->lhs);
        if (p->type->kind != TypeKind::Product)
          throw TypeError(TypeErrorKind::Mismatch,
                          "projection from non-product type " +
                              to_string(p->type));
        out.lhs = p;
        out.type = t->kind == TermKind::Fst ? p->type->left : p->type->right;
        out.context = p->context;
        break;
      }
    }
    return std::make_shared<const Term>(std::move(out));
  }

 private:
  Context env_;

  int lookup(const std::string& name) const {
    for (int i = static_cast<int>(env_.size()) - 1; i >= 0; --i)
      if (env_[i].first == name) return i;
    return -1;
  }

  Context merge(const Context& a, const Context& b) const {
    Context out = a;
    for (const auto& e : b) {
      bool seen = std::any_of(out.begin(), out.end(),
                              [&](const auto& x) { return x.first == e.first; });
      if (!seen) out.push_back(e);
    }
    std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
      return lookup(x.first) < lookup(y.first);
    });
    return out;
  }
};

}  // namespace

TermPtr typecheck(const TermPtr& t, const Context& ctx) {
  return Checker(ctx).check(t);
}

}  // namespace gosyn
