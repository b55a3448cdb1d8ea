#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <map>
#include <set>

#include "gosyn/design.hpp"

namespace gosyn {

namespace {

int face_of(const Interface& iface, const std::string& ident) {
  for (size_t i = 0; i < iface.context.size(); ++i)
    if (iface.context[i].first == ident) return static_cast<int>(i) + 1;
  return -1;
}

/// Rebuilds `s` over a new interface; `target` maps each old move id to a new
/// move id, or -1 to drop every transition on that move.
StrategyAutomaton remap(const StrategyAutomaton& s, const Interface& iface,
                        const std::function<int(const Move&)>& target) {
  Arena a = interface_arena(iface);
  std::vector<Transition> ts;
  for (const auto& t : s.transitions()) {
    int m = target(s.arena().move(t.move));
    if (m >= 0) ts.push_back({t.from, m, t.to});
  }
  return minimize_strategy(StrategyAutomaton(iface, a, s.num_states(), ts));
}

Context merged_context(const Context& a, const Context& b) {
  Context out = a;
  for (const auto& e : b) {
    bool seen = std::any_of(out.begin(), out.end(),
                            [&](const auto& x) { return x.first == e.first; });
    if (!seen) out.push_back(e);
  }
  return out;
}

StrategyAutomaton rename_context(const StrategyAutomaton& s, const std::string& from,
                                 const std::string& to) {
  Interface iface = s.iface();
  for (auto& e : iface.context)
    if (e.first == from) e.first = to;
  return StrategyAutomaton(iface, interface_arena(iface), s.num_states(),
                           s.transitions());
}

/// Exports of `d` for its own arena, looked up from a component's exports by
/// (face, path) through `source`.
void bind_exports(Design& d,
                  const std::function<Endpoint(const Move&)>& source) {
  d.exports.assign(d.arena.size(), Endpoint{});
  for (const auto& m : d.arena.moves()) d.exports[m.id] = source(m);
}

Design single(const std::string& kind, const StrategyAutomaton& s) {
  Design d;
  d.iface = s.iface();
  d.arena = s.arena();
  d.add(kind, s);
  d.arena = interface_arena(d.iface);
  bind_exports(d, [&](const Move& m) {
    return Endpoint{0, s.arena().find(m.face, m.path)};
  });
  return d;
}

/// Appends the instances and wires of `src`; returns the part offset.
int absorb(Design& dst, const Design& src) {
  int off = static_cast<int>(dst.parts.size());
  for (size_t i = 0; i < src.parts.size(); ++i) dst.add(src.kinds[i], src.parts[i]);
  for (auto [a, b] : src.wires) {
    a.part += off;
    b.part += off;
    dst.wires.emplace_back(a, b);
  }
  return off;
}

Endpoint shifted(Endpoint e, int off) {
  if (e.part >= 0) e.part += off;
  return e;
}

Endpoint export_at(const Design& d, int face, const std::string& path) {
  int m = d.arena.find(face, path);
  return m < 0 ? Endpoint{} : d.exports[m];
}

}  // namespace

StrategyAutomaton abstract(const StrategyAutomaton& body, const std::string& x,
                           const TypePtr& binder) {
  Interface iface;
  iface.result = Type::arrow(binder, body.iface().result);
  for (const auto& e : body.iface().context)
    if (e.first != x) iface.context.push_back(e);
  Arena a = interface_arena(iface);
  int xf = face_of(body.iface(), x);
  return remap(body, iface, [&](const Move& m) {
    if (m.face == 0) return a.find(0, "R" + m.path);
    if (m.face == xf) return a.find(0, "L" + m.path);
    return a.find(face_of(iface, body.iface().context[m.face - 1].first), m.path);
  });
}

StrategyAutomaton apply(const StrategyAutomaton& fun, const StrategyAutomaton& arg,
                        const Context* order) {
  if (fun.iface().result->kind != TypeKind::Arrow ||
      !type_equal(fun.iface().result->left, arg.iface().result))
    throw std::invalid_argument("apply: argument type does not match");
  Design d;
  d.iface.result = fun.iface().result->right;
  d.iface.context = order ? *order
                          : merged_context(fun.iface().context, arg.iface().context);
  d.arena = interface_arena(d.iface);
  d.add("fun", fun);
  d.add("arg", arg);
  for (const auto& m : fun.arena().moves())
    if (m.face == 0 && m.path[0] == 'L')
      d.wires.push_back({Endpoint{0, m.id},
                         Endpoint{1, arg.arena().find(0, m.path.substr(1))}});
  bind_exports(d, [&](const Move& m) {
    if (m.face == 0) return Endpoint{0, fun.arena().find(0, "R" + m.path)};
    const std::string& id = d.iface.context[m.face - 1].first;
    int ff = face_of(fun.iface(), id);
    if (ff > 0) return Endpoint{0, fun.arena().find(ff, m.path)};
    return Endpoint{1, arg.arena().find(face_of(arg.iface(), id), m.path)};
  });
  return link(d);
}

StrategyAutomaton compose(const StrategyAutomaton& s, const StrategyAutomaton& t) {
  return apply(t, s);
}

StrategyAutomaton compose_faces(const StrategyAutomaton& s,
                                const StrategyAutomaton& t) {
  if (s.iface().context.size() != 1 || t.iface().context.size() != 1 ||
      !type_equal(s.iface().result, t.iface().context[0].second))
    throw std::invalid_argument("compose_faces: faces do not match");
  Design d;
  d.iface.result = t.iface().result;
  d.iface.context = s.iface().context;
  d.arena = interface_arena(d.iface);
  d.add("left", s);
  d.add("right", t);
  for (const auto& m : s.arena().moves())
    if (m.face == 0)
      d.wires.push_back({Endpoint{0, m.id}, Endpoint{1, t.arena().find(1, m.path)}});
  bind_exports(d, [&](const Move& m) {
    if (m.face == 0) return Endpoint{1, t.arena().find(0, m.path)};
    return Endpoint{0, s.arena().find(1, m.path)};
  });
  return link(d);
}

StrategyAutomaton pair(const StrategyAutomaton& left, const StrategyAutomaton& right,
                       const Context* order) {
  Interface iface;
  iface.result = Type::product(left.iface().result, right.iface().result);
  iface.context = order ? *order
                        : merged_context(left.iface().context, right.iface().context);
  Arena a = interface_arena(iface);
  const StrategyAutomaton* comp[2] = {&left, &right};
  Arena result_arena[2] = {arena_of_type(left.iface().result),
                           arena_of_type(right.iface().result)};
  ProtocolAutomaton proto[2] = {ProtocolAutomaton(result_arena[0]),
                                ProtocolAutomaton(result_arena[1])};

  struct Port {
    int c = -1;     // component
    int local = -1;
    int proto_move = -1;  // move in the component's result arena, if any
  };
  std::vector<Port> ports(a.size());
  for (const auto& m : a.moves()) {
    Port p;
    if (m.face == 0) {
      p.c = m.path[0] == '1' ? 0 : 1;
      std::string rest = m.path.substr(1);
      p.local = comp[p.c]->arena().find(0, rest);
      p.proto_move = result_arena[p.c].find(0, rest);
    } else {
      const std::string& id = iface.context[m.face - 1].first;
      for (int c = 0; c < 2; ++c) {
        int f = face_of(comp[c]->iface(), id);
        if (f > 0) {
          if (p.c >= 0)
            throw std::invalid_argument("pair: shared identifier '" + id + "'");
          p.c = c;
          p.local = comp[c]->arena().find(f, m.path);
        }
      }
    }
    ports[m.id] = p;
  }

  using Key = std::array<int, 4>;  // left state, right state, owner, protocol
  std::map<Key, int> ids;
  std::vector<Key> keys;
  std::vector<Transition> ts;
  auto id_of = [&](const Key& k) {
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(keys.size());
    ids.emplace(k, id);
    keys.push_back(k);
    return id;
  };
  id_of(Key{0, 0, -1, 0});
  for (size_t i = 0; i < keys.size(); ++i) {
    Key k = keys[i];
    for (const auto& m : a.moves()) {
      const Port& p = ports[m.id];
      if (p.c < 0 || p.local < 0) continue;
      if (k[2] >= 0 && k[2] != p.c) continue;
      if (k[2] < 0 && !(m.face == 0 && a.initial(m.id))) continue;
      int to = comp[p.c]->next(k[p.c], p.local);
      if (to < 0) continue;
      Key n = k;
      n[p.c] = to;
      if (m.face == 0) {
        int ps = proto[p.c].step(k[2] < 0 ? 0 : k[3], p.proto_move);
        if (ps < 0) continue;
        n[2] = proto[p.c].complete(ps) ? -1 : p.c;
        n[3] = proto[p.c].complete(ps) ? 0 : ps;
      }
      ts.push_back({static_cast<int>(i), m.id, id_of(n)});
    }
  }
  return minimize_strategy(
      StrategyAutomaton(iface, a, static_cast<int>(keys.size()), ts));
}

StrategyAutomaton project(const StrategyAutomaton& s, int component) {
  if (s.iface().result->kind != TypeKind::Product)
    throw std::invalid_argument("project: not a product");
  Interface iface = s.iface();
  iface.result = component == 1 ? s.iface().result->left : s.iface().result->right;
  Arena a = interface_arena(iface);
  char tag = component == 1 ? '1' : '2';
  return remap(s, iface, [&](const Move& m) {
    if (m.face != 0) return a.find(m.face, m.path);
    if (m.path[0] != tag) return -1;
    return a.find(0, m.path.substr(1));
  });
}

namespace {

std::string use_name(const std::string& x, int side) {
  return x + "#" + std::to_string(side);
}

}  // namespace

StrategyAutomaton denote(const TermPtr& t) {
  if (!t->typed()) throw std::invalid_argument("denote: term is not typechecked");
  switch (t->kind) {
    case TermKind::Ident:
      return copycat(t->type, t->name);
    case TermKind::Const:
      return denote_constant(t->name);
    case TermKind::Lambda:
      return abstract(denote(t->lhs), t->name, t->binder);
    case TermKind::Apply:
      return apply(denote(t->lhs), denote(t->rhs), &t->context);
    case TermKind::Fst:
      return project(denote(t->lhs), 1);
    case TermKind::Snd:
      return project(denote(t->lhs), 2);
    case TermKind::Pair: {
      StrategyAutomaton l = denote(t->lhs), r = denote(t->rhs);
      Context shared;
      for (const auto& e : t->lhs->context)
        if (face_of(r.iface(), e.first) > 0) shared.push_back(e);
      for (const auto& [x, type] : shared) {
        l = rename_context(l, x, use_name(x, 1));
        r = rename_context(r, x, use_name(x, 2));
      }
      StrategyAutomaton p = pair(l, r);
      for (const auto& [x, type] : shared) {
        // Contraction through an activation manager.
        StrategyAutomaton am = diagonal(type, x);
        Design d;
        d.iface.result = t->type;
        d.iface.context = p.iface().context;
        for (auto& e : d.iface.context)
          if (e.first == use_name(x, 1)) e.first = x;
        d.iface.context.erase(
            std::remove_if(d.iface.context.begin(), d.iface.context.end(),
                           [&](const auto& e) { return e.first == use_name(x, 2); }),
            d.iface.context.end());
        d.arena = interface_arena(d.iface);
        d.add("body", p);
        d.add("am", am);
        int f1 = face_of(p.iface(), use_name(x, 1));
        int f2 = face_of(p.iface(), use_name(x, 2));
        for (const auto& m : p.arena().moves()) {
          if (m.face == f1)
            d.wires.push_back({Endpoint{0, m.id},
                               Endpoint{1, am.arena().find(0, "2" + m.path)}});
          if (m.face == f2)
            d.wires.push_back({Endpoint{0, m.id},
                               Endpoint{1, am.arena().find(0, "1" + m.path)}});
        }
        bind_exports(d, [&](const Move& m) {
          if (m.face == 0) return Endpoint{0, p.arena().find(0, m.path)};
          const std::string& id = d.iface.context[m.face - 1].first;
          if (id == x) return Endpoint{1, am.arena().find(1, m.path)};
          return Endpoint{0, p.arena().find(face_of(p.iface(), id), m.path)};
        });
        p = link(d);
      }
      // Restore the context order of the typed term.
      Interface iface{t->type, t->context};
      Arena a = interface_arena(iface);
      return remap(p, iface, [&](const Move& m) {
        if (m.face == 0) return a.find(0, m.path);
        return a.find(face_of(iface, p.iface().context[m.face - 1].first), m.path);
      });
    }
  }
  throw std::logic_error("denote: unreachable");
}

Design denote_design(const TermPtr& t) {
  if (!t->typed())
    throw std::invalid_argument("denote_design: term is not typechecked");
  switch (t->kind) {
    case TermKind::Ident:
      return single("id", copycat(t->type, t->name));
    case TermKind::Const: {
      std::string kind = t->name == "1" ? "true" : t->name == "0" ? "false" : t->name;
      return single(kind, denote_constant(t->name));
    }
    case TermKind::Lambda: {
      Design body = denote_design(t->lhs);
      Design d = body;
      d.iface = Interface{t->type, t->context};
      d.arena = interface_arena(d.iface);
      int xf = face_of(body.iface, t->name);
      bind_exports(d, [&](const Move& m) -> Endpoint {
        if (m.face == 0) {
          if (m.path[0] == 'R') return export_at(body, 0, m.path.substr(1));
          if (xf < 0) return Endpoint{};
          return export_at(body, xf, m.path.substr(1));
        }
        return export_at(body, face_of(body.iface, t->context[m.face - 1].first),
                         m.path);
      });
      return d;
    }
    case TermKind::Apply: {
      Design f = denote_design(t->lhs), a = denote_design(t->rhs);
      Design d;
      d.iface = Interface{t->type, t->context};
      d.arena = interface_arena(d.iface);
      int fo = absorb(d, f), ao = absorb(d, a);
      for (const auto& m : f.arena.moves()) {
        if (m.face != 0 || m.path[0] != 'L') continue;
        Endpoint fe = shifted(f.exports[m.id], fo);
        Endpoint ae = shifted(export_at(a, 0, m.path.substr(1)), ao);
        if (fe.part >= 0 && ae.part >= 0) d.wires.emplace_back(fe, ae);
      }
      bind_exports(d, [&](const Move& m) {
        if (m.face == 0) return shifted(export_at(f, 0, "R" + m.path), fo);
        const std::string& id = t->context[m.face - 1].first;
        int ff = face_of(f.iface, id);
        if (ff > 0) return shifted(export_at(f, ff, m.path), fo);
        return shifted(export_at(a, face_of(a.iface, id), m.path), ao);
      });
      return d;
    }
    case TermKind::Fst:
    case TermKind::Snd: {
      Design p = denote_design(t->lhs);
      Design d = p;
      d.iface = Interface{t->type, t->context};
      d.arena = interface_arena(d.iface);
      char tag = t->kind == TermKind::Fst ? '1' : '2';
      bind_exports(d, [&](const Move& m) {
        if (m.face == 0) return export_at(p, 0, tag + m.path);
        return export_at(p, face_of(p.iface, t->context[m.face - 1].first), m.path);
      });
      return d;
    }
    case TermKind::Pair: {
      Design l = denote_design(t->lhs), r = denote_design(t->rhs);
      Design d;
      d.iface = Interface{t->type, t->context};
      d.arena = interface_arena(d.iface);
      int lo = absorb(d, l), ro = absorb(d, r);
      std::map<std::string, int> managers;
      for (const auto& [x, type] : t->context) {
        int lf = face_of(l.iface, x), rf = face_of(r.iface, x);
        if (lf < 0 || rf < 0) continue;
        StrategyAutomaton am = diagonal(type, x);
        int ai = d.add("am", am);
        managers[x] = ai;
        for (const auto& m : l.arena.moves())
          if (m.face == lf && l.exports[m.id].part >= 0)
            d.wires.emplace_back(shifted(l.exports[m.id], lo),
                                 Endpoint{ai, am.arena().find(0, "2" + m.path)});
        for (const auto& m : r.arena.moves())
          if (m.face == rf && r.exports[m.id].part >= 0)
            d.wires.emplace_back(shifted(r.exports[m.id], ro),
                                 Endpoint{ai, am.arena().find(0, "1" + m.path)});
      }
      bind_exports(d, [&](const Move& m) {
        if (m.face == 0) {
          if (m.path[0] == '1') return shifted(export_at(l, 0, m.path.substr(1)), lo);
          return shifted(export_at(r, 0, m.path.substr(1)), ro);
        }
        const std::string& id = t->context[m.face - 1].first;
        auto am = managers.find(id);
        if (am != managers.end())
          return Endpoint{am->second, d.parts[am->second].arena().find(1, m.path)};
        int lf = face_of(l.iface, id);
        if (lf > 0) return shifted(export_at(l, lf, m.path), lo);
        return shifted(export_at(r, face_of(r.iface, id), m.path), ro);
      });
      return d;
    }
  }
  throw std::logic_error("denote_design: unreachable");
}

}  // namespace gosyn
