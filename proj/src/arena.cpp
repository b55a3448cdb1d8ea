#include <algorithm>
#include <map>
#include <sstream>

#include "gosyn/arena.hpp"

namespace gosyn {

Arena::Arena(std::vector<Move> moves, std::vector<std::vector<int>> enablers)
    : moves_(std::move(moves)), enablers_(std::move(enablers)) {}

bool Arena::enables(int m, int n) const {
  const auto& e = enablers_[n];
  return std::find(e.begin(), e.end(), m) != e.end();
}

std::vector<int> Arena::initials() const {
  std::vector<int> out;
  for (const auto& m : moves_)
    if (enablers_[m.id].empty()) out.push_back(m.id);
  return out;
}

int Arena::find(std::string_view name) const {
  for (const auto& m : moves_)
    if (m.name == name) return m.id;
  return -1;
}

int Arena::find(int face, std::string_view path) const {
  for (const auto& m : moves_)
    if (m.face == face && m.path == path) return m.id;
  return -1;
}

bool Arena::well_formed(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (const auto& n : moves_) {
    const auto& en = enablers_[n.id];
    if (en.empty() && !(n.pol == Polarity::O && n.kind == MoveKind::Q))
      return fail("initial move " + n.name + " is not an Opponent question");
    for (int m : en) {
      if (moves_[m].pol == n.pol)
        return fail(moves_[m].name + " enables " + n.name +
                    " with equal polarity");
      if (moves_[m].kind != MoveKind::Q)
        return fail("answer " + moves_[m].name + " enables " + n.name);
    }
  }
  for (size_t i = 0; i < moves_.size(); ++i)
    for (size_t j = i + 1; j < moves_.size(); ++j)
      if (moves_[i].name == moves_[j].name)
        return fail("duplicate move name " + moves_[i].name);
  return true;
}

Arena Arena::renamed(const std::function<std::string(const Move&)>& name) const {
  Arena out = *this;
  for (auto& m : out.moves_) m.name = name(m);
  return out;
}

bool Arena::same_shape(const Arena& o) const {
  if (size() != o.size()) return false;
  for (size_t i = 0; i < size(); ++i) {
    const auto &a = moves_[i], &b = o.moves_[i];
    if (a.pol != b.pol || a.kind != b.kind || a.face != b.face ||
        a.path != b.path)
      return false;
    if (enablers_[i] != o.enablers_[i]) return false;
  }
  return true;
}

namespace {

struct RawMove {
  int face;
  std::string path;
  std::string base;
  Polarity pol;
  MoveKind kind;
};

struct Built {
  std::vector<RawMove> moves;
  std::vector<std::pair<int, int>> enabling;  // (enabler, enabled) indices
  std::vector<int> initials;
};

Polarity flip(Polarity p, bool flipped) {
  if (!flipped) return p;
  return p == Polarity::O ? Polarity::P : Polarity::O;
}

void base_moves(TypeKind k, std::vector<std::pair<std::string, std::pair<Polarity, MoveKind>>>& out,
                std::vector<std::pair<int, int>>& en) {
  using P = Polarity;
  using K = MoveKind;
  switch (k) {
    case TypeKind::Com:
      out = {{"q", {P::O, K::Q}}, {"a", {P::P, K::A}}};
      en = {{0, 1}};
      break;
    case TypeKind::Exp:
      out = {{"q", {P::O, K::Q}}, {"t", {P::P, K::A}}, {"f", {P::P, K::A}}};
      en = {{0, 1}, {0, 2}};
      break;
    case TypeKind::Cell:
      out = {{"q", {P::O, K::Q}},  {"t", {P::P, K::A}},  {"f", {P::P, K::A}},
             {"wt", {P::O, K::Q}}, {"wf", {P::O, K::Q}}, {"a", {P::P, K::A}}};
      en = {{0, 1}, {0, 2}, {3, 5}, {4, 5}};
      break;
    default:
      break;
  }
}

Built build(const Type& t, const std::string& path, bool flipped, int face) {
  Built b;
  if (t.is_base()) {
    std::vector<std::pair<std::string, std::pair<Polarity, MoveKind>>> ms;
    std::vector<std::pair<int, int>> en;
    base_moves(t.kind, ms, en);
    for (const auto& [name, label] : ms)
      b.moves.push_back(RawMove{face, path + "." + name, name,
                                flip(label.first, flipped), label.second});
    b.enabling = en;
    b.initials = {0};
    if (t.kind == TypeKind::Cell) b.initials = {0, 3, 4};
    return b;
  }
  bool arrow = t.kind == TypeKind::Arrow;
  Built l = build(*t.left, path + (arrow ? "L" : "1"), flipped != arrow, face);
  Built r = build(*t.right, path + (arrow ? "R" : "2"), flipped, face);
  int off = static_cast<int>(l.moves.size());
  b.moves = l.moves;
  b.moves.insert(b.moves.end(), r.moves.begin(), r.moves.end());
  b.enabling = l.enabling;
  for (auto [x, y] : r.enabling) b.enabling.emplace_back(x + off, y + off);
  if (arrow) {
    for (int ri : r.initials)
      for (int li : l.initials) b.enabling.emplace_back(ri + off, li);
    for (int ri : r.initials) b.initials.push_back(ri + off);
  } else {
    b.initials = l.initials;
    for (int ri : r.initials) b.initials.push_back(ri + off);
  }
  return b;
}

// Base-type occurrences in naming order: final result of an arrow spine,
// then its arguments left to right; products left to right.
void naming_order(const Type& t, const std::string& path,
                  std::vector<std::string>& out) {
  if (t.is_base()) {
    out.push_back(path);
    return;
  }
  if (t.kind == TypeKind::Product) {
    naming_order(*t.left, path + "1", out);
    naming_order(*t.right, path + "2", out);
    return;
  }
  std::vector<std::pair<const Type*, std::string>> args;
  const Type* cur = &t;
  std::string p = path;
  while (cur->kind == TypeKind::Arrow) {
    args.emplace_back(cur->left.get(), p + "L");
    p += "R";
    cur = cur->right.get();
  }
  naming_order(*cur, p, out);
  for (const auto& [a, ap] : args) naming_order(*a, ap, out);
}

int base_rank(const std::string& base) {
  static const std::map<std::string, int> rank = {
      {"q", 0}, {"t", 1}, {"f", 2}, {"wt", 3}, {"wf", 4}, {"a", 5}};
  return rank.at(base);
}

Arena assemble(const std::vector<std::pair<const Type*, bool>>& faces,
               int first_index) {
  std::vector<RawMove> raw;
  std::vector<std::pair<int, int>> enabling;
  std::vector<std::vector<int>> face_initials;
  std::vector<std::string> order;  // "face:occurrence"
  for (size_t f = 0; f < faces.size(); ++f) {
    Built b = build(*faces[f].first, "", faces[f].second, static_cast<int>(f));
    int off = static_cast<int>(raw.size());
    raw.insert(raw.end(), b.moves.begin(), b.moves.end());
    for (auto [x, y] : b.enabling) enabling.emplace_back(x + off, y + off);
    std::vector<int> init;
    for (int i : b.initials) init.push_back(i + off);
    face_initials.push_back(init);
    std::vector<std::string> occ;
    naming_order(*faces[f].first, "", occ);
    for (const auto& o : occ) order.push_back(std::to_string(f) + ":" + o);
  }
  // Result-face initials enable the initials of every context face.
  for (size_t f = 1; f < faces.size(); ++f)
    for (int r : face_initials[0])
      for (int c : face_initials[f]) enabling.emplace_back(r, c);

  auto occ_rank = [&](const RawMove& m) {
    std::string key =
        std::to_string(m.face) + ":" + m.path.substr(0, m.path.find('.'));
    return static_cast<int>(std::find(order.begin(), order.end(), key) -
                            order.begin());
  };
  std::vector<int> idx(raw.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    int ra = occ_rank(raw[a]), rb = occ_rank(raw[b]);
    if (ra != rb) return ra < rb;
    return base_rank(raw[a].base) < base_rank(raw[b].base);
  });
  std::vector<int> new_id(raw.size());
  for (size_t i = 0; i < idx.size(); ++i) new_id[idx[i]] = static_cast<int>(i);

  std::vector<Move> moves(raw.size());
  for (size_t i = 0; i < idx.size(); ++i) {
    const RawMove& r = raw[idx[i]];
    Move& m = moves[i];
    m.id = static_cast<int>(i);
    m.pol = r.pol;
    m.kind = r.kind;
    m.face = r.face;
    m.path = r.path;
    m.base = r.base;
    m.name = r.base + std::to_string(first_index + occ_rank(r));
  }
  std::vector<std::vector<int>> enablers(raw.size());
  for (auto [x, y] : enabling) {
    auto& e = enablers[new_id[y]];
    if (std::find(e.begin(), e.end(), new_id[x]) == e.end())
      e.push_back(new_id[x]);
  }
  for (auto& e : enablers) std::sort(e.begin(), e.end());
  return Arena(std::move(moves), std::move(enablers));
}

}  // namespace

Arena arena_of_type(const Type& t, int first_index) {
  return assemble({{&t, false}}, first_index);
}

Arena interface_arena(const Interface& iface, int first_index) {
  std::vector<std::pair<const Type*, bool>> faces{{iface.result.get(), false}};
  for (const auto& [name, type] : iface.context) faces.emplace_back(type.get(), true);
  return assemble(faces, first_index);
}

Arena primed_names(const Arena& a,
                   const std::function<std::string(const Move&)>& group) {
  std::map<std::string, std::vector<std::string>> occurrences;
  for (const auto& m : a.moves()) {
    auto& occ = occurrences[group(m)];
    std::string key = std::to_string(m.face) + ":" + m.occurrence();
    if (std::find(occ.begin(), occ.end(), key) == occ.end()) occ.push_back(key);
  }
  return a.renamed([&](const Move& m) {
    const auto& occ = occurrences[group(m)];
    std::string key = std::to_string(m.face) + ":" + m.occurrence();
    size_t k = std::find(occ.begin(), occ.end(), key) - occ.begin();
    std::string name;
    for (char c : m.base) name += static_cast<char>(std::toupper(c));
    name += std::string(occ.size() - 1 - k, '\'');
    return name + group(m);
  });
}

std::vector<int> initial_moves(const Arena& a) { return a.initials(); }

std::string arena_table(const Arena& a) {
  std::ostringstream os;
  os << "move  label  enabled-by\n";
  for (const auto& m : a.moves()) {
    os << m.name << std::string(m.name.size() < 6 ? 6 - m.name.size() : 1, ' ')
       << (m.pol == Polarity::O ? 'O' : 'P') << (m.kind == MoveKind::Q ? 'Q' : 'A')
       << "     ";
    const auto& en = a.enablers(m.id);
    if (en.empty()) os << "(initial)";
    for (size_t i = 0; i < en.size(); ++i)
      os << (i ? " " : "") << a.move(en[i]).name;
    os << "\n";
  }
  return os.str();
}

std::string arena_dot(const Arena& a, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (const auto& m : a.moves()) {
    os << "  m" << m.id << " [label=\"" << m.name << "\\n"
       << (m.pol == Polarity::O ? 'O' : 'P') << (m.kind == MoveKind::Q ? 'Q' : 'A')
       << "\", shape=" << (m.kind == MoveKind::Q ? "box" : "ellipse") << "];\n";
  }
  for (const auto& m : a.moves())
    for (int e : a.enablers(m.id)) os << "  m" << e << " -> m" << m.id << ";\n";
  os << "}\n";
  return os.str();
}

std::string port_name(const std::string& move_name) {
  std::string out;
  for (char c : move_name)
    out += c == '\'' ? 'P' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace gosyn
