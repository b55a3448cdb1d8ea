#include <cctype>
#include <set>

#include "gosyn/term.hpp"

namespace gosyn {

namespace {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const std::set<std::string> kKeywords = {"fn",   "new",  "in", "if",
                                         "then", "else", "while", "do",
                                         "fst",  "snd"};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  SourcePos pos;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++pos.column;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos start = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      std::string num = src.substr(i, j - i);
      if (num != "0" && num != "1")
        throw ParseError(start, {"boolean literal 0 or 1"}, "'" + num + "'");
      out.push_back({Tok::Number, num, start});
      advance(j - i);
      continue;
    }
    static const char* two[] = {"->", "||", ":="};
    bool matched = false;
    for (const char* s : two) {
      if (src.compare(i, 2, s) == 0) {
        out.push_back({Tok::Symbol, s, start});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string("()<>,;!:*").find(c) != std::string::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), start});
      advance(1);
      continue;
    }
    throw ParseError(start, {"token"}, "'" + std::string(1, c) + "'");
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  TermPtr program() {
    auto t = term();
    expect_end();
    return t;
  }

  TypePtr type_only() {
    auto t = type();
    expect_end();
    return t;
  }

 private:
  std::vector<Token> toks_;
  size_t at_ = 0;

  const Token& peek(size_t k = 0) const {
    return toks_[std::min(at_ + k, toks_.size() - 1)];
  }
  bool is(const std::string& s, size_t k = 0) const {
    const auto& t = peek(k);
    return (t.kind == Tok::Symbol || t.kind == Tok::Ident) && t.text == s;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const auto& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.pos, std::move(expected), found);
  }
  void expect(const std::string& s) {
    if (!is(s)) fail({"'" + s + "'"});
    ++at_;
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail({"end of input"});
  }
  std::string identifier() {
    const auto& t = peek();
    if (t.kind != Tok::Ident || kKeywords.count(t.text) || is_constant(t.text))
      fail({"identifier"});
    ++at_;
    return t.text;
  }

  TypePtr type() {
    auto l = product_type();
    if (is("->")) {
      ++at_;
      return Type::arrow(l, type());
    }
    return l;
  }
  TypePtr product_type() {
    auto l = base_type();
    if (is("*")) {
      ++at_;
      return Type::product(l, product_type());
    }
    return l;
  }
  TypePtr base_type() {
    if (is("com")) return ++at_, Type::com();
    if (is("exp")) return ++at_, Type::exp();
    if (is("cell")) return ++at_, Type::cell();
    if (is("(")) {
      ++at_;
      auto t = type();
      expect(")");
      return t;
    }
    fail({"com", "exp", "cell", "'('"});
  }

  TermPtr term() {
    if (is("fn")) {
      ++at_;
      expect("(");
      auto x = identifier();
      expect(":");
      auto t = type();
      expect(")");
      expect("->");
      return Term::lambda(x, t, term());
    }
    if (is("new")) {
      ++at_;
      auto x = identifier();
      expect("in");
      auto body = term();
      return Term::apply(Term::constant("newvar"),
                         Term::lambda(x, Type::cell(), body));
    }
    return seq_expr();
  }

  TermPtr seq_expr() {
    auto l = par_expr();
    if (is(";")) {
      ++at_;
      auto r = term();
      return Term::apply(Term::constant("seq"), Term::pair(l, r));
    }
    return l;
  }

  TermPtr par_expr() {
    auto l = asg_expr();
    if (is("||")) {
      ++at_;
      auto r = par_expr();
      return Term::apply(Term::apply(Term::constant("par"), l), r);
    }
    return l;
  }

  TermPtr asg_expr() {
    auto l = app();
    if (is(":=")) {
      ++at_;
      auto r = app();
      return Term::apply(Term::constant("asg"), Term::pair(l, r));
    }
    return l;
  }

  bool starts_unary() const {
    const auto& t = peek();
    if (t.kind == Tok::Number) return true;
    if (t.kind == Tok::Ident)
      return !kKeywords.count(t.text) || t.text == "fst" || t.text == "snd" ||
             t.text == "if" || t.text == "while";
    return t.kind == Tok::Symbol && (t.text == "(" || t.text == "<" || t.text == "!");
  }

  TermPtr app() {
    if (!starts_unary()) fail({"term"});
    auto f = unary();
    while (starts_unary()) f = Term::apply(f, unary());
    return f;
  }

  TermPtr unary() {
    if (is("!")) {
      ++at_;
      return Term::apply(Term::constant("der"), unary());
    }
    if (is("fst")) {
      ++at_;
      return Term::fst(unary());
    }
    if (is("snd")) {
      ++at_;
      return Term::snd(unary());
    }
    if (is("if") || is("while")) return control();
    return atom();
  }

  // `if e then c else c` / `while e do c`, falling back to the bare constant
  // (as in `if<e, c, c>`) when the sugar does not match.
  TermPtr control() {
    bool is_if = is("if");
    size_t save = at_;
    ++at_;
    if (!is("<")) {
      try {
        auto cond = par_expr();
        if (is_if) {
          expect("then");
          auto a = par_expr();
          expect("else");
          auto b = par_expr();
          return Term::apply(Term::constant("if"),
                             Term::pair(cond, Term::pair(a, b)));
        }
        expect("do");
        auto body = par_expr();
        return Term::apply(Term::constant("while"), Term::pair(cond, body));
      } catch (const ParseError&) {
        at_ = save + 1;
        if (!starts_unary()) throw;
      }
    }
    return Term::constant(is_if ? "if" : "while");
  }

  TermPtr atom() {
    const auto& t = peek();
    if (t.kind == Tok::Number) {
      ++at_;
      return Term::constant(t.text);
    }
    if (t.kind == Tok::Ident && !kKeywords.count(t.text)) {
      ++at_;
      if (is_constant(t.text)) return Term::constant(t.text);
      return Term::ident(t.text);
    }
    if (is("(")) {
      ++at_;
      auto inner = term();
      expect(")");
      return inner;
    }
    if (is("<")) {
      ++at_;
      std::vector<TermPtr> items{term()};
      while (is(",")) {
        ++at_;
        items.push_back(term());
      }
      if (items.size() < 2) fail({"','"});
      expect(">");
      TermPtr acc = items.back();
      for (size_t i = items.size() - 1; i-- > 0;) acc = Term::pair(items[i], acc);
      return acc;
    }
    fail({"identifier", "constant", "'('", "'<'"});
  }
};

}  // namespace

TermPtr parse(const std::string& source) { return Parser(lex(source)).program(); }

TypePtr parse_type(const std::string& text) {
  return Parser(lex(text)).type_only();
}

}  // namespace gosyn
