#include "doctest.h"
#include "support.hpp"

using namespace gosyn;
using namespace gosyn::testing;

namespace {

const std::vector<std::string> kConstants = {
    "0",  "1",  "skip", "asg", "der", "seq", "par",   "and",
    "or", "xor", "eq",  "not", "if",  "while", "newvar"};

}  // namespace

TEST_CASE("constants follow the protocol and reset") {
  for (const auto& c : kConstants) {
    StrategyAutomaton s = denote_constant(c);
    std::string why;
    CHECK_MESSAGE(protocol_compliant(s, &why), c << ": " << why);
    CHECK_MESSAGE(has_reset_property(s, &why), c << ": " << why);
    CHECK(illegal_paths(s, 10).empty());
  }
}

TEST_CASE("skip and true") {
  Language skip = denote_constant("skip").language(4);
  Arena a = denote_constant("skip").arena();
  CHECK(skip.count(parse_moves(a, "q1 a1 q1 a1")));
  Arena b = denote_constant("1").arena();
  CHECK(denote_constant("1").language(2).count(parse_moves(b, "q1 t1")));
  CHECK(!denote_constant("1").language(2).count(parse_moves(b, "q1 f1")));
}

TEST_CASE("seq runs its arguments in order") {
  StrategyAutomaton s = denote_constant("seq");
  const Arena& a = s.arena();
  CHECK(s.language(6).count(parse_moves(a, "q0 q1 a1 q2 a2 a0")));
  CHECK(!s.language(6).count(parse_moves(a, "q0 q2")));
}

TEST_CASE("copycat is the protocol of its type") {
  for (const char* t : {"com", "exp", "com -> com"}) {
    StrategyAutomaton c = copycat(parse_type(t));
    std::string why;
    CHECK_MESSAGE(protocol_compliant(c, &why), t << ": " << why);
    CHECK(has_reset_property(c));
  }
  StrategyAutomaton id = identity(Type::com());
  const Arena& a = id.arena();
  CHECK(id.language(4).count(parse_moves(a, "q1 q2 a2 a1")));
  CHECK(!id.language(4).count(parse_moves(a, "a2")));
}

TEST_CASE("activation manager serves one client at a time") {
  StrategyAutomaton am = diagonal(Type::com());
  const Arena& a = am.arena();
  CHECK(am.language(8).count(parse_moves(a, "Q1 Q0 A0 A1 Q2 Q0 A0 A2")) == 1);
  CHECK(am.language(8).count(parse_moves(a, "Q1 Q0 Q2")) == 0);
  CHECK(protocol_compliant(am));
  CHECK(has_reset_property(am));
  // Every word keeps at most one client open.
  for (const auto& w : am.language(8)) {
    int open = 0;
    for (int m : w) {
      const Move& mv = a.move(m);
      if (mv.face != 0) continue;
      open += mv.question() ? 1 : -1;
      CHECK(open <= 1);
    }
  }
}

TEST_CASE("random terms are compliant and reset") {
  TermGen gen(2);
  const TypePtr types[] = {Type::com(), Type::exp(), parse_type("com -> com")};
  for (int i = 0; i < 60; ++i) {
    TermPtr t = gen.closed(types[i % 3], 1 + i % 3);
    StrategyAutomaton s = denote(t);
    std::string why;
    CHECK_MESSAGE(protocol_compliant(s, &why), to_source(*t) << ": " << why);
    CHECK_MESSAGE(has_reset_property(s, &why), to_source(*t) << ": " << why);
  }
}

TEST_CASE("linking the structured design gives the denotation") {
  TermGen gen(3);
  for (int i = 0; i < 40; ++i) {
    TermPtr t = gen.closed(i % 2 ? Type::com() : parse_type("com -> com"), 1 + i % 3);
    CHECK_MESSAGE(link(denote_design(t)).language(10) == denote(t).language(10),
                  to_source(*t));
  }
  TermPtr shared = typed(read_sample("shared_call.sci"));
  CHECK(link(denote_design(shared)).language(12) == denote(shared).language(12));
}

TEST_CASE("composition agrees with the interaction oracle") {
  TermGen gen(4);
  for (int i = 0; i < 40; ++i) {
    TermPtr m = gen.closed_apply(2);
    StrategyAutomaton fun = denote(typecheck(m->lhs));
    StrategyAutomaton arg = denote(typecheck(m->rhs));
    CHECK_MESSAGE(compose(arg, fun).language(10) == compose_oracle(arg, fun, 10),
                  to_source(*m));
  }
  CHECK_THROWS_AS(compose_oracle(denote_constant("skip"), identity(Type::com()), 17),
                  LimitExceeded);
}

TEST_CASE("three uses of one identifier") {
  auto t = typed("fn (x : com) -> x; x; x");
  StrategyAutomaton s = denote(t);
  CHECK(protocol_compliant(s));
  const Arena& a = s.arena();
  CHECK(s.language(8).count(parse_moves(a, "q1 q2 a2 q2 a2 q2 a2 a1")));
  CHECK(!s.language(10).count(parse_moves(a, "q1 q2 a2 q2 a2 q2 a2 q2")));
}

TEST_CASE("a loop that never ends is reported") {
  CHECK_THROWS_AS(denote(typed("while 1 do skip")), DivergenceDetected);
}

TEST_CASE("minimization keeps the language") {
  TermGen gen(5);
  for (int i = 0; i < 20; ++i) {
    StrategyAutomaton s = denote(gen.closed(Type::com(), 2));
    StrategyAutomaton m = minimize_strategy(s);
    CHECK(m.num_states() <= s.num_states());
    CHECK(m.language(10) == s.language(10));
  }
}

TEST_CASE("strategy JSON round trip") {
  for (const char* src : {"seq", "fn (x : com) -> x; x", "new v in v := 1; if !v then skip else skip"}) {
    StrategyAutomaton s = denote(typed(src));
    StrategyAutomaton back = strategy_from_json(to_json(s));
    CHECK(back.num_states() == s.num_states());
    CHECK(back.language(10) == s.language(10));
    CHECK(to_json(back) == to_json(s));
  }
  std::string dot = to_dot(denote_constant("skip"));
  CHECK(dot.find("q1?") != std::string::npos);
  CHECK(dot.find("a1!") != std::string::npos);
}
