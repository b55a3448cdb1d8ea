#include "doctest.h"
#include "gosyn/plays.hpp"

using namespace gosyn;

namespace {

Language prefix_closure(const Language& l) {
  Language out;
  for (const auto& w : l)
    for (size_t n = 0; n <= w.size(); ++n) out.insert(Word(w.begin(), w.begin() + n));
  return out;
}

}  // namespace

TEST_CASE("legal plays") {
  Arena a = arena_of_type(parse_type("com -> com"));
  for (const char* w : {"", "q1", "q1 q2 a2 q2 a2 a1", "q1 a1"}) {
    auto r = check_play(a, parse_moves(a, w));
    CHECK_MESSAGE(r.legal(), w);
  }
  auto r = check_play(a, parse_moves(a, "q1 q2 a2"));
  REQUIRE(r.play);
  CHECK(r.play->occurrences[1].justifier == 0);
  CHECK(r.play->occurrences[2].justifier == 1);
}

TEST_CASE("justification failures") {
  Arena a = arena_of_type(parse_type("com -> com"));
  auto r = check_play(a, parse_moves(a, "a1"));
  REQUIRE(r.violation);
  CHECK(r.violation->rule == Rule::Justification);
  CHECK(r.violation->index == 0);
}

TEST_CASE("format and parse moves") {
  Arena a = arena_of_type(parse_type("com -> com"));
  Word w = parse_moves(a, "q1 q2 a2");
  CHECK(format_word(a, w) == "q1 q2 a2");
  CHECK_THROWS(parse_moves(a, "q9"));
}

TEST_CASE("automaton and enumeration agree") {
  for (const char* t : {"com", "exp", "cell", "com * com", "com -> com",
                        "exp -> com", "(com -> com) -> com", "com * com -> com"}) {
    Arena a = arena_of_type(parse_type(t));
    Language x = protocol_automaton(a).language(8);
    Language y = enumerate_plays(a, 8);
    CHECK_MESSAGE(x == y, t);
    CHECK(prefix_closure(x) == x);
    for (const auto& w : x) CHECK(check_play(a, w).legal());
  }
}

TEST_CASE("every state of the protocol accepts and state 0 is complete") {
  ProtocolAutomaton p(arena_of_type(parse_type("com -> com")));
  CHECK(p.complete(p.initial()));
  int s = p.step(0, p.arena().find("q1"));
  REQUIRE(s >= 0);
  CHECK(!p.complete(s));
  CHECK(p.describe(s) == "{q1}");
  CHECK(p.step(0, p.arena().find("a1")) < 0);
}

TEST_CASE("enumeration bound") {
  CHECK_THROWS_AS(enumerate_plays(arena_of_type(Type::com()), 15), LimitExceeded);
}

TEST_CASE("round traces") {
  Arena a = arena_of_type(parse_type("com -> com"));
  CHECK(check_sync_trace(a, parse_round_trace(a, "q1, q2\na2, a1\n")).legal());
  CHECK(check_sync_trace(a, parse_round_trace(a, "q1, q2, a2, a1\nq1\n")).legal());
  // A second session may start once the first has closed.
  CHECK(check_sync_trace(a, parse_round_trace(a, "q1\na1\nq1\n")).legal());
  auto bad = check_sync_trace(a, parse_round_trace(a, "q1\nq2\nq2\n"));
  REQUIRE(bad.violation);
  CHECK(bad.violation->rule == Rule::Serial);
  CHECK(bad.violation->index == 2);
  auto orphan = check_sync_trace(a, parse_round_trace(a, "a2\n"));
  CHECK(!orphan.legal());
}

TEST_CASE("round trace text") {
  Arena a = arena_of_type(parse_type("com -> com"));
  RoundTrace t = parse_round_trace(a, "# comment\nq1, q2\n\na2\n");
  REQUIRE(t.size() == 2);
  CHECK(parse_round_trace(a, format_round_trace(a, t)) == t);
}

TEST_CASE("monitor is incremental") {
  Arena a = arena_of_type(Type::com());
  RoundMonitor m(a);
  CHECK(m.complete());
  CHECK(m.accepts({a.find("q1")}));
  CHECK(!m.accepts({a.find("a1")}));
  CHECK(!m.push({a.find("q1")}));
  CHECK(!m.complete());
  CHECK(m.pending_moves() == std::vector<int>{a.find("q1")});
  CHECK(!m.push({a.find("a1")}));
  CHECK(m.complete());
  CHECK(m.rounds() == 2);
}
