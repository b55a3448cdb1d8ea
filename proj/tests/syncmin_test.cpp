#include "doctest.h"
#include "gosyn/sim.hpp"
#include "support.hpp"

using namespace gosyn;
using namespace gosyn::testing;

namespace {

const std::vector<std::string> kConstants = {
    "0",  "1",  "skip", "asg", "der", "seq", "par",   "and",
    "or", "xor", "eq",  "not", "if",  "while", "newvar"};

}  // namespace

TEST_CASE("true is a wire") {
  SyncMachine m = round_abstract(denote_constant("1"));
  const Arena& a = m.arena();
  REQUIRE(m.num_states() == 1);
  const SyncTransition* t = m.find(0, {a.find("q1")});
  REQUIRE(t);
  CHECK(t->outputs == std::vector<int>{a.find("t1")});
  CHECK(t->to == 0);
}

TEST_CASE("seq collapses to wires under the protocol") {
  SyncMachine m = round_abstract(denote_constant("seq"));
  CHECK(m.num_states() == 3);
  SyncMachine p = minimize_under_protocol(m, ProtocolAutomaton(m.arena()));
  CHECK(p.combinational());
  const Arena& a = m.arena();
  const SyncTransition* t = p.find(0, {a.find("a1")});
  REQUIRE(t);
  CHECK(t->outputs == std::vector<int>{a.find("q2")});
}

TEST_CASE("idle rounds are implicit") {
  SyncMachine m = round_abstract(denote_constant("skip"));
  const SyncTransition* idle = m.find(0, {});
  REQUIRE(idle);
  CHECK(idle->outputs.empty());
  CHECK(idle->to == 0);
}

TEST_CASE("minimizations never grow and stay equivalent") {
  std::vector<StrategyAutomaton> all;
  for (const auto& c : kConstants) all.push_back(denote_constant(c));
  for (const char* t : {"com", "exp", "com -> com"}) all.push_back(diagonal(parse_type(t)));
  for (const auto& s : all) {
    SyncMachine m = round_abstract(s);
    ProtocolAutomaton p(m.arena());
    SyncMachine plain = minimize(m);
    SyncMachine proto = minimize_under_protocol(m, p);
    CHECK(m.num_states() <= s.num_states());
    CHECK(plain.num_states() <= m.num_states());
    CHECK(proto.num_states() <= plain.num_states());
    CHECK(equivalent_under_protocol(m, plain, p, 10).equivalent);
    CHECK(equivalent_under_protocol(m, proto, p, 10).equivalent);
  }
}

TEST_CASE("equivalence finds a difference") {
  SyncMachine t = round_abstract(denote_constant("1"));
  SyncMachine f = round_abstract(denote_constant("0"));
  ProtocolAutomaton p(t.arena());
  auto v = equivalent_under_protocol(t, f, p, 4);
  CHECK(!v.equivalent);
  CHECK(v.round == 1);
  REQUIRE(v.witness.size() == 1);
  CHECK_THROWS_AS(equivalent_under_protocol(t, t, p, 25), LimitExceeded);
}

TEST_CASE("react takes inputs in port order") {
  SyncMachine m = round_abstract(diagonal(Type::com()));
  const Arena& a = m.arena();
  const SyncTransition& r = react(m, 0, {a.find("Q1"), a.find("Q2")});
  CHECK(r.inputs == std::vector<int>{a.find("Q1")});
}

TEST_CASE("synchronous machines of random programs are deterministic") {
  TermGen gen(6);
  for (int i = 0; i < 20; ++i) {
    TermPtr t = gen.closed(Type::com(), 2);
    SyncMachine a = synthesize(denote(t), MinMode::Protocol);
    SyncMachine b = synthesize(denote(t), MinMode::Protocol);
    CHECK(sync_json(a) == sync_json(b));
    CHECK(sync_table(a) == sync_table(b));
  }
}

TEST_CASE("machine text forms") {
  SyncMachine m = round_abstract(denote_constant("skip"));
  CHECK(sync_table(m).find("{q1} / {a1}") != std::string::npos);
  CHECK(sync_dot(m).find("digraph") != std::string::npos);
  CHECK(sync_json(m).find("\"transitions\"") != std::string::npos);
}
