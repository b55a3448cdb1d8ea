#include "doctest.h"
#include "gosyn/backend.hpp"
#include "gosyn/sim.hpp"
#include "support.hpp"

using namespace gosyn;
using namespace gosyn::testing;

TEST_CASE("two-level minimization respects on-set and don't-cares") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int vars = 1 + trial % 6;
    uint32_t n = 1u << vars;
    std::vector<uint32_t> on, dc;
    for (uint32_t x = 0; x < n; ++x) {
      int r = rng() % 4;
      if (r == 0) on.push_back(x);
      if (r == 1) dc.push_back(x);
    }
    Sop f = minimize_sop(vars, on, dc);
    for (uint32_t x = 0; x < n; ++x) {
      std::vector<bool> v(vars);
      for (int i = 0; i < vars; ++i) v[i] = (x >> i) & 1;
      bool want_on = std::find(on.begin(), on.end(), x) != on.end();
      bool is_dc = std::find(dc.begin(), dc.end(), x) != dc.end();
      if (!is_dc) CHECK(eval_sop(f, v) == want_on);
    }
  }
  CHECK(minimize_sop(3, {}, {}).empty());
  Sop one = minimize_sop(2, {0, 1, 2, 3}, {});
  REQUIRE(one.size() == 1);
  CHECK(one[0].empty());
}

TEST_CASE("true compiles to wires") {
  Netlist n = to_netlist(synthesize(denote_constant("1"), MinMode::Protocol), "true");
  CHECK(n.registers == 0);
  std::string v = emit_verilog(n);
  CHECK(v.find("reg") == std::string::npos);
  CHECK(v.find("assign T1 = Q1;") != std::string::npos);
  CHECK(v.find("assign F1 = 1'b0;") != std::string::npos);
  CHECK(v.find("clk") == std::string::npos);
}

TEST_CASE("stateful machines get one-hot registers") {
  SyncMachine m = synthesize(denote_constant("par"), MinMode::Protocol);
  Netlist n = to_netlist(m, "par");
  CHECK(n.registers == m.num_states());
  std::vector<bool> s = netlist_reset(n);
  CHECK(std::count(s.begin(), s.end(), true) == 1);
  CHECK(s[0]);
  std::string v = emit_verilog(n);
  CHECK(v.find("always @(posedge clk)") != std::string::npos);
}

TEST_CASE("keywords are not module names") {
  Netlist n = to_netlist(synthesize(denote_constant("if"), MinMode::Protocol), "if");
  CHECK(emit_verilog(n).find("module m_if") != std::string::npos);
}

TEST_CASE("netlist agrees with its machine") {
  TermGen gen(8);
  std::vector<TermPtr> terms;
  for (const char* c : {"skip", "seq", "par", "if", "while", "newvar", "asg"})
    terms.push_back(typecheck(Term::constant(c)));
  for (int i = 0; i < 30; ++i) terms.push_back(gen.closed(i % 2 ? Type::com() : Type::exp(), 2));
  int compared = 0;
  for (const auto& t : terms) {
    SyncMachine m = synthesize(denote(t), MinMode::Protocol);
    if (m.arena().size() > 12) continue;
    Netlist n = to_netlist(m);
    for (int k = 0; k < 5; ++k) {
      RoundTrace stim = random_stimulus(m.arena(), gen.rng(), 8);
      SimReport a = simulate(single_instance(m), stim);
      // Rounds the machine refuses are don't-cares for the netlist.
      if (a.status != SimStatus::Completed) continue;
      SimReport b = simulate(n, m.arena(), stim);
      CHECK_MESSAGE(a.trace == b.trace, to_source(*t));
      CHECK(b.status == SimStatus::Completed);
      ++compared;
    }
  }
  CHECK(compared > 50);
}

TEST_CASE("netlist JSON round trip") {
  Netlist n = to_netlist(synthesize(denote_constant("while"), MinMode::Protocol), "w");
  Netlist back = netlist_from_json(emit_json(n));
  CHECK(emit_json(back) == emit_json(n));
  CHECK(emit_verilog(back) == emit_verilog(n));
  CHECK(emit_dot(n).find("digraph") != std::string::npos);
}

TEST_CASE("wide machines are refused") {
  SyncMachine m = round_abstract(diagonal(parse_type("com -> com")));
  CHECK_NOTHROW(to_netlist(m));
  // Five cells offer fifteen initial requests.
  TypePtr wide = parse_type("cell * cell * cell * cell * cell");
  SyncMachine idle(Interface{wide, {}}, arena_of_type(wide), 1, {});
  CHECK_THROWS_AS(to_netlist(idle), LimitExceeded);
}

TEST_CASE("instance loops are detected") {
  Netlist wire = to_netlist(synthesize(identity(Type::com()), MinMode::Protocol), "id");
  // Feeding the identity's request output back into its own request input.
  int q_in = wire.ports[wire.inputs[0]].move;
  int q_out = -1;
  for (int o : wire.outputs)
    if (wire.ports[o].name.rfind("Q", 0) == 0) q_out = wire.ports[o].move;
  REQUIRE(q_out >= 0);
  std::vector<const Netlist*> parts{&wire};
  CHECK_THROWS_AS(check_combinational_cycles(parts, {"id"}, {{0, q_out, 0, q_in}}),
                  CombinationalCycle);
  CHECK_NOTHROW(check_combinational_cycles(parts, {"id"}, {}));
}

TEST_CASE("structured Verilog of a design without sharing") {
  SyncDesign d = synthesize(denote_design(typed("skip; skip")), MinMode::Protocol);
  std::string v = emit_design_verilog(d, "top");
  CHECK(v.find("module top (") != std::string::npos);
  CHECK(v.find("module top_seq0") != std::string::npos);
}
