#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace gosyn;
using namespace gosyn::testing;

TEST_CASE("skip answers in the cycle it is asked") {
  SyncDesign d = single_instance(synthesize(denote_constant("skip"), MinMode::Protocol));
  SimReport r = simulate(d, parse_round_trace(d.arena, "q1\nq1\n"));
  CHECK(r.status == SimStatus::Completed);
  CHECK(format_round_trace(d.arena, r.trace) == "q1, a1\nq1, a1\n");
  CHECK(r.at_initial);
}

TEST_CASE("stimulus waits until the device can take it") {
  SyncDesign d = synthesize(denote_design(typed(read_sample("shared_call.sci"))), MinMode::Protocol);
  SimReport r = simulate(d, parse_round_trace(d.arena, "a2\n"));
  // a2 is only legal once the program has asked q2.
  CHECK(r.status == SimStatus::Deadlock);
  CHECK(r.detail.find("never enabled") != std::string::npos);
}

TEST_CASE("sequential sharing through an activation manager") {
  SyncDesign d = synthesize(denote_design(typed(read_sample("shared_call.sci"))), MinMode::Protocol);
  SimOptions opt;
  opt.probes = {"am0"};
  SimReport r = simulate(d, parse_round_trace(d.arena, read_sample("shared_call.trace")), opt);
  CHECK(r.status == SimStatus::Completed);
  CHECK(r.at_initial);
  const Arena& am = d.parts[d.find("am0")].arena();
  Word expected = parse_moves(am, "Q'2 Q'0 Q0 Q2 A2 A0 A'0 A'2 Q'1 Q'0 Q0 Q1 A1 A0 A'0 A'1");
  CHECK(linearizes(r.probes.at("am0"), expected));
  CHECK(check_sync_trace(d.arena, r.trace).legal());
}

TEST_CASE("flat and structured simulation observe the same boundary") {
  TermGen gen(13);
  for (int i = 0; i < 30; ++i) {
    TermPtr t = gen.closed(i % 2 ? Type::com() : Type::exp(), 2);
    SyncDesign flat = single_instance(synthesize(denote(t), MinMode::Protocol));
    SyncDesign structured = synthesize(denote_design(t), MinMode::None);
    RoundTrace stim{{flat.arena.find("q1")}};
    SimReport a = simulate(flat, stim), b = simulate(structured, stim);
    CHECK(a.status == SimStatus::Completed);
    CHECK(b.status == SimStatus::Completed);
    // Same moves, possibly spread over a different number of cycles.
    auto moves = [](const RoundTrace& tr) {
      std::vector<int> all;
      for (const auto& r : tr) all.insert(all.end(), r.begin(), r.end());
      return all;
    };
    CHECK_MESSAGE(moves(a.trace) == moves(b.trace), to_source(*t));
  }
}

TEST_CASE("nested call through an unsafe wiring deadlocks") {
  SyncDesign d = parse_wiring(read_sample("nested_call.wire"));
  SimOptions opt;
  opt.unsafe = true;
  SimReport r = simulate(d, parse_round_trace(d.arena, read_sample("nested_call.trace")), opt);
  CHECK(r.status == SimStatus::Deadlock);
  CHECK(!r.detail.empty());
}

TEST_CASE("simultaneous requests race") {
  SyncDesign d = parse_wiring(read_sample("concurrent_call.wire"));
  SimOptions opt;
  opt.unsafe = true;
  SimReport r = simulate(d, parse_round_trace(d.arena, read_sample("concurrent_call.trace")), opt);
  CHECK(r.status == SimStatus::Race);
  CHECK(r.where == "am");
  CHECK(r.race_ports.size() == 2);
}

TEST_CASE("a stray answer on an internal wire is a protocol violation") {
  SyncDesign d = parse_wiring(
      "interface com\n"
      "instance s skip\n"
      "instance p seq\n"
      "export q1 s.q1\n"
      "export a1 s.a1\n"
      "wire s.a1 p.a1\n");
  SimOptions opt;
  opt.unsafe = true;
  SimReport r = simulate(d, {{d.arena.find("q1")}}, opt);
  CHECK(r.status == SimStatus::ProtocolViolation);
  CHECK(r.where == "p");
  REQUIRE(r.violation);
}

TEST_CASE("stimulus must name device inputs") {
  SyncDesign d = single_instance(synthesize(denote_constant("skip"), MinMode::Protocol));
  CHECK_THROWS_AS(simulate(d, {{d.arena.find("a1")}}), std::invalid_argument);
}

TEST_CASE("wiring files") {
  CHECK_THROWS(parse_wiring("instance s nosuch\n"));
  CHECK_THROWS(parse_wiring("interface com\ninstance s skip\nwire s.q9 s.a1\n"));
  SyncDesign d = parse_wiring(
      "interface com\n"
      "instance s skip   # one instance\n"
      "export q1 s.Q1\n"
      "export a1 s.a1\n");
  SimReport r = simulate(d, {{d.arena.find("q1")}});
  CHECK(r.status == SimStatus::Completed);
}

TEST_CASE("reports") {
  SyncDesign d = single_instance(synthesize(denote_constant("skip"), MinMode::Protocol));
  SimReport r = simulate(d, {{d.arena.find("q1")}});
  auto j = nlohmann::json::parse(report_json(r, d.arena));
  CHECK(j["status"] == "Completed");
  CHECK(report_text(r, d.arena).find("Completed") != std::string::npos);
  std::string vcd = to_vcd({"q1", "a1"}, r.trace);
  CHECK(vcd.find("$enddefinitions") != std::string::npos);
  CHECK(vcd.find("#0") != std::string::npos);
}

TEST_CASE("simulation is deterministic") {
  SyncDesign d = synthesize(denote_design(typed(read_sample("counter.sci"))), MinMode::Protocol);
  RoundTrace stim = parse_round_trace(d.arena, "q1\nq1\n");
  SimReport a = simulate(d, stim), b = simulate(d, stim);
  CHECK(report_json(a, d.arena) == report_json(b, d.arena));
}
