// Acceptance checks: one PASS/FAIL line per criterion.

#include <chrono>
#include <functional>
#include <iostream>

#include "gosyn/backend.hpp"
#include "gosyn/design.hpp"
#include "gosyn/sim.hpp"
#include "gosyn/syncmin.hpp"
#include "support.hpp"

using namespace gosyn;
using namespace gosyn::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

const std::vector<std::string> kConstants = {
    "0",  "1",  "skip", "asg", "der", "seq", "par",   "and",
    "or", "xor", "eq",  "not", "if",  "while", "newvar"};

bool rejected_for_affinity(const std::string& src) {
  try {
    typed(src);
  } catch (const TypeError& e) {
    return e.kind == TypeErrorKind::Affinity;
  }
  return false;
}

Outcome typing_gate() {
  try {
    typed("fn (x : com) -> x; x");
  } catch (const std::exception& e) {
    return fail(std::string("sequential sharing rejected: ") + e.what());
  }
  if (!rejected_for_affinity("fn (x : com) -> x || x"))
    return fail("parallel sharing not rejected for affinity");
  if (!rejected_for_affinity("fn (f : com -> com) -> fn (x : com) -> f (f x)"))
    return fail("nested call not rejected for affinity");
  return {};
}

Outcome protocol_language() {
  Arena a = arena_of_type(parse_type("com -> com"));
  int q1 = a.find("q1"), a1 = a.find("a1"), q2 = a.find("q2"), a2 = a.find("a2");
  Language expected;
  for (int k = 0; k < 5; ++k) {
    Word w{q1};
    for (int i = 0; i < k; ++i) w.insert(w.end(), {q2, a2});
    w.push_back(a1);
    for (size_t n = 0; n <= w.size() && n <= 9; ++n)
      expected.insert(Word(w.begin(), w.begin() + n));
  }
  Language by_automaton = protocol_automaton(a).language(9);
  Language by_search = enumerate_plays(a, 9);
  if (by_automaton != expected)
    return fail("protocol automaton gives " + std::to_string(by_automaton.size()) +
                " words, expected " + std::to_string(expected.size()));
  if (by_search != expected)
    return fail("enumeration gives " + std::to_string(by_search.size()) +
                " words, expected " + std::to_string(expected.size()));
  return {true, std::to_string(expected.size()) + " words"};
}

Outcome violation_triad() {
  Arena a = arena_of_type(parse_type("com -> com"));
  struct Case {
    const char* moves;
    Rule rule;
  } cases[] = {{"q1 a1 q2", Rule::Fork}, {"q1 q2 a1", Rule::Wait},
               {"q1 q2 q2", Rule::Serial}};
  for (const auto& c : cases) {
    auto r = check_play(a, parse_moves(a, c.moves));
    if (!r.violation) return fail(std::string(c.moves) + " accepted");
    if (r.violation->rule != c.rule || r.violation->index != 2)
      return fail(std::string(c.moves) + ": " + to_string(r.violation->rule) +
                  " at " + std::to_string(r.violation->index));
  }
  return {};
}

Outcome wire_collapse() {
  for (const char* src : {"1", "seq"}) {
    SyncMachine m = synthesize(denote(typed(src)), MinMode::Protocol);
    if (!m.combinational())
      return fail(std::string(src) + ": " + std::to_string(m.num_states()) + " states");
    std::string v = emit_verilog(to_netlist(m, "top"));
    if (v.find("reg ") != std::string::npos)
      return fail(std::string(src) + ": Verilog has registers");
  }
  return {};
}

Outcome round_inequality() {
  std::string counts;
  auto check = [&](const std::string& label, const StrategyAutomaton& s,
                   bool strict) -> bool {
    SyncMachine m = synthesize(s, MinMode::Protocol);
    counts += label + " " + std::to_string(s.num_states()) + "/" +
              std::to_string(m.num_states()) + " ";
    return strict ? m.num_states() < s.num_states()
                  : m.num_states() <= s.num_states();
  };
  for (const auto& c : kConstants)
    if (!check(c, denote_constant(c), false)) return fail(counts);
  if (!check("am(com)", diagonal(Type::com()), true)) return fail(counts);
  return {true, counts};
}

const char* kSharedCallWord =
    "Q'2 Q'0 Q0 Q2 A2 A0 A'0 A'2 Q'1 Q'0 Q0 Q1 A1 A0 A'0 A'1";

Outcome shared_call() {
  SyncDesign d = synthesize(denote_design(typed(read_sample("shared_call.sci"))),
                            MinMode::Protocol);
  RoundTrace stim = parse_round_trace(d.arena, read_sample("shared_call.trace"));
  SimOptions opt;
  opt.probes = {"am0"};
  SimReport r = simulate(d, stim, opt);
  if (r.status != SimStatus::Completed)
    return fail(std::string("status ") + to_string(r.status) + ": " + r.detail);
  const Arena& am = d.parts[d.find("am0")].arena();
  const RoundTrace& rounds = r.probes.at("am0");
  if (!linearizes(rounds, parse_moves(am, kSharedCallWord)))
    return fail("AM rounds " + format_round_trace(am, rounds));
  return {true, std::to_string(rounds.size()) + " rounds"};
}

Outcome nested_call() {
  SyncDesign d = parse_wiring(read_sample("nested_call.wire"));
  SimOptions opt;
  opt.unsafe = true;
  opt.probes = {"am"};
  SimReport r = simulate(d, parse_round_trace(d.arena, read_sample("nested_call.trace")), opt);
  if (r.status != SimStatus::Deadlock)
    return fail(std::string("status ") + to_string(r.status));
  const Arena& am = d.parts[d.find("am")].arena();
  int a0 = am.find("A0");
  for (const auto& round : r.probes.at("am"))
    if (std::find(round.begin(), round.end(), a0) != round.end())
      return fail("A0 emitted");
  return {true, "deadlock at cycle " + std::to_string(r.cycle)};
}

Outcome concurrent_call() {
  SyncDesign d = parse_wiring(read_sample("concurrent_call.wire"));
  SimOptions opt;
  opt.unsafe = true;
  SimReport r = simulate(d, parse_round_trace(d.arena, read_sample("concurrent_call.trace")), opt);
  if (r.status != SimStatus::Race)
    return fail(std::string("status ") + to_string(r.status));
  return {true, r.detail};
}

Outcome compositionality() {
  TermGen gen(9);
  const TypePtr types[] = {Type::com(), Type::exp(), parse_type("com -> com")};
  int completed = 0;
  for (int i = 0; i < 200; ++i) {
    TermPtr t = gen.closed(types[i % 3], 1 + i % 3);
    StrategyAutomaton s = denote(t);
    std::string why;
    if (!protocol_compliant(s, &why))
      return fail(to_source(*t) + ": " + why);
    SyncDesign d = synthesize(denote_design(t), MinMode::Protocol);
    RoundTrace stim = random_stimulus(d.arena, gen.rng(), 12);
    SimReport r = simulate(d, stim);
    if (r.status == SimStatus::ProtocolViolation)
      return fail(to_source(*t) + ": violation at " + r.where + ": " + r.detail);
    completed += r.status == SimStatus::Completed;
  }
  return {true, std::to_string(completed) + "/200 runs completed, none violated"};
}

Outcome diagonal_law() {
  TermGen gen(10);
  for (const char* ty : {"com", "exp", "com -> com"}) {
    TypePtr t = parse_type(ty);
    StrategyAutomaton share = abstract(diagonal(t, "x"), "x", t);
    for (int i = 0; i < 15; ++i) {
      StrategyAutomaton p = denote(gen.closed(t, 1 + i % 3));
      Language shared = apply(share, p).language(16);
      Language replicated = pair(p, p).language(16);
      Language oracle = compose_oracle(p, share, 16);
      if (shared != replicated || oracle != replicated)
        return fail(std::string("at ") + ty + ", program " + std::to_string(i));
    }
  }
  return {true, "15 programs at each of com, exp, com -> com"};
}

Outcome oracles() {
  TermGen gen(11);
  for (int i = 0; i < 100; ++i) {
    TermPtr m = gen.closed_apply(3);
    StrategyAutomaton fun = denote(typecheck(m->lhs));
    StrategyAutomaton arg = denote(typecheck(m->rhs));
    Language direct = compose(arg, fun).language(12);
    if (direct != compose_oracle(arg, fun, 12))
      return fail("compose disagrees on " + to_source(*m));
    if (direct != denote(m).language(12))
      return fail("denote disagrees on " + to_source(*m));
  }
  for (const auto& c : kConstants) {
    SyncMachine m = round_abstract(denote_constant(c));
    ProtocolAutomaton p = protocol_automaton(m.arena());
    auto v = equivalent_under_protocol(m, minimize_under_protocol(m, p), p, 12);
    if (!v.equivalent) return fail(c + ": " + v.detail);
  }
  return {};
}

bool reset_on(const SyncDesign& d, const RoundTrace& session, std::string* why) {
  SimReport once = simulate(d, session);
  RoundTrace twice_stim = session;
  twice_stim.insert(twice_stim.end(), session.begin(), session.end());
  SimReport twice = simulate(d, twice_stim);
  RoundTrace expected = once.trace;
  expected.insert(expected.end(), once.trace.begin(), once.trace.end());
  if (once.status != SimStatus::Completed || twice.status != SimStatus::Completed) {
    *why = std::string("status ") + to_string(twice.status);
    return false;
  }
  if (twice.trace != expected) {
    *why = "second session differs: " + format_round_trace(d.arena, twice.trace);
    return false;
  }
  if (!once.at_initial || !twice.at_initial) {
    *why = "not back in the initial state";
    return false;
  }
  return true;
}

Outcome reset_property() {
  std::vector<std::pair<std::string, TermPtr>> programs;
  for (const char* f : {"counter.sci", "true.sci", "skip.sci", "shared_call.sci"})
    programs.emplace_back(f, typed(read_sample(f)));
  TermGen gen(12);
  for (int i = 0; i < 30; ++i) {
    auto t = gen.closed(i % 2 ? Type::com() : Type::exp(), 1 + i % 3);
    programs.emplace_back(to_source(*t), t);
  }
  int designs = 0;
  for (const auto& [label, t] : programs) {
    Arena a = arena_of_type(t->type);
    RoundTrace session = label == "shared_call.sci"
                             ? parse_round_trace(a, read_sample("shared_call.trace"))
                             : RoundTrace{{a.find("q1")}};
    SyncDesign flat = single_instance(synthesize(denote(t), MinMode::Protocol));
    SyncDesign structured = synthesize(denote_design(t), MinMode::Protocol);
    for (const SyncDesign* d : {&flat, &structured}) {
      std::string why;
      if (!reset_on(*d, session, &why)) return fail(label + ": " + why);
      ++designs;
    }
  }
  return {true, std::to_string(designs) + " designs"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  } criteria[] = {
      {1, "typing gate", typing_gate},
      {2, "protocol language of com -> com", protocol_language},
      {3, "Fork/Wait/Serial violations", violation_triad},
      {4, "true and seq collapse to wires", wire_collapse},
      {5, "round abstraction never adds states", round_inequality},
      {6, "sequential sharing trace", shared_call},
      {7, "nested call deadlock", nested_call},
      {8, "concurrent request race", concurrent_call},
      {9, "compositionality under random stimulus", compositionality},
      {10, "diagonal law", diagonal_law},
      {11, "oracle equivalences", oracles},
      {12, "reset over back-to-back sessions", reset_property},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    failures += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " ("
              << secs << " s)";
    if (!o.note.empty()) std::cout << ": " << o.note;
    std::cout << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
