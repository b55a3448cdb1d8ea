// gosyn: SCI to synchronous circuits.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gosyn/sim.hpp"

using namespace gosyn;

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string stem(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  return base.substr(0, base.find('.'));
}

TermPtr load_term(const std::string& path) {
  return typecheck(parse(read_file(path)));
}

MinMode min_mode(const std::string& s, bool no_minimize) {
  if (no_minimize) return MinMode::None;
  if (s == "plain") return MinMode::Plain;
  return MinMode::Protocol;
}

struct Options {
  std::string file;
  bool dump_ast = false;
  std::string arena_type;
  bool sync = false;
  bool async = false;
  bool no_minimize = false;
  std::string min = "protocol";
  bool structured = false;
  std::string out;
  std::string top;
  std::string json;
  std::string dot;
  std::string stimulus;
  size_t max_cycles = 1000;
  std::string vcd;
  std::string unsafe_wire;
  std::vector<std::string> probes;
  std::string type;
  bool play = false;
};

int cmd_check(const Options& o) {
  if (!o.arena_type.empty()) {
    Arena a = arena_of_type(parse_type(o.arena_type));
    std::cout << arena_table(a);
    if (!o.dot.empty()) write_file(o.dot, arena_dot(a));
    if (o.file.empty()) return 0;
  }
  if (o.file.empty()) throw UsageError("check: a source file or --arena is required");
  TermPtr raw = parse(read_file(o.file));
  if (o.dump_ast) std::cout << "ast: " << to_functional(*raw) << "\n";
  TermPtr t = typecheck(raw);
  std::cout << "ok: " << to_string(*t->type) << "\n";
  return 0;
}

int cmd_ir(const Options& o) {
  TermPtr t = load_term(o.file);
  if (o.structured) {
    Design d = denote_design(t);
    std::cout << "instances:";
    for (size_t i = 0; i < d.parts.size(); ++i)
      std::cout << " " << d.names[i] << "(" << d.parts[i].num_states() << ")";
    std::cout << "\nwires: " << d.wires.size() << "\n";
    return 0;
  }
  StrategyAutomaton s = denote(t);
  if (!o.sync) {
    std::cout << "async automaton: " << s.num_states() << " states, "
              << s.transitions().size() << " transitions\n"
              << arena_table(s.arena());
    for (const auto& tr : s.transitions()) {
      const Move& m = s.arena().move(tr.move);
      std::cout << "s" << tr.from << " " << m.name << (m.input() ? "?" : "!") << " s"
                << tr.to << "\n";
    }
    if (!o.dot.empty()) write_file(o.dot, to_dot(s, stem(o.file)));
    if (!o.json.empty()) write_file(o.json, to_json(s));
    return 0;
  }
  SyncMachine m = synthesize(s, min_mode(o.min, o.no_minimize));
  std::cout << "sync machine: " << sync_table(m);
  if (!o.dot.empty()) write_file(o.dot, sync_dot(m, stem(o.file)));
  if (!o.json.empty()) write_file(o.json, sync_json(m));
  return 0;
}

int cmd_compile(const Options& o) {
  TermPtr t = load_term(o.file);
  std::string top = o.top.empty() ? stem(o.file) : o.top;
  MinMode mode = min_mode(o.min, o.no_minimize);
  std::string verilog;
  if (o.structured) {
    verilog = emit_design_verilog(synthesize(denote_design(t), mode), top);
  } else {
    SyncMachine m = synthesize(denote(t), mode);
    Netlist n = to_netlist(m, top);
    verilog = emit_verilog(n);
    if (!o.json.empty()) write_file(o.json, emit_json(n));
    if (!o.dot.empty()) write_file(o.dot, emit_dot(n));
    std::cerr << "states " << m.num_states() << ", registers " << n.registers << "\n";
  }
  write_file(o.out.empty() ? "-" : o.out, verilog);
  return 0;
}

int cmd_sim(const Options& o) {
  MinMode mode = min_mode(o.min, o.no_minimize);
  SyncDesign d;
  if (!o.unsafe_wire.empty()) {
    d = parse_wiring(read_file(o.unsafe_wire), mode);
  } else {
    if (o.file.empty()) throw UsageError("sim: a source file or --unsafe-wire is required");
    TermPtr t = load_term(o.file);
    d = o.structured || !o.probes.empty() ? synthesize(denote_design(t), mode)
                                          : single_instance(synthesize(denote(t), mode));
  }
  RoundTrace stim =
      o.stimulus.empty() ? RoundTrace{} : parse_round_trace(d.arena, read_file(o.stimulus));
  SimOptions so;
  so.max_cycles = o.max_cycles;
  so.unsafe = !o.unsafe_wire.empty();
  so.probes = o.probes;
  SimReport r = simulate(d, stim, so);
  std::cout << report_text(r, d.arena);
  for (const auto& [name, trace] : r.probes)
    std::cout << "probe " << name << ":\n"
              << format_round_trace(d.parts[d.find(name)].arena(), trace);
  if (!o.json.empty()) write_file(o.json, report_json(r, d.arena));
  if (!o.vcd.empty()) {
    std::vector<std::string> ports;
    for (const auto& mv : d.arena.moves()) ports.push_back(port_name(mv.name));
    write_file(o.vcd, to_vcd(ports, r.trace));
  }
  return r.status == SimStatus::Completed ? 0 : 1;
}

int cmd_monitor(const Options& o) {
  Arena a = arena_of_type(parse_type(o.type));
  std::string text = read_file(o.file);
  if (o.play) {
    Word w = parse_moves(a, text);
    PlayResult r = check_play(a, w);
    if (r.legal()) {
      std::cout << "legal\n";
      return 0;
    }
    std::cout << "violation: " << to_string(r.violation->rule) << " at index "
              << r.violation->index << "\n" << r.violation->detail << "\n";
    return 1;
  }
  SyncResult r = monitor(a, parse_round_trace(a, text));
  if (r.legal()) {
    std::cout << "legal\n";
    return 0;
  }
  std::cout << "violation: " << to_string(r.violation->rule) << " at round "
            << r.violation->index << "\n" << r.violation->detail << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gosyn: compile SCI programs to synchronous circuits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto* check = app.add_subcommand("check", "parse and typecheck");
  check->add_option("file", o.file, "SCI source");
  check->add_flag("--dump-ast", o.dump_ast, "print the functional form");
  check->add_option("--arena", o.arena_type, "print the arena of a type");
  check->add_option("--dot", o.dot, "write the arena as DOT");

  auto* ir = app.add_subcommand("ir", "dump the automaton");
  ir->add_option("file", o.file, "SCI source")->required();
  auto* sync = ir->add_flag("--sync", o.sync, "round-abstracted machine");
  ir->add_flag("--async", o.async, "asynchronous automaton (default)")->excludes(sync);
  ir->add_flag("--structured", o.structured, "list the instances of the structured design");

  auto* compile = app.add_subcommand("compile", "emit Verilog");
  compile->add_option("file", o.file, "SCI source")->required();
  compile->add_option("-o", o.out, "output file (default stdout)");
  compile->add_option("--top", o.top, "module name");
  compile->add_flag("--structured", o.structured, "one module per instance");

  auto* sim = app.add_subcommand("sim", "cycle simulation");
  sim->add_option("file", o.file, "SCI source");
  sim->add_option("--stimulus", o.stimulus, "round trace of inputs");
  sim->add_option("--max-cycles", o.max_cycles, "cycle bound")->check(CLI::PositiveNumber);
  sim->add_option("--vcd", o.vcd, "write external waveform");
  sim->add_option("--unsafe-wire", o.unsafe_wire, "simulate a hand-wired circuit");
  sim->add_option("--probe", o.probes, "record an instance's ports");
  sim->add_flag("--structured", o.structured, "simulate instance by instance");

  for (auto* sub : {ir, compile, sim}) {
    sub->add_flag("--no-minimize", o.no_minimize, "skip minimization");
    sub->add_option("--min", o.min, "minimization")
        ->check(CLI::IsMember({"plain", "protocol"}));
    sub->add_option("--json", o.json, "write JSON");
  }
  for (auto* sub : {ir, compile}) sub->add_option("--dot", o.dot, "write DOT");

  auto* mon = app.add_subcommand("monitor", "check a trace against a type");
  mon->add_option("file", o.file, "trace file")->required();
  mon->add_option("--type", o.type, "interface type")->required();
  mon->add_flag("--play", o.play, "flat move sequence instead of rounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : 2;
  }

  try {
    if (*check) return cmd_check(o);
    if (*ir) return cmd_ir(o);
    if (*compile) return cmd_compile(o);
    if (*sim) return cmd_sim(o);
    if (*mon) return cmd_monitor(o);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const TypeError& e) {
    std::cerr << "type error (" << to_string(e.kind) << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
