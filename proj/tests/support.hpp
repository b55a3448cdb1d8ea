#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gosyn/design.hpp"
#include "gosyn/sim.hpp"
#include "gosyn/term.hpp"

namespace gosyn::testing {

inline std::string read_sample(const std::string& name) {
  std::ifstream in(std::string(GOSYN_SAMPLES_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing sample " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline TermPtr typed(const std::string& src) { return typecheck(parse(src)); }

/// Random well-typed SCI terms. No unbounded loops: the only `while` is
/// `while !v do v := 0`, which stops after one iteration.
class TermGen {
 public:
  explicit TermGen(unsigned seed) : rng_(seed) {}

  std::mt19937& rng() { return rng_; }

  /// Closed term of type com, exp or com -> com.
  TermPtr closed(const TypePtr& t, int depth) {
    for (;;) {
      Env env;
      TermPtr m;
      if (t->kind == TypeKind::Com)
        m = com(depth, env);
      else if (t->kind == TypeKind::Exp)
        m = exp(depth, env);
      else
        m = fun(depth, env);
      try {
        return typecheck(m);
      } catch (const TypeError&) {
        // affinity clash under par; draw again
      }
    }
  }

  /// Closed com term whose root is an application.
  TermPtr closed_apply(int depth) {
    for (;;) {
      auto m = closed(Type::com(), depth);
      if (m->kind == TermKind::Apply) return m;
    }
  }

 private:
  struct Env {
    std::vector<std::string> coms, exps, cells;
  };

  std::mt19937 rng_;
  int fresh_ = 0;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::string name(const char* p) { return p + std::to_string(fresh_++); }

  static TermPtr app(const char* c, TermPtr arg) {
    return Term::apply(Term::constant(c), std::move(arg));
  }

  TermPtr com(int d, Env env) {
    std::vector<int> opts{0};
    if (!env.coms.empty()) opts.push_back(1);
    if (!env.cells.empty()) opts.push_back(2);
    if (d > 0) opts.insert(opts.end(), {3, 3, 4, 5, 6, 7});
    if (d > 0 && !env.cells.empty()) opts.push_back(8);
    switch (opts[pick(static_cast<int>(opts.size()))]) {
      case 1:
        return Term::ident(env.coms[pick(static_cast<int>(env.coms.size()))]);
      case 2: {
        auto v = Term::ident(env.cells[pick(static_cast<int>(env.cells.size()))]);
        return app("asg", Term::pair(v, exp(0, env)));
      }
      case 3:
        return app("seq", Term::pair(com(d - 1, env), com(d - 1, env)));
      case 4:
        return Term::apply(app("par", com(d - 1, env)), com(d - 1, env));
      case 5:
        return app("if", Term::pair(exp(d - 1, env),
                                    Term::pair(com(d - 1, env), com(d - 1, env))));
      case 6: {
        auto v = name("v");
        Env inner = env;
        inner.cells.push_back(v);
        return app("newvar", Term::lambda(v, Type::cell(), com(d - 1, inner)));
      }
      case 7: {
        auto c = name("c");
        Env inner = env;
        inner.coms.push_back(c);
        return Term::apply(Term::lambda(c, Type::com(), com(d - 1, inner)),
                           com(d - 1, env));
      }
      case 8: {
        auto v = env.cells[pick(static_cast<int>(env.cells.size()))];
        return app("while", Term::pair(app("der", Term::ident(v)),
                                       app("asg", Term::pair(Term::ident(v),
                                                             Term::constant("0")))));
      }
      default:
        return Term::constant("skip");
    }
  }

  TermPtr exp(int d, Env env) {
    std::vector<int> opts{0, 1};
    if (!env.exps.empty()) opts.push_back(2);
    if (!env.cells.empty()) opts.push_back(3);
    if (d > 0) opts.insert(opts.end(), {4, 5, 5});
    switch (opts[pick(static_cast<int>(opts.size()))]) {
      case 1:
        return Term::constant("0");
      case 2:
        return Term::ident(env.exps[pick(static_cast<int>(env.exps.size()))]);
      case 3:
        return app("der",
                   Term::ident(env.cells[pick(static_cast<int>(env.cells.size()))]));
      case 4:
        return app("not", exp(d - 1, env));
      case 5: {
        static const char* ops[] = {"and", "or", "xor", "eq"};
        return app(ops[pick(4)], Term::pair(exp(d - 1, env), exp(d - 1, env)));
      }
      default:
        return Term::constant("1");
    }
  }

  TermPtr fun(int d, Env env) {
    auto c = name("c");
    env.coms.push_back(c);
    return Term::lambda(c, Type::com(), com(d, env));
  }
};

/// A random legal round trace of the arena (inputs and outputs alike),
/// projected onto its inputs. Rounds the device never enables simply stall
/// a safe-mode simulation.
inline RoundTrace random_stimulus(const Arena& a, std::mt19937& rng,
                                  size_t max_rounds) {
  RoundMonitor mon(a);
  RoundTrace out;
  std::uniform_int_distribution<size_t> len(1, max_rounds);
  size_t n = len(rng);
  for (size_t r = 0; r < n; ++r) {
    std::vector<Round> candidates;
    for (uint32_t mask = 1; mask < (1u << a.size()) && a.size() <= 12; ++mask) {
      Round round;
      for (size_t i = 0; i < a.size(); ++i)
        if (mask & (1u << i)) round.push_back(static_cast<int>(i));
      if (mon.accepts(round)) candidates.push_back(round);
    }
    if (candidates.empty()) break;
    Round chosen = candidates[std::uniform_int_distribution<size_t>(
        0, candidates.size() - 1)(rng)];
    mon.push(chosen);
    Round inputs;
    for (int m : chosen)
      if (a.move(m).input()) inputs.push_back(m);
    if (!inputs.empty()) out.push_back(inputs);
  }
  return out;
}

/// Do the rounds, in order, split `word` into consecutive blocks?
inline bool linearizes(const RoundTrace& rounds, const Word& word) {
  size_t at = 0;
  for (const auto& r : rounds) {
    if (at + r.size() > word.size()) return false;
    std::vector<int> block(word.begin() + at, word.begin() + at + r.size());
    std::vector<int> sorted_round = r;
    std::sort(block.begin(), block.end());
    std::sort(sorted_round.begin(), sorted_round.end());
    if (block != sorted_round) return false;
    at += r.size();
  }
  return at == word.size();
}

}  // namespace gosyn::testing
