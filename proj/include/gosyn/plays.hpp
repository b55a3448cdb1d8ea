#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gosyn/arena.hpp"

namespace gosyn {

enum class Rule { Fork, Wait, Serial, Justification, Duplicate };
const char* to_string(Rule r);

struct Violation {
  Rule rule;
  size_t index;  // move index for plays, round index for round traces
  std::string detail;
};

struct Occurrence {
  int move;
  int justifier;  // index of the justifying occurrence, -1 for initial moves
};

struct Play {
  std::vector<Occurrence> occurrences;
};

class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Word = std::vector<int>;
using Language = std::set<Word>;
using Round = std::vector<int>;
using RoundTrace = std::vector<Round>;

/// Incremental legality checker over one arena. Reconstructs justifier
/// links, picking the most recently opened pending enabler.
class PlayChecker {
 public:
  enum class Mode {
    SinglePlay,  // one session: nothing may follow once all questions close
    Reentrant,   // sessions may follow each other on the same interface
  };

  PlayChecker(const Arena& arena, Mode mode);

  /// Plays `move`; on violation returns the rule and leaves state unchanged.
  std::optional<Rule> step(int move);

  bool complete() const { return pending_.empty(); }
  bool started() const { return count_ > 0; }
  const std::vector<Occurrence>& history() const { return history_; }
  /// Canonical pending configuration: (move, justifier move) in opening order.
  std::vector<std::pair<int, int>> key() const;
  /// Key up to the opening order of independent pending moves.
  std::vector<std::pair<int, int>> canonical_key() const;
  /// Drops the recorded history; legality of later moves is unaffected.
  void forget_history() { history_.clear(); }
  std::vector<int> pending_moves() const;

 private:
  struct Pending {
    int move;
    int occurrence;
    int justifier;  // occurrence index
  };
  const Arena* arena_;
  Mode mode_;
  std::vector<Pending> pending_;
  std::vector<Occurrence> history_;
  std::vector<bool> seen_;
  size_t count_ = 0;

  int pending_enabler(int move) const;
};

/// Legality of a flat move sequence as a single play.
struct PlayResult {
  std::optional<Play> play;
  std::optional<Violation> violation;
  bool legal() const { return play.has_value(); }
};
PlayResult check_play(const Arena& a, const Word& moves);
/// Whitespace-separated move names; '#' starts a comment.
Word parse_moves(const Arena& a, const std::string& text);
std::string format_word(const Arena& a, const Word& w);

/// Deterministic automaton of legal plays. States are pending-question
/// configurations; every state accepts; state 0 is initial and complete.
/// States are built on first use; copies share them.
class ProtocolAutomaton {
 public:
  explicit ProtocolAutomaton(const Arena& a);

  const Arena& arena() const;
  int initial() const { return 0; }
  /// States discovered so far.
  size_t num_states() const;
  /// Successor state, or -1 when `move` is illegal.
  int step(int state, int move) const;
  bool complete(int state) const;
  const std::vector<std::pair<int, int>>& key(int state) const;
  /// Human-readable pending configuration, e.g. "{q1,q2}".
  std::string describe(int state) const;

  /// Words of length <= max_len. With single_session, a word stops once it
  /// returns to the complete state (the language of single plays).
  Language language(size_t max_len, bool single_session = true) const;

  /// Successor states after a round: every linearization in which each
  /// move's justifier may appear earlier in the same round.
  std::set<int> step_round(const std::set<int>& from, const Round& round) const;

 private:
  struct Graph;
  std::shared_ptr<Graph> g_;
};

ProtocolAutomaton protocol_automaton(const Arena& a);

/// Exhaustive search of single plays up to max_len (<= 14).
Language enumerate_plays(const Arena& a, size_t max_len);

/// Synchronous trace legality; sessions may follow each other.
struct SyncResult {
  std::optional<Violation> violation;
  bool legal() const { return !violation.has_value(); }
};

/// Incremental monitor for round traces, used by check_sync_trace and sim.
class RoundMonitor {
 public:
  explicit RoundMonitor(const Arena& a);
  std::optional<Violation> push(const Round& round);
  /// Would `round` be legal as the next round, without committing it?
  bool accepts(const Round& round) const;
  bool complete() const;
  size_t rounds() const { return rounds_; }
  std::vector<int> pending_moves() const;

 private:
  const Arena* arena_;
  std::vector<PlayChecker> states_;
  size_t rounds_ = 0;

  std::vector<PlayChecker> advance(const Round& round, Rule* failure,
                                   size_t* depth) const;
};

SyncResult check_sync_trace(const Arena& a, const RoundTrace& rounds);
/// Monitor of a round trace on an interface boundary.
inline SyncResult monitor(const Arena& a, const RoundTrace& t) {
  return check_sync_trace(a, t);
}

/// Trace file: one round per line, comma-separated move names; '#' comments.
RoundTrace parse_round_trace(const Arena& a, const std::string& text);
RoundTrace parse_round_trace(const std::vector<std::string>& names_by_id,
                             const std::string& text);
std::string format_round_trace(const Arena& a, const RoundTrace& t);

}  // namespace gosyn
