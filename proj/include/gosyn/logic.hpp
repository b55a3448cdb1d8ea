#pragma once

#include <cstdint>
#include <vector>

namespace gosyn {

struct Literal {
  int var;
  bool positive;
  bool operator==(const Literal& o) const { return var == o.var && positive == o.positive; }
};
using Cube = std::vector<Literal>;  // conjunction, sorted by var
using Sop = std::vector<Cube>;      // disjunction; empty = constant 0

/// Two-level minimization (Quine-McCluskey, greedy cover) of a function of
/// `vars` variables given by its on-set and don't-care set as minterms.
/// Bit i of a minterm is variable i. At most 16 variables.
Sop minimize_sop(int vars, const std::vector<uint32_t>& on,
                 const std::vector<uint32_t>& dc);

bool eval_sop(const Sop& f, const std::vector<bool>& values);

}  // namespace gosyn
