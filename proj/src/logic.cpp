#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "gosyn/logic.hpp"

namespace gosyn {

namespace {

struct Implicant {
  uint32_t value;
  uint32_t mask;  // 1 = variable eliminated
  bool operator<(const Implicant& o) const {
    return std::tie(mask, value) < std::tie(o.mask, o.value);
  }
  bool covers(uint32_t m) const { return (m & ~mask) == value; }
};

}  // namespace

Sop minimize_sop(int vars, const std::vector<uint32_t>& on,
                 const std::vector<uint32_t>& dc) {
  if (vars > 16) throw std::invalid_argument("minimize_sop: too many variables");
  if (on.empty()) return {};
  std::set<Implicant> current;
  for (uint32_t m : on) current.insert({m, 0});
  for (uint32_t m : dc) current.insert({m, 0});
  std::set<Implicant> primes;
  while (!current.empty()) {
    std::set<Implicant> next;
    std::set<Implicant> merged;
    // Group by mask, then combine pairs differing in one unmasked bit.
    std::map<uint32_t, std::vector<Implicant>> by_mask;
    for (const auto& i : current) by_mask[i.mask].push_back(i);
    for (auto& [mask, group] : by_mask) {
      std::set<uint32_t> values;
      for (const auto& i : group) values.insert(i.value);
      for (const auto& i : group)
        for (int b = 0; b < vars; ++b) {
          uint32_t bit = 1u << b;
          if ((mask & bit) || (i.value & bit)) continue;
          if (values.count(i.value | bit)) {
            next.insert({i.value, mask | bit});
            merged.insert(i);
            merged.insert({i.value | bit, mask});
          }
        }
    }
    for (const auto& i : current)
      if (!merged.count(i)) primes.insert(i);
    current = std::move(next);
  }

  // Cover: essential primes first, then the prime covering most remaining.
  std::vector<Implicant> pl(primes.begin(), primes.end());
  std::set<uint32_t> left(on.begin(), on.end());
  std::vector<Implicant> chosen;
  for (uint32_t m : on) {
    const Implicant* only = nullptr;
    int count = 0;
    for (const auto& p : pl)
      if (p.covers(m)) {
        ++count;
        only = &p;
      }
    if (count == 1 &&
        std::find_if(chosen.begin(), chosen.end(), [&](const Implicant& c) {
          return c.value == only->value && c.mask == only->mask;
        }) == chosen.end())
      chosen.push_back(*only);
  }
  for (const auto& c : chosen)
    for (auto it = left.begin(); it != left.end();)
      it = c.covers(*it) ? left.erase(it) : std::next(it);
  while (!left.empty()) {
    const Implicant* best = nullptr;
    size_t best_count = 0;
    for (const auto& p : pl) {
      size_t n = std::count_if(left.begin(), left.end(),
                               [&](uint32_t m) { return p.covers(m); });
      if (n > best_count) {
        best = &p;
        best_count = n;
      }
    }
    chosen.push_back(*best);
    for (auto it = left.begin(); it != left.end();)
      it = best->covers(*it) ? left.erase(it) : std::next(it);
  }

  Sop out;
  for (const auto& c : chosen) {
    Cube cube;
    for (int b = 0; b < vars; ++b)
      if (!(c.mask & (1u << b))) cube.push_back({b, (c.value >> b & 1u) != 0});
    out.push_back(cube);
  }
  std::sort(out.begin(), out.end(), [](const Cube& a, const Cube& b) {
    auto key = [](const Cube& c) {
      std::vector<std::pair<int, bool>> k;
      for (auto l : c) k.emplace_back(l.var, !l.positive);
      return k;
    };
    return key(a) < key(b);
  });
  return out;
}

bool eval_sop(const Sop& f, const std::vector<bool>& values) {
  for (const auto& c : f) {
    bool all = true;
    for (auto l : c)
      if (values[l.var] != l.positive) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

}  // namespace gosyn
