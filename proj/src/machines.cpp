#include "ratsub/machines.hpp"

#include <deque>

#include "ratsub/errors.hpp"

namespace ratsub {

void OneCounterAutomaton::check() const {
  auto check_state = [&](int s) {
    if (s < 0 || s >= state_count)
      throw InputError("OCA state index out of range");
  };
  check_state(start);
  for (int s : accept_states) check_state(s);
  for (const auto& t : transitions) {
    check_state(t.from);
    check_state(t.to);
    if (t.label != kEpsilon && !alphabet.contains(static_cast<Letter>(t.label)))
      throw InputError("OCA transition label out of range");
    if (t.delta < -1 || t.delta > 1)
      throw InputError("OCA counter delta must be -1, 0 or +1");
    if (t.delta == -1 && t.guard != Guard::Nonzero)
      throw InputError("OCA decrement requires a nonzero guard");
  }
}

namespace {

bool guard_holds(Guard g, long long counter) {
  switch (g) {
    case Guard::Zero: return counter == 0;
    case Guard::Nonzero: return counter > 0;
    default: return true;
  }
}

using Config = std::pair<int, long long>;

std::set<Config> closure(const OneCounterAutomaton& m, std::set<Config> configs,
                         long long counter_bound) {
  std::deque<Config> queue(configs.begin(), configs.end());
  while (!queue.empty()) {
    auto [s, c] = queue.front();
    queue.pop_front();
    for (const auto& t : m.transitions) {
      if (t.from != s || t.label != kEpsilon) continue;
      if (!guard_holds(t.guard, c)) continue;
      long long c2 = c + t.delta;
      if (c2 > counter_bound) continue;
      if (configs.insert({t.to, c2}).second) queue.push_back({t.to, c2});
    }
  }
  return configs;
}

}  // namespace

bool oca_run(const OneCounterAutomaton& m, const Word& w) {
  m.check();
  check_word(m.alphabet, w);
  const long long bound =
      (static_cast<long long>(w.size()) + 2) * (m.state_count + 2);
  std::set<Config> cur = closure(m, {{m.start, 0}}, bound);
  for (Letter a : w) {
    std::set<Config> next;
    for (const auto& [s, c] : cur) {
      for (const auto& t : m.transitions) {
        if (t.from != s || t.label != static_cast<int>(a)) continue;
        if (!guard_holds(t.guard, c)) continue;
        long long c2 = c + t.delta;
        if (c2 <= bound) next.insert({t.to, c2});
      }
    }
    cur = closure(m, std::move(next), bound);
    if (cur.empty()) return false;
  }
  for (const auto& [s, c] : cur)
    if (c == 0 && m.accept_states.contains(s)) return true;
  return false;
}

bool stack_run(const StackAcceptor& m, const Word& w) {
  check_word(m.alphabet, w);
  Word stack;
  for (Letter a : w) {
    if (!stack.empty() && stack.back() == Alphabet::inv(a))
      stack.pop_back();
    else
      stack.push_back(a);
  }
  return stack.empty();
}

}  // namespace ratsub
