#pragma once

#include <set>
#include <vector>

#include "ratsub/alphabet.hpp"
#include "ratsub/nfa.hpp"

namespace ratsub {

enum class Guard { Zero, Nonzero, Any };

struct OcaTransition {
  int from = 0;
  int label = kEpsilon;  // letter or kEpsilon
  Guard guard = Guard::Any;
  int delta = 0;  // -1, 0 or +1; -1 requires a Nonzero guard
  int to = 0;
  auto operator<=>(const OcaTransition&) const = default;
};

// One-counter automaton: one nonnegative counter with zero tests.
// A word is accepted when some run consumes it, ends in an accept state and
// the counter is zero. The counter can never go below zero: decrements are
// only legal under a Nonzero guard, which check() enforces structurally.
struct OneCounterAutomaton {
  Alphabet alphabet;
  int state_count = 0;
  std::vector<OcaTransition> transitions;
  int start = 0;
  std::set<int> accept_states;

  void check() const;
};

// Simulates all runs over configurations (state, counter). Counters are
// explored up to a bound proportional to the input length and state count,
// which covers every machine this library builds.
bool oca_run(const OneCounterAutomaton& m, const Word& w);

// Deterministic cancellation machine: on each letter, pop if it cancels the
// top of the stack, push otherwise; accept iff the stack ends empty. The
// stack alphabet is the input alphabet.
struct StackAcceptor {
  Alphabet alphabet;
};

bool stack_run(const StackAcceptor& m, const Word& w);

}  // namespace ratsub
