#pragma once

#include <iosfwd>
#include <string>

#include "ratsub/group.hpp"
#include "ratsub/nfa.hpp"
#include "ratsub/recognizable.hpp"

namespace ratsub {

// Line-oriented `key: value` formats. Parse errors carry 1-based line
// numbers. Writers emit deterministic, sorted output.

// kind: free|finite|virtually_cyclic plus kind-specific fields; see README.
Group parse_group(std::istream& in);
Group parse_group_file(const std::string& path);

// alphabet/states/start/accept/trans lines; labels are letter names, their
// ^-1 forms, or eps.
Nfa parse_automaton(std::istream& in, const Alphabet& expected);
Nfa parse_automaton_file(const std::string& path, const Alphabet& expected);

std::string write_automaton(const Nfa& a);
// Same shape with a `kind: coset_action` header; only positive letters are
// emitted, the parser rebuilds the inverse permutations.
std::string write_coset_action(const RecognizableSubset& r);
RecognizableSubset parse_coset_action(std::istream& in, const Group& backend);
RecognizableSubset parse_coset_action_file(const std::string& path,
                                           const Group& backend);

}  // namespace ratsub
