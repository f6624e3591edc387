#include "ratsub/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "ratsub/errors.hpp"

namespace ratsub {

namespace {

struct Line {
  int number = 0;
  std::string key;
  std::string value;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    size_t a = raw.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = raw.find_last_not_of(" \t\r");
    std::string text = raw.substr(a, b - a + 1);
    size_t colon = text.find(':');
    if (colon == std::string::npos) fail(number, "expected `key: value`");
    std::string key = text.substr(0, colon);
    std::string value = text.substr(colon + 1);
    size_t va = value.find_first_not_of(" \t");
    value = va == std::string::npos ? "" : value.substr(va);
    out.push_back({number, key, value});
  }
  return out;
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

long long int_token(const Line& l, const std::string& t) {
  try {
    size_t pos = 0;
    long long v = std::stoll(t, &pos);
    if (pos != t.size()) fail(l.number, "bad integer: " + t);
    return v;
  } catch (const std::logic_error&) {
    fail(l.number, "bad integer: " + t);
  }
}

Group parse_finite(const std::vector<Line>& lines) {
  long long order = -1, identity = -1;
  std::vector<std::vector<int>> table;
  std::vector<std::pair<std::string, int>> generators;
  int table_line = 0;
  for (const Line& l : lines) {
    if (l.key == "kind") continue;
    if (l.key == "order") {
      order = int_token(l, l.value);
    } else if (l.key == "identity") {
      identity = int_token(l, l.value);
    } else if (l.key == "table") {
      table_line = l.number;
      std::vector<int> row;
      for (const auto& t : tokens_of(l.value))
        row.push_back(static_cast<int>(int_token(l, t)));
      table.push_back(std::move(row));
    } else if (l.key == "generators") {
      for (const auto& t : tokens_of(l.value)) {
        size_t eq = t.find('=');
        if (eq == std::string::npos)
          fail(l.number, "generators entries look like name=index");
        generators.emplace_back(
            t.substr(0, eq), static_cast<int>(int_token(l, t.substr(eq + 1))));
      }
    } else {
      fail(l.number, "unknown key for a finite group: " + l.key);
    }
  }
  if (order < 1) throw InputError("finite group needs `order`");
  if (identity < 0) identity = 0;
  if (static_cast<long long>(table.size()) != order)
    fail(table_line ? table_line : 1, "expected `order` table rows");
  try {
    return Group(FiniteGroup(std::move(table), static_cast<int>(identity),
                             std::move(generators)));
  } catch (const InputError& e) {
    throw InputError(std::string("finite group: ") + e.what());
  }
}

Group parse_vc(const std::vector<Line>& lines) {
  long long n = -1;
  std::vector<int> phi;
  std::vector<std::vector<std::int64_t>> c;
  std::vector<std::vector<int>> tau;
  std::vector<std::vector<bool>> seen;
  for (const Line& l : lines) {
    if (l.key == "kind") continue;
    if (l.key == "n") {
      n = int_token(l, l.value);
      if (n < 1) fail(l.number, "n must be >= 1");
      c.assign(n, std::vector<std::int64_t>(n, 0));
      tau.assign(n, std::vector<int>(n, 1));
      seen.assign(n, std::vector<bool>(n, false));
    } else if (l.key == "phi") {
      for (const auto& t : tokens_of(l.value)) {
        if (t == "+")
          phi.push_back(1);
        else if (t == "-")
          phi.push_back(-1);
        else
          fail(l.number, "phi entries are + or -");
      }
    } else if (l.key == "cocycle") {
      if (n < 1) fail(l.number, "`n` must come before cocycle lines");
      auto ts = tokens_of(l.value);
      if (ts.size() != 4) fail(l.number, "cocycle lines look like `i j c tau`");
      long long i = int_token(l, ts[0]), j = int_token(l, ts[1]);
      if (i < 1 || i > n || j < 1 || j > n)
        fail(l.number, "cocycle indices out of range");
      c[i - 1][j - 1] = int_token(l, ts[2]);
      tau[i - 1][j - 1] = static_cast<int>(int_token(l, ts[3]));
      seen[i - 1][j - 1] = true;
    } else {
      fail(l.number, "unknown key for a virtually cyclic group: " + l.key);
    }
  }
  if (n < 1) throw InputError("virtually cyclic group needs `n`");
  if (static_cast<long long>(phi.size()) != n)
    throw InputError("phi needs exactly n entries");
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j)
      if (!seen[i][j])
        throw InputError("missing cocycle line for i=" + std::to_string(i + 1) +
                         " j=" + std::to_string(j + 1));
  try {
    return Group(VirtuallyCyclicGroup(static_cast<int>(n), std::move(phi),
                                      std::move(c), std::move(tau)));
  } catch (const InputError& e) {
    throw InputError(std::string("virtually cyclic group: ") + e.what());
  }
}

}  // namespace

Group parse_group(std::istream& in) {
  auto lines = read_lines(in);
  std::string kind;
  for (const Line& l : lines)
    if (l.key == "kind") kind = l.value;
  if (kind.empty()) throw InputError("group file needs a `kind` line");
  if (kind == "free") {
    long long rank = -1;
    std::vector<std::string> letters;
    for (const Line& l : lines) {
      if (l.key == "kind") continue;
      if (l.key == "rank")
        rank = int_token(l, l.value);
      else if (l.key == "letters")
        letters = tokens_of(l.value);
      else
        fail(l.number, "unknown key for a free group: " + l.key);
    }
    if (rank < 1) throw InputError("free group needs rank >= 1");
    if (letters.empty())
      return Group(FreeGroup(static_cast<int>(rank)));
    return Group(FreeGroup(static_cast<int>(rank), Alphabet(letters)));
  }
  if (kind == "finite") return parse_finite(lines);
  if (kind == "virtually_cyclic") return parse_vc(lines);
  throw InputError("unknown group kind: " + kind);
}

Group parse_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open group file: " + path);
  return parse_group(in);
}

Nfa parse_automaton(std::istream& in, const Alphabet& expected) {
  auto lines = read_lines(in);
  Nfa out{expected, 0, {}, {}, {}};
  bool have_states = false;
  for (const Line& l : lines) {
    if (l.key == "kind") continue;  // tolerated, checked by coset parsers
    if (l.key == "alphabet") {
      auto names = tokens_of(l.value);
      Alphabet declared(names);
      if (!(declared == expected))
        fail(l.number, "alphabet does not match the group's alphabet");
    } else if (l.key == "states") {
      out.state_count = static_cast<int>(int_token(l, l.value));
      have_states = true;
    } else if (l.key == "start") {
      for (const auto& t : tokens_of(l.value))
        out.start_states.insert(static_cast<int>(int_token(l, t)));
    } else if (l.key == "accept") {
      for (const auto& t : tokens_of(l.value))
        out.accept_states.insert(static_cast<int>(int_token(l, t)));
    } else if (l.key == "trans") {
      auto ts = tokens_of(l.value);
      if (ts.size() != 3) fail(l.number, "trans lines look like `from label to`");
      int from = static_cast<int>(int_token(l, ts[0]));
      int to = static_cast<int>(int_token(l, ts[2]));
      int label = kEpsilon;
      if (ts[1] != "eps") {
        auto letter = expected.find(ts[1]);
        if (!letter) fail(l.number, "unknown label: " + ts[1]);
        label = static_cast<int>(*letter);
      }
      out.transitions.insert({from, label, to});
    } else {
      fail(l.number, "unknown key for an automaton: " + l.key);
    }
  }
  if (!have_states) throw InputError("automaton file needs a `states` line");
  try {
    out.check();
  } catch (const InputError& e) {
    throw InputError(std::string("automaton: ") + e.what());
  }
  return out;
}

Nfa parse_automaton_file(const std::string& path, const Alphabet& expected) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open automaton file: " + path);
  return parse_automaton(in, expected);
}

namespace {

std::string join_ints(const std::set<int>& xs) {
  std::string out;
  for (int x : xs) {
    if (!out.empty()) out += ' ';
    out += std::to_string(x);
  }
  return out;
}

std::string alphabet_line(const Alphabet& a) {
  std::string out = "alphabet:";
  for (int k = 0; k < a.rank(); ++k) out += " " + a.positive_name(k);
  return out;
}

}  // namespace

std::string write_automaton(const Nfa& a) {
  std::ostringstream out;
  out << alphabet_line(a.alphabet) << "\n";
  out << "states: " << a.state_count << "\n";
  out << "start: " << join_ints(a.start_states) << "\n";
  out << "accept: " << join_ints(a.accept_states) << "\n";
  for (const auto& t : a.transitions)
    out << "trans: " << t.from << " "
        << (t.label == kEpsilon ? std::string("eps")
                                : a.alphabet.name(static_cast<Letter>(t.label)))
        << " " << t.to << "\n";
  return out.str();
}

std::string write_coset_action(const RecognizableSubset& r) {
  std::ostringstream out;
  const Alphabet& a = r.action.group().alphabet();
  out << "kind: coset_action\n";
  out << alphabet_line(a) << "\n";
  out << "states: " << r.action.coset_count() << "\n";
  out << "start: " << r.action.base() << "\n";
  out << "accept: " << join_ints(r.accepted) << "\n";
  for (int c = 0; c < r.action.coset_count(); ++c)
    for (int k = 0; k < a.rank(); ++k)
      out << "trans: " << c << " " << a.positive_name(k) << " "
          << r.action.act(c, Alphabet::positive(k)) << "\n";
  return out.str();
}

RecognizableSubset parse_coset_action(std::istream& in, const Group& backend) {
  auto lines = read_lines(in);
  std::string kind;
  for (const Line& l : lines)
    if (l.key == "kind") kind = l.value;
  if (kind != "coset_action")
    throw InputError("expected a `kind: coset_action` header");
  // reuse the automaton parser on the same lines
  std::ostringstream buffer;
  for (const Line& l : lines)
    if (l.key != "kind") buffer << l.key << ": " << l.value << "\n";
  std::istringstream body(buffer.str());
  Nfa raw = parse_automaton(body, backend.alphabet());
  if (raw.start_states.size() != 1)
    throw InputError("coset action needs exactly one base coset");
  int count = raw.state_count;
  std::vector<std::vector<int>> pos(backend.alphabet().rank(),
                                    std::vector<int>(count, -1));
  for (const auto& t : raw.transitions) {
    if (t.label == kEpsilon)
      throw InputError("coset actions have no epsilon transitions");
    Letter a = static_cast<Letter>(t.label);
    if (!Alphabet::is_positive(a))
      throw InputError("coset actions list positive letters only");
    int k = Alphabet::base_index(a);
    if (pos[k][t.from] >= 0 && pos[k][t.from] != t.to)
      throw InputError("coset action has conflicting transitions");
    pos[k][t.from] = t.to;
  }
  for (const auto& row : pos)
    for (int v : row)
      if (v < 0) throw InputError("coset action is missing transitions");
  CosetAction action(backend, count, *raw.start_states.begin(), std::move(pos));
  return RecognizableSubset{std::move(action), raw.accept_states};
}

RecognizableSubset parse_coset_action_file(const std::string& path,
                                           const Group& backend) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open coset action file: " + path);
  return parse_coset_action(in, backend);
}

}  // namespace ratsub
