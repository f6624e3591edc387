#include "ratsub/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "ratsub/errors.hpp"
#include "ratsub/io.hpp"
#include "ratsub/machines.hpp"
#include "ratsub/nerode.hpp"
#include "ratsub/oracle.hpp"
#include "ratsub/rational.hpp"
#include "ratsub/recognizable.hpp"
#include "ratsub/semilinear.hpp"
#include "ratsub/stallings.hpp"
#include "ratsub/structure.hpp"
#include "ratsub/wordproblem.hpp"

namespace ratsub {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kPreconditionError = 3;
constexpr int kInternalError = 4;

struct Emitter {
  std::ostream& out;
  bool json = false;

  void item(const std::string& kind, const std::string& value) {
    if (json) {
      nlohmann::json j{{"kind", kind}, {"value", value}};
      out << j.dump() << "\n";
    } else {
      out << value << "\n";
    }
  }
  // multi-line payloads (automata, actions) go out line by line
  void block(const std::string& kind, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) item(kind, line);
  }
};

std::vector<Word> parse_generators(const Alphabet& a, const std::string& text) {
  std::vector<Word> out;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ',')) out.push_back(parse_word(a, part));
  return out;
}

// reduce may run without a group file: letters are inferred from the word
Alphabet infer_alphabet(const std::string& text) {
  std::vector<std::string> names;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    if (token.size() > 3 && token.substr(token.size() - 3) == "^-1")
      token.resize(token.size() - 3);
    if (std::find(names.begin(), names.end(), token) == names.end())
      names.push_back(token);
  }
  return Alphabet(names);
}

VCElement parse_vc_element(const std::string& text) {
  std::string cleaned;
  for (char c : text)
    cleaned += (c == '(' || c == ')' || c == ',') ? ' ' : c;
  std::istringstream in(cleaned);
  long long z;
  int klass;
  if (!(in >> z >> klass))
    throw InputError("element looks like `z i`, e.g. `3 2`");
  return VCElement{z, klass};
}

std::set<std::pair<long long, int>> parse_accepted_pairs(const std::string& text) {
  // pairs `z,i` separated by spaces; a bare residue means class 1
  std::set<std::pair<long long, int>> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    size_t comma = token.find(',');
    try {
      if (comma == std::string::npos) {
        out.insert({std::stoll(token), 1});
      } else {
        out.insert({std::stoll(token.substr(0, comma)),
                    std::stoi(token.substr(comma + 1))});
      }
    } catch (const std::logic_error&) {
      throw InputError("bad accepted entry: " + token);
    }
  }
  return out;
}

RecognizableSubset parse_rec_operand(const std::string& operand, const Group& g) {
  if (operand.rfind("mod:", 0) == 0) {
    size_t second = operand.find(':', 4);
    if (second == std::string::npos)
      throw InputError("modulus operands look like mod:M:z,i z,i ...");
    long long m = 0;
    try {
      m = std::stoll(operand.substr(4, second - 4));
    } catch (const std::logic_error&) {
      throw InputError("bad modulus in operand: " + operand);
    }
    std::string entries = operand.substr(second + 1);
    for (char& c : entries)
      if (c == ';') c = ' ';
    return from_modulus(g, m, parse_accepted_pairs(entries));
  }
  return parse_coset_action_file(operand, g);
}

struct CommonArgs {
  std::string group_file;
  std::string nfa_file;
  std::string word_text;
  std::string subgroup_text;
};

Group need_group(const CommonArgs& c) {
  if (c.group_file.empty()) throw InputError("this command needs --group");
  return parse_group_file(c.group_file);
}

int dispatch(const std::string& command, const CommonArgs& c,
             const std::string& machine, const std::string& element_text,
             long long modulus, const std::string& op, const std::string& left,
             const std::string& right, int k, int radius, Emitter& emit) {
  if (command == "reduce") {
    Alphabet a = c.group_file.empty() ? infer_alphabet(c.word_text)
                                      : need_group(c).alphabet();
    ReducedWord r = free_reduce(a, parse_word(a, c.word_text));
    emit.item("reduced", format_word(a, r.letters));
    return kOk;
  }

  if (command == "eval") {
    Group g = need_group(c);
    Element e = g.eval(parse_word(g.alphabet(), c.word_text));
    emit.item("element", g.format_element(e));
    return kOk;
  }

  if (command == "validate") {
    if (!c.group_file.empty()) {
      Group g = parse_group_file(c.group_file);
      emit.item("validate", "group ok");
      if (!c.nfa_file.empty()) {
        parse_automaton_file(c.nfa_file, g.alphabet());
        emit.item("validate", "automaton ok");
      }
    } else if (!c.nfa_file.empty()) {
      throw InputError("validating an automaton needs --group for its alphabet");
    } else {
      throw InputError("nothing to validate; pass --group and/or --nfa");
    }
    return kOk;
  }

  if (command == "stallings" || command == "index" || command == "member") {
    Group g = need_group(c);
    StallingsGraph h =
        StallingsGraph::fold(g.free(), parse_generators(g.alphabet(), c.subgroup_text));
    if (command == "stallings") {
      emit.block("stallings", write_automaton(h.loops_nfa()));
      return kOk;
    }
    if (command == "index") {
      auto idx = h.index();
      emit.item("index", idx ? std::to_string(*idx) : "infinite");
      return kOk;
    }
    bool yes = h.member(parse_word(g.alphabet(), c.word_text));
    emit.item("member", yes ? "yes" : "no");
    return yes ? kOk : kNegative;
  }

  if (command == "rat-member") {
    Group g = need_group(c);
    RationalSubset x{g, parse_automaton_file(c.nfa_file, g.alphabet())};
    bool yes = rat_member(x, parse_word(g.alphabet(), c.word_text));
    emit.item("rat-member", yes ? "yes" : "no");
    return yes ? kOk : kNegative;
  }

  if (command == "decompose" || command == "recompose") {
    Group g = need_group(c);
    RationalSubset x{g, parse_automaton_file(c.nfa_file, g.alphabet())};
    Decomposition d = [&]() -> Decomposition {
      if (!c.subgroup_text.empty()) {
        StallingsGraph h = StallingsGraph::fold(
            g.free(), parse_generators(g.alphabet(), c.subgroup_text));
        return decompose(x, h);
      }
      if (modulus >= 1) return decompose(x, modulus);
      throw InputError("pass --subgroup (free) or --modulus (virtually cyclic)");
    }();
    if (command == "recompose") {
      emit.block("recomposed", write_automaton(recompose(d).nfa));
      return kOk;
    }
    for (size_t i = 0; i < d.transversal.size(); ++i) {
      emit.item("transversal", format_word(g.alphabet(), d.transversal[i]));
      if (d.modulus)
        emit.item("component", d.semilinear_components[i].to_string());
      else
        emit.block("component", write_automaton(d.rational_components[i].nfa));
    }
    return kOk;
  }

  if (command == "rewrite") {
    Group g = need_group(c);
    RationalSubset x{g, parse_automaton_file(c.nfa_file, g.alphabet())};
    StallingsGraph h = StallingsGraph::fold(
        g.free(), parse_generators(g.alphabet(), c.subgroup_text));
    std::vector<ReducedWord> basis = h.basis();
    RationalSubset y = rewrite_into_subgroup(x, h);
    for (size_t i = 0; i < basis.size(); ++i)
      emit.item("basis", y.group.alphabet().positive_name(static_cast<int>(i)) +
                             " = " + format_word(g.alphabet(), basis[i].letters));
    emit.block("rewritten", write_automaton(y.nfa));
    return kOk;
  }

  if (command == "rec-op") {
    Group g = need_group(c);
    if (op.empty()) throw InputError("rec-op needs --op union|intersect|complement");
    RecognizableSubset l = parse_rec_operand(left, g);
    RecognizableSubset result = [&] {
      if (op == "complement") return rec_complement(l);
      RecognizableSubset r = parse_rec_operand(right, g);
      if (op == "union") return rec_union(l, r);
      if (op == "intersect") return rec_intersect(l, r);
      throw InputError("unknown --op: " + op);
    }();
    emit.block("rec", write_coset_action(result));
    return kOk;
  }

  if (command == "wp-accept") {
    Group g = need_group(c);
    Word w = parse_word(g.alphabet(), c.word_text);
    bool accepted;
    if (machine == "dfa") {
      Dfa d = wp_dfa(g);
      int s = d.start;
      emit.item("trace", "state " + std::to_string(s));
      for (Letter a : w) {
        s = d.delta[s][a];
        emit.item("trace", g.alphabet().name(a) + " -> state " + std::to_string(s));
      }
      accepted = d.accept_states.contains(s);
    } else if (machine == "stack") {
      StackAcceptor m = wp_stack_acceptor(g);
      Word stack;
      emit.item("trace", "stack height 0");
      for (Letter a : w) {
        if (!stack.empty() && stack.back() == Alphabet::inv(a))
          stack.pop_back();
        else
          stack.push_back(a);
        emit.item("trace", g.alphabet().name(a) + " -> stack height " +
                               std::to_string(stack.size()));
      }
      accepted = stack.empty();
    } else if (machine == "oca") {
      OneCounterAutomaton m = wp_oca(g);
      accepted = oca_run(m, w);
      for (size_t i = 1; i <= w.size(); ++i) {
        Word prefix(w.begin(), w.begin() + i);
        emit.item("trace", g.alphabet().name(w[i - 1]) + " -> prefix " +
                               (oca_run(m, prefix) ? "accepted" : "pending"));
      }
    } else {
      throw InputError("--machine must be dfa, stack or oca");
    }
    emit.item("wp", accepted ? "accept" : "reject");
    return accepted ? kOk : kNegative;
  }

  if (command == "conj-class") {
    Group g = need_group(c);
    VCElement e = parse_vc_element(element_text);
    ConjugacyClassResult r = conjugacy_class(g, e);
    if (r.is_finite()) {
      std::string values;
      for (const VCElement& x : *r.finite_class) {
        if (!values.empty()) values += " ";
        values += g.format_element(Element{x});
      }
      emit.item("conjugacy-class", "finite: " + values);
    } else {
      emit.item("conjugacy-class", "cosets of 2Z, modulus-2 action:");
      emit.block("conjugacy-class", write_coset_action(*r.coset_class));
    }
    return kOk;
  }

  if (command == "epi-check") {
    Group g = need_group(c);
    RationalSubset x{g, parse_automaton_file(c.nfa_file, g.alphabet())};
    bool yes = epi_check(x);
    emit.item("epi", yes ? "yes" : "no");
    return yes ? kOk : kNegative;
  }

  if (command == "epi-transfer") {
    Group g = need_group(c);
    RationalSubset x{g, parse_automaton_file(c.nfa_file, g.alphabet())};
    if (modulus < 1) throw InputError("epi-transfer needs --modulus");
    RationalSubset y = epi_transfer(x, modulus);
    emit.item("note", "generator t below stands for t^" + std::to_string(modulus) +
                          " of the ambient group");
    emit.block("transferred", write_automaton(y.nfa));
    emit.item("image", z_image(y).to_string());
    return kOk;
  }

  if (command == "nerode") {
    Group g = need_group(c);
    MembershipOracle oracle = [&](const Word& w) {
      return g.is_identity(g.eval(w));
    };
    NerodeResult r = nerode_witnesses(oracle, g.alphabet(), k, radius);
    if (!r.success) {
      emit.item("nerode", "failure: radius exhausted (not a disproof)");
      return kNegative;
    }
    for (size_t i = 0; i < r.witnesses.size(); ++i)
      emit.item("witness", format_word(g.alphabet(), r.witnesses[i]));
    for (size_t i = 0; i < r.witnesses.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        emit.item("separator",
                  std::to_string(j) + " " + std::to_string(i) + " " +
                      format_word(g.alphabet(), r.separator[i][j]));
    return kOk;
  }

  throw InputError("unknown command: " + command);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"rational and recognizable subsets of groups"};
  app.require_subcommand(1);

  CommonArgs c;
  std::string machine, element_text, op, left, right;
  long long modulus = 0;
  int k = 3, radius = 8;
  std::string format;

  const std::vector<std::string> names = {
      "reduce",    "eval",      "stallings", "index",     "member",
      "rat-member", "decompose", "recompose", "rewrite",   "rec-op",
      "wp-accept", "conj-class", "epi-check", "epi-transfer", "nerode",
      "validate"};
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--group", c.group_file);
    sub->add_option("--nfa", c.nfa_file);
    sub->add_option("--word", c.word_text);
    sub->add_option("--subgroup", c.subgroup_text);
    sub->add_option("--machine", machine);
    sub->add_option("--element", element_text);
    sub->add_option("--modulus", modulus);
    sub->add_option("--op", op);
    sub->add_option("--left", left);
    sub->add_option("--right", right);
    sub->add_option("--k", k);
    sub->add_option("--radius", radius);
    sub->add_option("--format", format);
  }

  std::vector<std::string> argv_order(args.rbegin(), args.rend());
  try {
    app.parse(argv_order);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  Emitter emit{out, format == "json-lines"};
  try {
    return dispatch(app.get_subcommands().front()->get_name(), c, machine,
                    element_text, modulus, op, left, right, k, radius, emit);
  } catch (const ContainmentError& e) {
    err << "precondition error: " << e.what() << "\n";
    return kPreconditionError;
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << "\n";
    return kPreconditionError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace ratsub
