#include "ratsub/alphabet.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ratsub/errors.hpp"

namespace ratsub {

Alphabet::Alphabet(std::vector<std::string> positive_names)
    : names_(std::move(positive_names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("alphabet letter with empty name");
    if (n == "1" || n == "eps") throw InputError("reserved letter name: " + n);
    if (n.size() > 3 && n.substr(n.size() - 3) == "^-1")
      throw InputError("letter name may not end in ^-1: " + n);
    if (!seen.insert(n).second)
      throw InputError("duplicate letter name: " + n);
  }
}

std::string Alphabet::name(Letter a) const {
  if (!contains(a)) throw InputError("letter index out of range");
  const std::string& base = names_[base_index(a)];
  return is_positive(a) ? base : base + "^-1";
}

std::optional<Letter> Alphabet::find(std::string_view token) const {
  bool inverse = false;
  if (token.size() > 3 && token.substr(token.size() - 3) == "^-1") {
    inverse = true;
    token.remove_suffix(3);
  }
  for (int k = 0; k < rank(); ++k) {
    if (names_[k] == token) {
      Letter a = positive(k);
      return inverse ? inv(a) : a;
    }
  }
  return std::nullopt;
}

Alphabet Alphabet::free_names(int rank) {
  std::vector<std::string> names;
  names.reserve(rank);
  if (rank <= 26) {
    for (int k = 0; k < rank; ++k) names.push_back(std::string(1, char('a' + k)));
  } else {
    for (int k = 0; k < rank; ++k) names.push_back("g" + std::to_string(k + 1));
  }
  return Alphabet(std::move(names));
}

Alphabet Alphabet::fresh_names(std::string_view stem, int count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (int k = 0; k < count; ++k)
    names.push_back(std::string(stem) + std::to_string(k + 1));
  return Alphabet(std::move(names));
}

void check_word(const Alphabet& a, const Word& w) {
  for (Letter x : w)
    if (!a.contains(x))
      throw InputError("letter not in alphabet (index " + std::to_string(x) + ")");
}

ReducedWord free_reduce(const Alphabet& a, const Word& w) {
  check_word(a, w);
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && out.back() == Alphabet::inv(x))
      out.pop_back();
    else
      out.push_back(x);
  }
  return ReducedWord{std::move(out)};
}

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back(Alphabet::inv(*it));
  return out;
}

Word concat_words(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string format_word(const Alphabet& a, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += a.name(w[i]);
  }
  return out;
}

Word parse_word(const Alphabet& a, std::string_view text) {
  Word out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    auto l = a.find(token);
    if (!l) throw InputError("unknown letter: " + token);
    out.push_back(*l);
  }
  return out;
}

}  // namespace ratsub
