#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ratsub {

// A letter of an involutive alphabet. Positive letter number k is encoded as
// 2k and its formal inverse as 2k+1, so inv() is a fixpoint-free involution
// and the natural order is a < a^-1 < b < b^-1 < ...
using Letter = std::uint32_t;

class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> positive_names);

  int rank() const { return static_cast<int>(names_.size()); }
  int letter_count() const { return 2 * rank(); }

  static Letter positive(int k) { return static_cast<Letter>(2 * k); }
  static Letter inv(Letter a) { return a ^ 1u; }
  static bool is_positive(Letter a) { return (a & 1u) == 0; }
  static int base_index(Letter a) { return static_cast<int>(a >> 1); }

  bool contains(Letter a) const {
    return a < static_cast<Letter>(letter_count());
  }
  const std::string& positive_name(int k) const { return names_[k]; }
  std::string name(Letter a) const;
  // Accepts both "a" and "a^-1" spellings.
  std::optional<Letter> find(std::string_view token) const;

  bool operator==(const Alphabet&) const = default;

  // Canonical names for a rank-r free group: a..z for r <= 26, else g1..gr.
  static Alphabet free_names(int rank);
  // stem1..stemN, e.g. fresh basis letters x1..xk.
  static Alphabet fresh_names(std::string_view stem, int count);

private:
  std::vector<std::string> names_;
};

using Word = std::vector<Letter>;

// A word with no factor a·inv(a). Only free_reduce produces these.
struct ReducedWord {
  Word letters;
  auto operator<=>(const ReducedWord&) const = default;
  bool empty() const { return letters.empty(); }
  size_t size() const { return letters.size(); }
};

// Cancels all aa^-1 factors; the result represents the same element of the
// free group on the alphabet. Throws InputError on letters outside the
// alphabet.
ReducedWord free_reduce(const Alphabet& a, const Word& w);

Word inverse_word(const Word& w);
Word concat_words(const Word& a, const Word& b);

// Length first, then letter index left to right.
bool shortlex_less(const Word& a, const Word& b);

void check_word(const Alphabet& a, const Word& w);

// "a b^-1" with a single space; the empty word prints as "1".
std::string format_word(const Alphabet& a, const Word& w);
// Whitespace-separated tokens; "1" contributes nothing. Throws InputError.
Word parse_word(const Alphabet& a, std::string_view text);

}  // namespace ratsub
