#include "ratsub/nerode.hpp"

#include <deque>
#include <optional>

#include "ratsub/errors.hpp"

namespace ratsub {

namespace {

// cap on the exhaustive shortlex suffix enumeration per pair
constexpr long long kSuffixScanBudget = 1 << 14;

std::optional<Word> find_separator(const MembershipOracle& oracle,
                                   const Alphabet& a, const Word& u,
                                   const Word& v, int radius,
                                   const std::vector<Word>& pool) {
  auto separates = [&](const Word& s) {
    return oracle(concat_words(u, s)) != oracle(concat_words(v, s));
  };
  for (const Word& s : pool)
    if (static_cast<int>(s.size()) <= radius && separates(s)) return s;
  for (const Word* w : {&u, &v}) {
    Word s = inverse_word(*w);
    if (static_cast<int>(s.size()) <= radius && separates(s)) return s;
  }
  // bounded exhaustive shortlex scan
  std::deque<Word> queue{Word{}};
  long long budget = kSuffixScanBudget;
  while (!queue.empty() && budget-- > 0) {
    Word s = queue.front();
    queue.pop_front();
    if (separates(s)) return s;
    if (static_cast<int>(s.size()) < radius)
      for (int l = 0; l < a.letter_count(); ++l) {
        Word s2 = s;
        s2.push_back(static_cast<Letter>(l));
        queue.push_back(std::move(s2));
      }
  }
  return std::nullopt;
}

}  // namespace

NerodeResult nerode_witnesses(const MembershipOracle& oracle, const Alphabet& a,
                              int k, int search_radius) {
  if (k < 1) throw InputError("witness count must be at least 1");
  if (search_radius < 0) throw InputError("search radius must be nonnegative");

  NerodeResult res;
  std::vector<Word> pool;  // suffixes that separated some earlier pair
  std::deque<Word> candidates{Word{}};

  while (!candidates.empty() && static_cast<int>(res.witnesses.size()) < k) {
    Word w = candidates.front();
    candidates.pop_front();

    std::vector<Word> seps;
    bool distinct = true;
    for (const Word& u : res.witnesses) {
      auto s = find_separator(oracle, a, w, u, search_radius, pool);
      if (!s) {
        distinct = false;  // merged into u's class; not extended
        break;
      }
      seps.push_back(*s);
    }
    if (!distinct) continue;

    size_t i = res.witnesses.size();
    res.witnesses.push_back(w);
    res.separator.resize(i + 1);
    res.separator[i].resize(i + 1);
    for (size_t j = 0; j < i; ++j) {
      res.separator[j].push_back(seps[j]);
      res.separator[i][j] = seps[j];
      pool.push_back(seps[j]);
    }
    if (static_cast<int>(w.size()) < search_radius)
      for (int l = 0; l < a.letter_count(); ++l) {
        Word w2 = w;
        w2.push_back(static_cast<Letter>(l));
        candidates.push_back(std::move(w2));
      }
  }

  if (static_cast<int>(res.witnesses.size()) < k) {
    res.success = false;
    return res;
  }

  // self-verification: every returned suffix must really separate its pair
  for (size_t i = 0; i < res.witnesses.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      const Word& s = res.separator[i][j];
      if (oracle(concat_words(res.witnesses[i], s)) ==
          oracle(concat_words(res.witnesses[j], s)))
        throw InconsistencyError("nerode separator failed re-verification");
    }
  res.success = true;
  return res;
}

}  // namespace ratsub
