#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "finlin/formula.hpp"

namespace finlin {

// Bit i is set iff unary predicate i of the signature holds at the position.
using Letter = std::uint32_t;

inline constexpr std::size_t kMaxPredicates = 16;

// A finite linear order with unary predicates, i.e. a word over the letter
// alphabet 2^|sig|. Position p precedes position q iff p < q.
struct WordModel {
  Signature sig;
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  // Prefix [0, cut) and suffix [cut, size).
  WordModel prefix(std::size_t cut) const;
  WordModel suffix(std::size_t cut) const;

  friend bool operator==(const WordModel& a, const WordModel& b) {
    return a.letters == b.letters;
  }
};

std::size_t alphabet_size(const Signature& sig);

// `{P,Q};{};{P}`; the empty word is `<empty>`.
std::string to_string(const WordModel& w);
std::ostream& operator<<(std::ostream& os, const WordModel& w);
WordModel parse_word(std::string_view text, const Signature& sig);

// Length-lexicographic enumeration of all words of length <= max_len:
// shorter words first, then lexicographic with letters ordered by bitmask.
class WordEnumerator {
 public:
  WordEnumerator(Signature sig, std::size_t max_len);
  // Advances to the next word; false once exhausted.
  bool next();
  const WordModel& current() const { return word_; }

 private:
  WordModel word_;
  std::size_t max_len_;
  Letter top_letter_;
  bool started_ = false;
};

std::vector<WordModel> enumerate_words(const Signature& sig, std::size_t max_len);

// Number of words of length <= max_len.
std::uint64_t count_words(const Signature& sig, std::size_t max_len);

}  // namespace finlin
