#include "finlin/word.hpp"

#include <cctype>
#include <sstream>

#include "finlin/error.hpp"

namespace finlin {

WordModel WordModel::prefix(std::size_t cut) const {
  return WordModel{sig, {letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(cut)}};
}

WordModel WordModel::suffix(std::size_t cut) const {
  return WordModel{sig, {letters.begin() + static_cast<std::ptrdiff_t>(cut), letters.end()}};
}

std::size_t alphabet_size(const Signature& sig) {
  if (sig.size() > kMaxPredicates) {
    throw PreconditionError("too many unary predicates for the letter encoding");
  }
  return std::size_t{1} << sig.size();
}

std::string to_string(const WordModel& w) {
  if (w.empty()) return "<empty>";
  std::string out;
  const auto& names = w.sig.unary_preds();
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (p) out += ';';
    out += '{';
    bool first = true;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if ((w.letters[p] >> i) & 1U) {
        if (!first) out += ',';
        out += names[i];
        first = false;
      }
    }
    out += '}';
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const WordModel& w) {
  return os << to_string(w);
}

WordModel parse_word(std::string_view text, const Signature& sig) {
  WordModel w{sig, {}};
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.substr(i).starts_with("<empty>")) {
    i += 7;
    skip();
    if (i != text.size()) throw SyntaxError("trailing input after <empty>", i);
    return w;
  }
  while (true) {
    skip();
    if (i >= text.size() || text[i] != '{') throw SyntaxError("expected '{'", i);
    ++i;
    Letter letter = 0;
    skip();
    if (i < text.size() && text[i] == '}') {
      ++i;
    } else {
      while (true) {
        skip();
        const std::size_t start = i;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
        const std::string name(text.substr(start, i - start));
        if (name.empty()) throw SyntaxError("expected predicate name", start);
        auto idx = sig.unary_index(name);
        if (!idx) throw UnknownSymbol("unknown predicate '" + name + "' in word");
        letter |= Letter{1} << *idx;
        skip();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == '}') {
          ++i;
          break;
        }
        throw SyntaxError("expected ',' or '}'", i);
      }
    }
    w.letters.push_back(letter);
    skip();
    if (i == text.size()) break;
    if (text[i] != ';') throw SyntaxError("expected ';'", i);
    ++i;
  }
  return w;
}

WordEnumerator::WordEnumerator(Signature sig, std::size_t max_len)
    : word_{std::move(sig), {}}, max_len_(max_len) {
  top_letter_ = static_cast<Letter>(alphabet_size(word_.sig) - 1);
}

bool WordEnumerator::next() {
  if (!started_) {
    started_ = true;
    return true;
  }
  auto& ls = word_.letters;
  // Odometer increment, last letter least significant.
  for (std::size_t i = ls.size(); i-- > 0;) {
    if (ls[i] < top_letter_) {
      ++ls[i];
      return true;
    }
    ls[i] = 0;
  }
  if (ls.size() >= max_len_) return false;
  ls.assign(ls.size() + 1, 0);
  return true;
}

std::vector<WordModel> enumerate_words(const Signature& sig, std::size_t max_len) {
  std::vector<WordModel> out;
  WordEnumerator e(sig, max_len);
  while (e.next()) out.push_back(e.current());
  return out;
}

std::uint64_t count_words(const Signature& sig, std::size_t max_len) {
  const std::uint64_t a = alphabet_size(sig);
  std::uint64_t total = 0, power = 1;
  for (std::size_t n = 0; n <= max_len; ++n) {
    total += power;
    power *= a;
  }
  return total;
}

}  // namespace finlin
