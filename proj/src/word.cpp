#include "recsys/word.hpp"

#include <limits>

namespace recsys {

std::uint64_t checked_pow(std::uint64_t q, std::size_t n) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (q != 0 && out > std::numeric_limits<std::uint64_t>::max() / q) {
      throw DomainError("q^n overflows 64 bits");
    }
    out *= q;
  }
  return out;
}

std::uint64_t word_index(const Word& w, int q) {
  std::uint64_t idx = 0;
  for (Symbol s : w) {
    idx = idx * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(s);
  }
  return idx;
}

Word index_word(std::uint64_t index, int q, std::size_t len) {
  Word w(len, 0);
  for (std::size_t i = len; i-- > 0;) {
    w[i] = static_cast<Symbol>(index % static_cast<std::uint64_t>(q));
    index /= static_cast<std::uint64_t>(q);
  }
  return w;
}

std::string format_word(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (Symbol s : w) {
    if (s < 0 || s >= 36) {
      throw DomainError("symbol " + std::to_string(s) + " has no text encoding (needs q <= 36)");
    }
    out.push_back(s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + (s - 10)));
  }
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      w.push_back(c - '0');
    } else if (c >= 'a' && c <= 'z') {
      w.push_back(10 + (c - 'a'));
    } else {
      throw DomainError(std::string("invalid symbol character '") + c + "'");
    }
  }
  return w;
}

std::vector<Word> all_words(int q, std::size_t n) {
  const std::uint64_t count = checked_pow(static_cast<std::uint64_t>(q), n);
  std::vector<Word> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(index_word(i, q, n));
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word slice(const Word& w, std::size_t from, std::size_t len) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from),
              w.begin() + static_cast<std::ptrdiff_t>(from + len));
}

}  // namespace recsys
