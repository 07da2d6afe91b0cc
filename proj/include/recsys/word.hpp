#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace recsys {

/// A letter of the alphabet [q] = {0, ..., q-1}.
using Symbol = int;

/// A finite word over [q].
using Word = std::vector<Symbol>;

/// Exact nonnegative counts (words, closed paths, traces).
using BigCount = boost::multiprecision::cpp_int;

/// Raised when an argument lies outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// q^n, throwing DomainError if it does not fit in 64 bits.
std::uint64_t checked_pow(std::uint64_t q, std::size_t n);

/// Base-q value of `w`, most significant symbol first.
std::uint64_t word_index(const Word& w, int q);

/// Inverse of word_index for words of length `len`.
Word index_word(std::uint64_t index, int q, std::size_t len);

/// Text form: digits 0-9, then lowercase letters for 10..35.
std::string format_word(const Word& w);
Word parse_word(std::string_view text);

/// All q^n words of length n in lexicographic order.
std::vector<Word> all_words(int q, std::size_t n);

Word concat(const Word& a, const Word& b);
Word slice(const Word& w, std::size_t from, std::size_t len);

}  // namespace recsys
