#pragma once

// Words in the free semigroup on d letters. Letters are 1-based and stored
// in the order they are written, so the word (2, 1) evaluates to Z2 * Z1.

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace ncpick {

class Word {
 public:
  Word() = default;
  /// Throws DimensionError if d < 1 or a letter lies outside 1..d.
  Word(int d, std::vector<int> letters);

  static Word empty(int d) { return Word(d, {}); }

  int alphabet() const { return d_; }
  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_empty() const { return letters_.empty(); }
  int operator[](std::size_t k) const { return letters_[k]; }

  std::string to_string() const;

  auto operator<=>(const Word&) const = default;

 private:
  int d_ = 1;
  std::vector<int> letters_;
};

/// a followed by b. Throws DimensionError on alphabet mismatch.
Word word_concat(const Word& a, const Word& b);

/// Letters reversed.
Word word_transpose(const Word& a);

/// All words of length exactly k over d letters, in lexicographic order.
std::vector<Word> words_of_length(int d, int k);

}  // namespace ncpick
