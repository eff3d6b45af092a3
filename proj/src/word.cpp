#include "ncpick/word.hpp"

#include <algorithm>

#include "ncpick/linalg.hpp"

namespace ncpick {

Word::Word(int d, std::vector<int> letters) : d_(d), letters_(std::move(letters)) {
  if (d < 1) throw DimensionError("word alphabet size must be at least 1");
  for (int l : letters_)
    if (l < 1 || l > d)
      throw DimensionError("letter " + std::to_string(l) + " outside 1.." + std::to_string(d));
}

std::string Word::to_string() const {
  if (letters_.empty()) return "()";
  std::string out = "(";
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(letters_[k]);
  }
  return out + ")";
}

Word word_concat(const Word& a, const Word& b) {
  if (a.alphabet() != b.alphabet()) throw DimensionError("word_concat: alphabet mismatch");
  std::vector<int> l = a.letters();
  l.insert(l.end(), b.letters().begin(), b.letters().end());
  return Word(a.alphabet(), std::move(l));
}

Word word_transpose(const Word& a) {
  std::vector<int> l(a.letters().rbegin(), a.letters().rend());
  return Word(a.alphabet(), std::move(l));
}

std::vector<Word> words_of_length(int d, int k) {
  std::vector<Word> out;
  std::vector<int> idx(k, 1);
  while (true) {
    out.emplace_back(d, idx);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == d) idx[pos--] = 1;
    if (pos < 0) break;
    ++idx[pos];
  }
  return out;
}

}  // namespace ncpick
