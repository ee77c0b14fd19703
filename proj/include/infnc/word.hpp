#pragma once

#include <set>
#include <string>
#include <vector>

namespace infnc {

struct Letter {
  int generator = 1;
  bool transposed = false;

  Letter transpose() const { return {generator, !transposed}; }
  bool operator==(const Letter&) const = default;
  // Untransposed letters sort first, then by generator.
  bool operator<(const Letter& o) const {
    return transposed != o.transposed ? !transposed : generator < o.generator;
  }
};

// Empty word = unit.
using Word = std::vector<Letter>;

// "2" or "2t"
Letter parse_letter(const std::string& text);
std::string format_letter(const Letter& l);
// Space-separated letters; "" is the empty word.
Word parse_word(const std::string& text);
std::string format_word(const Word& w);

// (x1 ... xn)^t = xn^t ... x1^t
Word transpose(const Word& w);

struct CanonicalForm {
  bool tracial = true;
  bool transpose_symmetric = true;
  std::set<int> symmetric;  // generators with x^t = x
};

// Clears the transpose flag on symmetric generators, then takes the least
// word among the rotations (if tracial) of w and of w^t (if transpose
// symmetric).
Word canonicalize(const Word& w, const CanonicalForm& form);

// All canonical words of length 1..max_length over the given generators.
std::vector<Word> canonical_words(const std::set<int>& generators, const CanonicalForm& form,
                                  int max_length);

// The letters x and, for non-symmetric x, x^t.
std::vector<Letter> alphabet(const std::set<int>& generators, const CanonicalForm& form);

}  // namespace infnc
