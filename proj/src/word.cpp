#include "infnc/word.hpp"

#include <algorithm>
#include <sstream>

#include "infnc/error.hpp"

namespace infnc {

Letter parse_letter(const std::string& text) {
  std::string digits = text;
  bool t = false;
  if (!digits.empty() && digits.back() == 't') {
    t = true;
    digits.pop_back();
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
    throw Error("bad letter '" + text + "'");
  int g = std::stoi(digits);
  if (g < 1) throw Error("generator index must be >= 1: '" + text + "'");
  return {g, t};
}

std::string format_letter(const Letter& l) {
  return std::to_string(l.generator) + (l.transposed ? "t" : "");
}

Word parse_word(const std::string& text) {
  std::istringstream in(text);
  Word w;
  std::string token;
  while (in >> token) w.push_back(parse_letter(token));
  return w;
}

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += format_letter(w[i]);
  }
  return out;
}

Word transpose(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.transposed = !l.transposed;
  return out;
}

namespace {

Word least_rotation(const Word& w) {
  Word best = w;
  Word r = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (r < best) best = r;
  }
  return best;
}

Word clear_symmetric(Word w, const CanonicalForm& form) {
  for (auto& l : w)
    if (form.symmetric.count(l.generator)) l.transposed = false;
  return w;
}

}  // namespace

Word canonicalize(const Word& w, const CanonicalForm& form) {
  Word a = clear_symmetric(w, form);
  Word best = form.tracial ? least_rotation(a) : a;
  if (form.transpose_symmetric) {
    Word b = clear_symmetric(transpose(a), form);
    Word cand = form.tracial ? least_rotation(b) : b;
    if (cand < best) best = cand;
  }
  return best;
}

std::vector<Letter> alphabet(const std::set<int>& generators, const CanonicalForm& form) {
  std::vector<Letter> letters;
  for (int g : generators) {
    letters.push_back({g, false});
    if (!form.symmetric.count(g)) letters.push_back({g, true});
  }
  return letters;
}

std::vector<Word> canonical_words(const std::set<int>& generators, const CanonicalForm& form,
                                  int max_length) {
  auto letters = alphabet(generators, form);
  std::vector<Word> out;
  std::vector<Word> level{Word{}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const auto& w : level)
      for (const auto& l : letters) {
        Word x = w;
        x.push_back(l);
        next.push_back(std::move(x));
      }
    for (const auto& w : next)
      if (canonicalize(w, form) == w) out.push_back(w);
    level = std::move(next);
  }
  return out;
}

}  // namespace infnc
