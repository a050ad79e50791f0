#include "powpres/word.hpp"

#include <algorithm>

#include "powpres/errors.hpp"

namespace powpres {

namespace {

// Appends one letter to a reduced prefix, cancelling against the top.
inline void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == letter_inverse(l)) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

Word free_reduce(const std::vector<Letter>& raw) {
  Word w;
  w.ls_.reserve(raw.size());
  for (Letter l : raw) push_reduced(w.ls_, l);
  return w;
}

Word Word::from_letters(const std::vector<Letter>& raw) { return free_reduce(raw); }

Word Word::generator(uint32_t gen, int sign) {
  return from_letters({make_letter(gen, sign)});
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(ls_.size());
  for (auto it = ls_.rbegin(); it != ls_.rend(); ++it) out.push_back(letter_inverse(*it));
  Word w;
  w.ls_ = std::move(out);  // reversal of a reduced word is reduced
  return w;
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out = ls_;
  out.reserve(ls_.size() + rhs.ls_.size());
  for (Letter l : rhs.ls_) push_reduced(out, l);
  Word w;
  w.ls_ = std::move(out);
  return w;
}

Word Word::pow(int e) const {
  Word base = e < 0 ? inverse() : *this;
  int n = e < 0 ? -e : e;
  Word acc;
  for (int i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

uint32_t Word::min_alphabet() const {
  uint32_t k = 0;
  for (Letter l : ls_) k = std::max(k, letter_gen(l) + 1);
  return k;
}

Word substitute(const Word& u, const std::vector<Word>& images) {
  std::vector<Letter> out;
  for (Letter l : u.letters()) {
    uint32_t g = letter_gen(l);
    if (g >= images.size())
      throw precondition_error("substitute: no image for generator index " + std::to_string(g));
    const Word img = letter_sign(l) > 0 ? images[g] : images[g].inverse();
    for (Letter m : img.letters()) push_reduced(out, m);
  }
  return free_reduce(out);  // out is already reduced; cheap revalidation
}

Word commutator(const Word& u, const Word& v) {
  return u.inverse() * v.inverse() * u * v;
}

std::vector<long long> exponent_sum_vector(const Word& u, uint32_t alphabet_size) {
  std::vector<long long> sums(alphabet_size, 0);
  for (Letter l : u.letters()) {
    uint32_t g = letter_gen(l);
    if (g >= alphabet_size)
      throw precondition_error("exponent_sum_vector: generator index " + std::to_string(g) +
                               " outside alphabet of size " + std::to_string(alphabet_size));
    sums[g] += letter_sign(l);
  }
  return sums;
}

Word cyclically_reduce(const Word& u) {
  const auto& ls = u.letters();
  size_t i = 0, j = ls.size();
  while (j > i + 1 && ls[i] == letter_inverse(ls[j - 1])) {
    ++i;
    --j;
  }
  return Word::from_letters(std::vector<Letter>(ls.begin() + i, ls.begin() + j));
}

Word rotate(const Word& u, size_t k) {
  const auto& ls = u.letters();
  if (ls.empty()) return u;
  k %= ls.size();
  std::vector<Letter> out(ls.begin() + k, ls.end());
  out.insert(out.end(), ls.begin(), ls.begin() + k);
  return Word::from_letters(out);
}

}  // namespace powpres
