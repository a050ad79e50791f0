#pragma once

#include <cstdint>
#include <vector>

namespace powpres {

// A letter is a generator index with a sign, encoded as +-(index+1) so the
// inverse is negation and zero never occurs.
using Letter = int32_t;

constexpr Letter make_letter(uint32_t gen, int sign) {
  return sign >= 0 ? Letter(gen) + 1 : -(Letter(gen) + 1);
}
constexpr uint32_t letter_gen(Letter l) {
  return static_cast<uint32_t>((l < 0 ? -l : l) - 1);
}
constexpr int letter_sign(Letter l) { return l < 0 ? -1 : 1; }
constexpr Letter letter_inverse(Letter l) { return -l; }

// Freely reduced word over an abstract alphabet. Value type: every
// constructor and operation maintains reduction, so adjacent inverse pairs
// never survive construction.
class Word {
 public:
  Word() = default;

  // Free-reduces the raw letter sequence (single stack pass).
  static Word from_letters(const std::vector<Letter>& raw);
  static Word generator(uint32_t gen, int sign = 1);

  size_t size() const { return ls_.size(); }
  bool empty() const { return ls_.empty(); }
  const std::vector<Letter>& letters() const { return ls_; }
  Letter at(size_t i) const { return ls_[i]; }

  Word inverse() const;
  Word operator*(const Word& rhs) const;
  Word pow(int e) const;

  // Smallest alphabet size this word fits in (max generator index + 1).
  uint32_t min_alphabet() const;

  bool operator==(const Word& rhs) const = default;

 private:
  std::vector<Letter> ls_;
  friend Word free_reduce(const std::vector<Letter>&);
};

// The named reduction entry point; from_letters delegates here.
Word free_reduce(const std::vector<Letter>& raw);

// Replaces generator i by images[i] throughout, then reduces. The induced
// map is the free-group homomorphism determined by the images.
// Throws precondition_error if some generator of u has no image.
Word substitute(const Word& u, const std::vector<Word>& images);

// u^-1 v^-1 u v, reduced.
Word commutator(const Word& u, const Word& v);

// Exponent sums per generator over a fixed alphabet size; the image of the
// word under abelianization. Throws precondition_error if the word uses a
// generator outside the alphabet.
std::vector<long long> exponent_sum_vector(const Word& u, uint32_t alphabet_size);

// Conjugacy-class normal helper: strips matching first/last inverse pairs.
// No pipeline move applies this implicitly.
Word cyclically_reduce(const Word& u);

// Rotation by k: letters k..end followed by 0..k. Result is reduced (which
// can shorten the word when the seam cancels).
Word rotate(const Word& u, size_t k);

}  // namespace powpres
