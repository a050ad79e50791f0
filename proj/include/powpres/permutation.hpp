#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "powpres/word.hpp"

namespace powpres {

// Permutation of {0..n-1}. Products compose left to right:
// x^(p*q) = (x^p)^q, matching the word-evaluation order used throughout.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(uint32_t degree);  // identity

  // Validates that images is a bijection on {0..n-1}.
  static Permutation from_images(std::vector<uint32_t> images);
  // Cycle input, e.g. {{0,1},{2,3}} on the given degree; points not named
  // are fixed. Validates disjointness and range.
  static Permutation from_cycles(uint32_t degree,
                                 const std::vector<std::vector<uint32_t>>& cycles);

  uint32_t degree() const { return static_cast<uint32_t>(img_.size()); }
  uint32_t apply(uint32_t x) const { return img_[x]; }
  const std::vector<uint32_t>& images() const { return img_; }

  bool is_identity() const;
  // Smallest moved point; degree() when the permutation is the identity.
  uint32_t first_moved_point() const;

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool operator==(const Permutation&) const = default;

  // "(0 1)(2 3)" style; "()" for the identity.
  std::string cycle_string() const;

 private:
  std::vector<uint32_t> img_;
};

// Places p on block `factor` of m blocks of p.degree() points each;
// the other blocks are fixed pointwise.
Permutation embed_block(const Permutation& p, uint32_t m, uint32_t factor);

// p acting simultaneously on all m blocks.
Permutation embed_diagonal(const Permutation& p, uint32_t m);

// Restriction to the first `live` blocks of `blocks` equal blocks; the
// permutation must not move points across the discarded blocks' boundary
// into the kept range (block-diagonal inputs always satisfy this).
Permutation restrict_blocks(const Permutation& p, uint32_t blocks, uint32_t live);

// Image of a word under generator images (letter i^-1 uses the inverse of
// images[i]). Throws precondition_error on alphabet/degree mismatch.
Permutation evaluate_word(const Word& w, const std::vector<Permutation>& images);

}  // namespace powpres
