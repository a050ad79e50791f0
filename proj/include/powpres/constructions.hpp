#pragma once

#include <cstdint>
#include <vector>

#include "powpres/presentation.hpp"

namespace powpres {

// Central-extension presentation over the same alphabet: for a perfect group
// given by <X | R> with commutator witnesses c_x, returns
//   <X | x^-1 c_x (x in X),  [r, x] (r in R, x in X)>
// in exactly that order: |X| + |X|*|R| relators. Throws witness_error when a
// witness has a nonzero exponent sum or the witness list does not match the
// alphabet.
Presentation uce_presentation(const Presentation& p, const CommutatorWitnesses& w);

struct SquareOptions {
  // The construction presents GxG only when the input group has trivial
  // second homology; that is not machine-checkable here, so the caller must
  // assert it (fixtures carry the assertion as curated metadata).
  bool asserted_h2_trivial = false;
  // Skip both the abelianization check and the assertion requirement.
  // The result is still a well-formed presentation; what group it presents
  // is then the caller's problem (see the negative-control tests).
  bool bypass_hypothesis_check = false;
};

struct SquareResult {
  Presentation pres;
  CoordinateDictionary dict;
  CommutatorWitnesses witnesses;
};

// Doubling step: from a presentation of H (with witnesses and a coordinate
// dictionary for H = G^m) produce a presentation of HxH = G^(2m) with
// generators x_1..x_k (the old names; diagonal images) and y_1..y_k, and
// relators, in order:
//   r(x) for each old relator, y_i^-1 c_i(y), [x_i y_i^-1, y_j] (i outer).
// Counts: 2k generators, l + k + k^2 relators. The output dictionary covers
// 2m factors: the first m via x |-> y, the last m via x |-> y^-1 x. Output
// witnesses: x_i keeps c_i, y_i gets c_i(y).
SquareResult square_presentation(const Presentation& p, const CommutatorWitnesses& w,
                                 const CoordinateDictionary& dict,
                                 const SquareOptions& opt = {});

// Image of each witness under a generator substitution (a homomorphism of
// free groups, so zero exponent-sum vectors stay zero; re-checked).
CommutatorWitnesses propagate_witnesses(const CommutatorWitnesses& w,
                                        const std::vector<Word>& substitution);

// Generating words for a sub-product of factors, built from the dictionary.
// binary: for each base generator r, the diagonal over the given factors
// plus, for each binary digit position i of the 1-based factor position,
// the partial diagonal over factors whose position has bit i set; count =
// |base_gens| * (1 + ceil(log2(#factors + 1))).
// diagonal_power: the |base_gens| diagonals plus the single word
// prod_j embed_j(g)^j (j = 1-based factor position); count = |base_gens|+1.
std::vector<Word> binary_generating_words_for_factors(
    const CoordinateDictionary& dict, const std::vector<uint32_t>& base_gens,
    const std::vector<uint32_t>& factors);
std::vector<Word> binary_generating_words(const CoordinateDictionary& dict,
                                          const std::vector<uint32_t>& base_gens,
                                          uint32_t m);
std::vector<Word> diagonal_power_generating_words_for_factors(
    const CoordinateDictionary& dict, const std::vector<uint32_t>& base_gens,
    const Word& g, const std::vector<uint32_t>& factors);
std::vector<Word> diagonal_power_generating_words(const CoordinateDictionary& dict,
                                                  const std::vector<uint32_t>& base_gens,
                                                  const Word& g, uint32_t m);

// Closed-form generator/relator counts. Meaning of n per regime:
//   naive:      n = number of factors; (k n, l n + k^2 n(n-1)/2)
//   constant_k: n = doubling stages, G^(2^n); (k, n(k^2+2k)+l)
//   staged_k:   n = doubling stages, n >= 2; (n k, sigma_n k^2 + tau_n k + l)
//               with sigma_n = 1 + n(n-1)(2n-1)/6, tau_n = n^2-1. n = 1 is a
//               domain error: the closed form disagrees with the actual
//               stage-1 pipeline value k^2+2k+l (use constant_k for n = 1).
//   bp_family:  n = doubling stages of the reduced B_p input; (4, 24n-5)
//               for n >= 1, (3, 3) for n = 0.
enum class CountRegime { naive, constant_k, staged_k, bp_family };

struct CountPair {
  uint64_t generators = 0;
  uint64_t relators = 0;
  bool operator==(const CountPair&) const = default;
};

CountPair predicted_counts(uint64_t k, uint64_t l, uint64_t n, CountRegime regime);

// Appends relator powers to w so every exponent sum over p's alphabet
// vanishes, without changing the element of the presented group: solves
// z * E = v (E = exponent matrix, v = w's exponent vector) over the integers
// and returns w * r_1^-z_1 * ... * r_n^-z_n, freely reduced. Solvable
// whenever the presented group is perfect; returns nullopt otherwise.
std::optional<Word> zero_exponent_form(const Presentation& p, const Word& w);

}  // namespace powpres
