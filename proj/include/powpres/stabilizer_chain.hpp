#pragma once

#include <optional>

#include "powpres/bigint.hpp"
#include "powpres/permutation.hpp"

namespace powpres {

// Deterministic Schreier–Sims stabilizer chain: base points are first moved
// points, orbits are BFS in generator order, and every Schreier generator
// is verified to sift to the identity, so order() and contains() are exact
// (no randomization anywhere).
class StabilizerChain {
 public:
  struct Options {
    // Carry words (over the ORIGINAL generators) for every transversal
    // element, enabling factor(). Off by default: sift words can get long
    // and most callers only need orders and membership.
    bool track_words = false;
  };

  static StabilizerChain build(const std::vector<Permutation>& gens,
                               const Options& opt);
  static StabilizerChain build(const std::vector<Permutation>& gens) {
    return build(gens, Options());
  }

  uint32_t degree() const { return degree_; }
  BigInt order() const;
  const std::vector<uint32_t>& base() const { return base_; }

  bool contains(const Permutation& g) const;

  // Word over the original generators evaluating to g. Requires
  // track_words; throws factorization_error if g is not in the group.
  Word factor(const Permutation& g) const;

  bool words_tracked() const { return track_words_; }

 private:
  struct Level {
    uint32_t base_point = 0;
    std::vector<Permutation> gens;
    std::vector<Word> gen_words;
    // Orbit of base_point under gens; where[pt] = index into orbit, or -1.
    std::vector<uint32_t> orbit;
    std::vector<int32_t> where;
    std::vector<Permutation> transversal;        // rep maps base_point -> orbit[i]
    std::vector<Word> transversal_words;
  };

  void rebuild_orbit(Level& lv);
  // Sifts g through levels [from..end); returns the residue and the level
  // index where sifting stopped (levels_.size() on full pass). When out_ts
  // is given, records the transversal indices used per level.
  std::pair<Permutation, size_t> sift(const Permutation& g, size_t from,
                                      std::vector<std::pair<size_t, size_t>>* used =
                                          nullptr) const;
  void add_generator(size_t level, const Permutation& g, const Word& w);

  uint32_t degree_ = 0;
  bool track_words_ = false;
  std::vector<uint32_t> base_;
  std::vector<Level> levels_;
};

}  // namespace powpres
