#pragma once

#include "powpres/bigint.hpp"
#include "powpres/presentation.hpp"

namespace powpres {

enum class TCStrategy { hlt, felsch };

struct EnumerationLimits {
  size_t max_cosets = 5'000'000;
  TCStrategy strategy = TCStrategy::hlt;
};

enum class TCStatus { success, overflow };

struct TCStats {
  size_t total_defined = 0;  // cosets ever defined (including later-dead ones)
  size_t alive = 0;          // live cosets at exit
  size_t max_alive = 0;
  size_t coincidences = 0;
  size_t lookaheads = 0;
};

// success: `index` is the index of the generated subgroup (the group order
// when subgroup_gens is empty). overflow: limits were hit — inconclusive,
// never "wrong"; stats describe the abandoned table.
struct EnumerationResult {
  TCStatus status = TCStatus::overflow;
  size_t index = 0;
  TCStats stats;
};

// Coset enumeration over the subgroup generated by subgroup_gens. Both
// strategies finish with a verification sweep (every relator re-traced at
// every live coset), so a success result is a certified index. HLT recovers
// from a full table with a lookahead pass plus compaction before giving up;
// Felsch reports overflow directly. Deterministic for fixed inputs.
EnumerationResult todd_coxeter(const Presentation& p,
                               const std::vector<Word>& subgroup_gens = {},
                               const EnumerationLimits& limits = {});

}  // namespace powpres
