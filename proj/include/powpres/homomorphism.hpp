#pragma once

#include <optional>

#include "powpres/presentation.hpp"
#include "powpres/stabilizer_chain.hpp"

namespace powpres {

// A presentation's generators mapped to permutations of a common degree.
// Whether the map respects the relators is a property to check
// (verify_presentation_hom), not an invariant of the type.
struct GroupHom {
  Presentation domain;
  std::vector<Permutation> images;
};

// Image of a word under the hom. Throws on alphabet/degree mismatch.
Permutation evaluate_hom(const GroupHom& h, const Word& w);

struct HomReport {
  bool relators_trivial = true;
  std::vector<size_t> violated_relators;
  BigInt generated_order = 0;
  std::optional<BigInt> expected_order;
  bool order_matches = true;  // meaningful only when expected_order is set

  bool ok() const { return relators_trivial && order_matches; }
};

// Checks every relator maps to the identity and computes the image group's
// order; compares against expected_order when supplied. Failures are
// reported, never thrown.
HomReport verify_presentation_hom(const GroupHom& h,
                                  std::optional<BigInt> expected_order = {});

// The hom from the m-fold naive power presentation onto m disjoint copies
// of the base action: factor j's generators act on points [j*n, (j+1)*n).
GroupHom direct_power_hom(const GroupHom& base, uint32_t m);

// Shortest word over `gens` evaluating to target, by breadth-first search
// over the generated group (generators and inverses as edges). Stops as
// soon as target is found; throws budget_error once more than max_elements
// distinct elements have been enumerated without finding it, and
// factorization_error if the whole group is enumerated and target is
// absent. The result is re-verified by evaluation before returning.
Word factor_element_bfs(const std::vector<Permutation>& gens, const Permutation& target,
                        size_t max_elements = 2'000'000);

// Word over the chain's original generators evaluating to target: the
// chain's transversal-word factorization, re-verified by evaluating against
// `gens` (the generators the chain was built from). Words may be long.
Word factor_element(const StabilizerChain& chain, const std::vector<Permutation>& gens,
                    const Permutation& target);

}  // namespace powpres
