#pragma once

#include <string>
#include <vector>

#include "powpres/bigint.hpp"
#include "powpres/permutation.hpp"
#include "powpres/presentation.hpp"

namespace powpres {

// A curated example group: presentation, verified commutator witnesses, and
// (for the finite ones) faithful permutation images of the generators.
// `superperfect` is curated metadata — the constructions that need trivial
// second homology read the assertion from here; it is not machine-checked.
struct Fixture {
  std::string name;
  Presentation pres;
  CommutatorWitnesses witnesses;
  std::vector<Permutation> images;  // empty when no finite realization ships
  bool superperfect = false;
  BigInt order = 0;  // 0 = infinite or not applicable
};

// a5:   <a,b | a^2, b^3, (ab)^5>, degree-5 images; perfect, H2 nontrivial.
// sl25: <a,b | a^3 b^-5, b^5 (ab)^-2>, degree-24 images (action on the
//       nonzero vectors of a 2-dimensional space over the 5-element field);
//       superperfect.
const std::vector<Fixture>& builtin_examples();
const Fixture& fixture_by_name(const std::string& name);

// The two-relator family B_p (p >= 1), 4 generators a, b, al, be and
// relators b a^p b^-1 a^-(p+1), be al^p be^-1 al^-(p+1), [b a b^-1, a] be^-1,
// [be al be^-1, al] b^-1. Infinite, superperfect by construction.
Fixture bp_fixture(uint64_t p);

// The 3-generator form: the generator be removed via its defining relator.
Fixture bp_reduced_fixture(uint64_t p);

// Shape-only counting fixture with k generators and l >= k relators whose
// abelianization is trivial and whose witnesses are genuine: relator i < k
// is x_i^-1 [x_i, x_{i+1 mod k}]; the remaining l-k relators are commutator
// fillers. No finite realization or H2 claim is attached.
Fixture synthetic_fixture(uint32_t k, uint32_t l);

}  // namespace powpres
