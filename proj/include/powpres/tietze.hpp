#pragma once

#include <optional>

#include "powpres/presentation.hpp"

namespace powpres {

// Elementary and composite Tietze moves. Every function returns a new
// presentation whose provenance extends the input's by one step. Attached
// bookkeeping (dictionaries, witnesses) is rewritten by the caller with the
// helpers at the bottom; the moves themselves only touch the presentation.

// Adds generator `name` (appended to the alphabet) defined by `definition`,
// a word over p's existing alphabet; appends the relator name^-1 *
// definition. Presents an isomorphic group.
Presentation tietze_add_generator(const Presentation& p, const std::string& name,
                                  const Word& definition);

// Removes generator `gen`. p must contain a relator equal, up to free
// reduction, cyclic rotation, and inversion, to gen^-1 * replacement, and
// `replacement` must not use gen. That relator is deleted, every other
// relator has gen replaced by `replacement`, and generator indices above
// gen shift down. Presents an isomorphic group.
Presentation tietze_remove_generator(const Presentation& p, const std::string& gen,
                                     const Word& replacement);

// Certificate for adding a redundant relator: the relator must equal the
// product of the terms c^-1 * r^e * c, freely reduced.
struct RelatorDerivation {
  struct Term {
    size_t relator_index;
    int exponent;
    Word conjugator;
  };
  std::vector<Term> terms;
};

// Appends `relator`, justified by `derivation` (replayed and checked by
// free reduction). Presents an isomorphic group.
Presentation tietze_add_relator(const Presentation& p, const Word& relator,
                                const RelatorDerivation& derivation);

// Removes the relator at `index`; permitted when it is freely empty or some
// other relator matches it up to cyclic rotation and inversion. Presents an
// isomorphic group.
Presentation tietze_remove_relator(const Presentation& p, size_t index);

// Appends the words as relators with no redundancy requirement. This is a
// quotient map, not an isomorphism move: the result presents the original
// group modulo the normal closure of the words. Relator count grows by
// exactly words.size().
Presentation kill_generators(const Presentation& p, const std::vector<Word>& words);

// Composite move replacing the whole generating set.
//   names / new_in_old (size κ): the new generators and their defining
//     words over the old alphabet;
//   old_in_new (size = old generator count): each old generator as a word
//     over the new alphabet.
// Output: κ generators; relators = every old relator substituted through
// old_in_new, then κ defining relators names[j]^-1 * (new_in_old[j]
// substituted through old_in_new). Relator count grows by exactly κ.
// Presents the same group precisely when each old_in_new word really
// equals its generator in the group — the caller owns that premise (the
// pipeline records it as verified or not).
struct GeneratingSetRewrite {
  std::vector<std::string> names;
  std::vector<Word> new_in_old;
  std::vector<Word> old_in_new;
  bool verified = false;  // expressions were checked against an oracle
};
Presentation rewrite_to_generating_set(const Presentation& p,
                                       const GeneratingSetRewrite& rw);

// Applies the same substitution to attached bookkeeping.
CoordinateDictionary rewrite_dictionary(const CoordinateDictionary& d,
                                        const std::vector<Word>& old_in_new);

// True when some rotation of b or of b^-1 freely equals a (relators are
// unoriented cyclic words for matching purposes).
bool cyclic_match(const Word& a, const Word& b);

// If the relator at `index` uses some generator exactly once, returns that
// generator and the replacement word obtained by solving the relator for
// it (ready to feed tietze_remove_generator). Prefers the lowest such
// generator index.
struct RemovalCandidate {
  std::string gen;
  Word replacement;
};
std::optional<RemovalCandidate> removal_candidate(const Presentation& p, size_t index);

}  // namespace powpres
