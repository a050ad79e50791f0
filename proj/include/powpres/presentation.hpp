#pragma once

#include <optional>
#include <string>
#include <vector>

#include "powpres/jsonx.hpp"
#include "powpres/word.hpp"

namespace powpres {

// One construction step; the trace of steps is replayable (see replay()).
struct ProvenanceStep {
  std::string op;
  Json args;

  bool operator==(const ProvenanceStep& rhs) const {
    return op == rhs.op && args == rhs.args;
  }
};

using Provenance = std::vector<ProvenanceStep>;

// Finite presentation: ordered alphabet of named generators plus an ordered
// relator list. Immutable value type; the transformation functions in
// tietze.hpp and constructions.hpp return new presentations.
//
// Relators are stored exactly as the defining operation produced them,
// freely reduced but never dropped: a relator that reduces to the empty
// word stays in the list so relator counts match the construction ledger.
class Presentation {
 public:
  // The empty presentation (no generators, no relators); useful as a slot
  // value in aggregates. All real construction goes through create().
  Presentation() = default;

  // Validates: names match [a-z][A-Za-z0-9_]*, pairwise distinct; relators
  // use only declared generators.
  static Presentation create(std::vector<std::string> generator_names,
                             std::vector<Word> relators, Provenance provenance);

  size_t generator_count() const { return names_.size(); }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::string& generator_name(uint32_t i) const { return names_[i]; }
  std::optional<uint32_t> generator_index(const std::string& name) const;

  const std::vector<Word>& relators() const { return relators_; }
  size_t relator_count() const { return relators_.size(); }

  const Provenance& provenance() const { return provenance_; }
  Presentation with_provenance(Provenance p) const;

  // Equality is structural (alphabet + relators); provenance is metadata.
  bool operator==(const Presentation& rhs) const {
    return names_ == rhs.names_ && relators_ == rhs.relators_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Word> relators_;
  Provenance provenance_;
};

// Where each coordinate of a direct power lives: entry(factor, base_gen) is
// a word over the presentation's current alphabet whose evaluation is the
// base generator embedded in that factor. Factors are 0-based internally.
struct CoordinateDictionary {
  uint32_t num_factors = 0;
  uint32_t base_rank = 0;
  std::vector<Word> entries;  // factor-major, num_factors * base_rank

  const Word& entry(uint32_t factor, uint32_t base_gen) const {
    return entries[size_t(factor) * base_rank + base_gen];
  }
  Word& entry(uint32_t factor, uint32_t base_gen) {
    return entries[size_t(factor) * base_rank + base_gen];
  }

  static CoordinateDictionary identity(uint32_t base_rank);

  bool operator==(const CoordinateDictionary&) const = default;
};

// Per-generator witness words: witness[i] lies in the commutator subgroup
// of the free group (all exponent sums zero) and equals generator i in the
// presented group.
struct CommutatorWitnesses {
  std::vector<Word> words;

  bool operator==(const CommutatorWitnesses&) const = default;
};

// Throws witness_error unless every witness has all exponent sums zero over
// the presentation's alphabet and the list length matches the alphabet.
void validate_witness_shape(const Presentation& p, const CommutatorWitnesses& w);

// --- text format -----------------------------------------------------------
//
//   # comment
//   gens: a b
//   rel: a^2
//   rels: [a,b], b^3
//
// Word grammar: NAME | NAME^int | single capital letter (inverse of the
// one-letter generator) | [u,v] | (u) | (u)^int | juxtaposition. The empty
// word is written ().
Presentation parse_presentation(const std::string& text);

// Parses one word over the presentation's alphabet (line/column reported
// relative to line_no/col_base when the text is embedded in a larger file).
Word parse_word(const std::string& text, const Presentation& p, int line_no = 1,
                int col_base = 1);

std::string serialize_presentation(const Presentation& p);
std::string serialize_word(const Word& w, const Presentation& p);

// --- products ---------------------------------------------------------------

// Presentation of A x B: both alphabets (B's names suffixed on collision),
// both relator lists, then all commutators [a_i, b_j]. No hypotheses.
Presentation naive_product(const Presentation& a, const Presentation& b);

// m-fold naive power with factor-major generator names (g_1, ..., g_m per
// base name; m = 1 keeps the names). Returns the coordinate dictionary
// alongside: every entry is the single corresponding generator.
struct NaivePower {
  Presentation pres;
  CoordinateDictionary dict;
};
NaivePower naive_power(const Presentation& base, uint32_t m);

// Re-executes a provenance trace; the result must be bit-identical to the
// presentation that carried it.
Presentation replay(const Provenance& trace);

// Fresh name helpers shared by the construction code: returns base if
// unused, else base with "_2", "_3", ... appended.
std::string fresh_name(const std::string& base, const std::vector<std::string>& taken);

}  // namespace powpres
