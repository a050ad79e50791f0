#include "powpres/tietze.hpp"

#include <algorithm>

#include "powpres/errors.hpp"

namespace powpres {

namespace {

// Renumbers letters after deleting generator `gone`: indices above it shift
// down. The word must not use `gone`.
Word shift_down(const Word& w, uint32_t gone) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter l : w.letters()) {
    uint32_t g = letter_gen(l);
    out.push_back(make_letter(g > gone ? g - 1 : g, letter_sign(l)));
  }
  return Word::from_letters(out);
}

Json words_to_json(const std::vector<Word>& ws, const Presentation& ctx) {
  Json a = Json::array();
  for (const auto& w : ws) a.push_back(serialize_word(w, ctx));
  return a;
}

}  // namespace

bool cyclic_match(const Word& a, const Word& b) {
  const Word bi = b.inverse();
  for (const Word* cand : {&b, &bi}) {
    size_t n = std::max<size_t>(cand->size(), 1);
    for (size_t k = 0; k < n; ++k)
      if (rotate(*cand, k) == a) return true;
  }
  return false;
}

Presentation tietze_add_generator(const Presentation& p, const std::string& name,
                                  const Word& definition) {
  if (p.generator_index(name))
    throw precondition_error("generator name '" + name + "' already in use");
  if (definition.min_alphabet() > p.generator_count())
    throw precondition_error("definition uses a generator outside the alphabet");

  std::vector<std::string> names = p.generator_names();
  names.push_back(name);
  const uint32_t g = static_cast<uint32_t>(p.generator_count());
  std::vector<Word> relators = p.relators();
  relators.push_back(Word::generator(g, -1) * definition);

  Provenance prov = p.provenance();
  prov.push_back({"add_generator",
                  Json{{"name", name}, {"definition", serialize_word(definition, p)}}});
  return Presentation::create(std::move(names), std::move(relators), std::move(prov));
}

Presentation tietze_remove_generator(const Presentation& p, const std::string& gen,
                                     const Word& replacement) {
  auto idx = p.generator_index(gen);
  if (!idx) throw precondition_error("no generator named '" + gen + "'");
  const uint32_t g = *idx;
  for (Letter l : replacement.letters())
    if (letter_gen(l) == g)
      throw precondition_error("replacement word uses the removed generator '" + gen + "'");
  if (replacement.min_alphabet() > p.generator_count())
    throw precondition_error("replacement uses a generator outside the alphabet");

  const Word target = Word::generator(g, -1) * replacement;
  size_t found = p.relator_count();
  for (size_t i = 0; i < p.relator_count(); ++i) {
    if (cyclic_match(target, p.relators()[i])) {
      found = i;
      break;
    }
  }
  if (found == p.relator_count())
    throw precondition_error("no relator matches '" + gen +
                             "'^-1 * replacement up to rotation and inversion");

  // Substitution into the shrunken alphabet: gen -> replacement (renumbered),
  // everything else -> itself (renumbered).
  std::vector<Word> images;
  images.reserve(p.generator_count());
  for (uint32_t i = 0; i < p.generator_count(); ++i) {
    if (i == g)
      images.push_back(shift_down(replacement, g));
    else
      images.push_back(Word::generator(i > g ? i - 1 : i));
  }

  std::vector<std::string> names = p.generator_names();
  names.erase(names.begin() + g);
  std::vector<Word> relators;
  relators.reserve(p.relator_count() - 1);
  for (size_t i = 0; i < p.relator_count(); ++i) {
    if (i == found) continue;
    relators.push_back(substitute(p.relators()[i], images));
  }

  Provenance prov = p.provenance();
  prov.push_back({"remove_generator",
                  Json{{"name", gen}, {"replacement", serialize_word(replacement, p)}}});
  return Presentation::create(std::move(names), std::move(relators), std::move(prov));
}

Presentation tietze_add_relator(const Presentation& p, const Word& relator,
                                const RelatorDerivation& derivation) {
  Word acc;
  for (const auto& t : derivation.terms) {
    if (t.relator_index >= p.relator_count())
      throw precondition_error("derivation references relator " +
                               std::to_string(t.relator_index) + " of " +
                               std::to_string(p.relator_count()));
    const Word& r = p.relators()[t.relator_index];
    acc = acc * t.conjugator.inverse() * r.pow(t.exponent) * t.conjugator;
  }
  if (!(acc == relator))
    throw precondition_error("derivation does not reduce to the proposed relator");

  std::vector<Word> relators = p.relators();
  relators.push_back(relator);
  Json terms = Json::array();
  for (const auto& t : derivation.terms)
    terms.push_back(Json{{"relator", t.relator_index},
                         {"exponent", t.exponent},
                         {"conjugator", serialize_word(t.conjugator, p)}});
  Provenance prov = p.provenance();
  prov.push_back({"add_relator",
                  Json{{"word", serialize_word(relator, p)}, {"terms", std::move(terms)}}});
  return Presentation::create(p.generator_names(), std::move(relators), std::move(prov));
}

Presentation tietze_remove_relator(const Presentation& p, size_t index) {
  if (index >= p.relator_count())
    throw precondition_error("relator index out of range");
  const Word& r = p.relators()[index];
  bool redundant = r.empty();
  for (size_t j = 0; !redundant && j < p.relator_count(); ++j)
    if (j != index && cyclic_match(r, p.relators()[j])) redundant = true;
  if (!redundant)
    throw precondition_error(
        "relator is not syntactically redundant (not empty, no duplicate up to "
        "rotation and inversion)");

  std::vector<Word> relators = p.relators();
  relators.erase(relators.begin() + index);
  Provenance prov = p.provenance();
  prov.push_back({"remove_relator", Json{{"index", index}}});
  return Presentation::create(p.generator_names(), std::move(relators), std::move(prov));
}

Presentation kill_generators(const Presentation& p, const std::vector<Word>& words) {
  std::vector<Word> relators = p.relators();
  for (const auto& w : words) {
    if (w.min_alphabet() > p.generator_count())
      throw precondition_error("kill word uses a generator outside the alphabet");
    relators.push_back(w);
  }
  Provenance prov = p.provenance();
  prov.push_back({"kill", Json{{"words", words_to_json(words, p)}}});
  return Presentation::create(p.generator_names(), std::move(relators), std::move(prov));
}

Presentation rewrite_to_generating_set(const Presentation& p,
                                       const GeneratingSetRewrite& rw) {
  const size_t kappa = rw.names.size();
  if (kappa == 0) throw precondition_error("rewrite needs at least one new generator");
  if (rw.new_in_old.size() != kappa)
    throw precondition_error("rewrite: names and new_in_old sizes differ");
  if (rw.old_in_new.size() != p.generator_count())
    throw precondition_error("rewrite: old_in_new must cover the old alphabet");
  for (const auto& w : rw.new_in_old)
    if (w.min_alphabet() > p.generator_count())
      throw precondition_error("rewrite: a defining word leaves the old alphabet");
  for (const auto& u : rw.old_in_new)
    if (u.min_alphabet() > kappa)
      throw precondition_error("rewrite: an expression leaves the new alphabet");

  std::vector<Word> relators;
  relators.reserve(p.relator_count() + kappa);
  for (const auto& r : p.relators()) relators.push_back(substitute(r, rw.old_in_new));
  for (size_t j = 0; j < kappa; ++j)
    relators.push_back(Word::generator(static_cast<uint32_t>(j), -1) *
                       substitute(rw.new_in_old[j], rw.old_in_new));

  // Serialization context for the new-alphabet words.
  Presentation skeleton = Presentation::create(rw.names, {}, {});
  Provenance prov = p.provenance();
  prov.push_back({"rewrite_generating_set",
                  Json{{"names", rw.names},
                       {"new_in_old", words_to_json(rw.new_in_old, p)},
                       {"old_in_new", words_to_json(rw.old_in_new, skeleton)},
                       {"verified", rw.verified}}});
  return Presentation::create(rw.names, std::move(relators), std::move(prov));
}

CoordinateDictionary rewrite_dictionary(const CoordinateDictionary& d,
                                        const std::vector<Word>& old_in_new) {
  CoordinateDictionary out;
  out.num_factors = d.num_factors;
  out.base_rank = d.base_rank;
  out.entries.reserve(d.entries.size());
  for (const auto& e : d.entries) out.entries.push_back(substitute(e, old_in_new));
  return out;
}

std::optional<RemovalCandidate> removal_candidate(const Presentation& p, size_t index) {
  if (index >= p.relator_count()) return std::nullopt;
  const Word& r = p.relators()[index];
  std::vector<uint32_t> count(p.generator_count(), 0);
  for (Letter l : r.letters()) ++count[letter_gen(l)];
  for (uint32_t g = 0; g < p.generator_count(); ++g) {
    if (count[g] != 1) continue;
    size_t pos = 0;
    while (letter_gen(r.at(pos)) != g) ++pos;
    Word rot = rotate(r, pos);  // starts with the unique occurrence of g
    std::vector<Letter> tail(rot.letters().begin() + 1, rot.letters().end());
    Word c = Word::from_letters(tail);
    Word repl = letter_sign(rot.at(0)) > 0 ? c.inverse() : c;
    return RemovalCandidate{p.generator_name(g), repl};
  }
  return std::nullopt;
}

}  // namespace powpres
