#include "powpres/presentation.hpp"

#include <algorithm>
#include <unordered_set>

#include "powpres/errors.hpp"

namespace powpres {

namespace {

bool valid_name(const std::string& n) {
  if (n.empty() || n[0] < 'a' || n[0] > 'z') return false;
  return std::all_of(n.begin(), n.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_';
  });
}

}  // namespace

Presentation Presentation::create(std::vector<std::string> generator_names,
                                  std::vector<Word> relators, Provenance provenance) {
  std::unordered_set<std::string> seen;
  for (const auto& n : generator_names) {
    if (!valid_name(n))
      throw precondition_error("invalid generator name '" + n +
                               "' (want [a-z][A-Za-z0-9_]*)");
    if (!seen.insert(n).second)
      throw precondition_error("duplicate generator name '" + n + "'");
  }
  const uint32_t k = static_cast<uint32_t>(generator_names.size());
  for (const auto& r : relators) {
    if (r.min_alphabet() > k)
      throw precondition_error("relator uses a generator outside the alphabet");
  }
  Presentation p;
  p.names_ = std::move(generator_names);
  p.relators_ = std::move(relators);
  p.provenance_ = std::move(provenance);
  return p;
}

std::optional<uint32_t> Presentation::generator_index(const std::string& name) const {
  for (uint32_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

Presentation Presentation::with_provenance(Provenance p) const {
  Presentation q = *this;
  q.provenance_ = std::move(p);
  return q;
}

CoordinateDictionary CoordinateDictionary::identity(uint32_t base_rank) {
  CoordinateDictionary d;
  d.num_factors = 1;
  d.base_rank = base_rank;
  d.entries.reserve(base_rank);
  for (uint32_t s = 0; s < base_rank; ++s) d.entries.push_back(Word::generator(s));
  return d;
}

void validate_witness_shape(const Presentation& p, const CommutatorWitnesses& w) {
  if (w.words.size() != p.generator_count())
    throw witness_error("witness list length " + std::to_string(w.words.size()) +
                        " does not match alphabet size " +
                        std::to_string(p.generator_count()));
  const uint32_t k = static_cast<uint32_t>(p.generator_count());
  for (uint32_t i = 0; i < k; ++i) {
    const auto sums = exponent_sum_vector(w.words[i], k);
    for (long long s : sums)
      if (s != 0)
        throw witness_error("witness for generator '" + p.generator_name(i) +
                            "' has a nonzero exponent sum");
  }
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& taken) {
  auto used = [&taken](const std::string& n) {
    return std::find(taken.begin(), taken.end(), n) != taken.end();
  };
  if (!used(base)) return base;
  for (int i = 2;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!used(cand)) return cand;
  }
}

Presentation naive_product(const Presentation& a, const Presentation& b) {
  std::vector<std::string> names = a.generator_names();
  for (const auto& n : b.generator_names()) names.push_back(fresh_name(n, names));

  const uint32_t ka = static_cast<uint32_t>(a.generator_count());
  std::vector<Word> relators = a.relators();
  for (const auto& r : b.relators()) {
    std::vector<Letter> shifted;
    shifted.reserve(r.size());
    for (Letter l : r.letters())
      shifted.push_back(make_letter(letter_gen(l) + ka, letter_sign(l)));
    relators.push_back(Word::from_letters(shifted));
  }
  for (uint32_t i = 0; i < ka; ++i)
    for (uint32_t j = 0; j < b.generator_count(); ++j)
      relators.push_back(commutator(Word::generator(i), Word::generator(ka + j)));

  Json other;
  other["generators"] = b.generator_names();
  {
    Json rels = Json::array();
    for (const auto& r : b.relators()) rels.push_back(serialize_word(r, b));
    other["relators"] = std::move(rels);
  }
  Provenance prov = a.provenance();
  prov.push_back({"naive_product", Json{{"other", std::move(other)}}});
  return Presentation::create(std::move(names), std::move(relators), std::move(prov));
}

NaivePower naive_power(const Presentation& base, uint32_t m) {
  if (m == 0) throw precondition_error("naive_power: m must be positive");
  const uint32_t k = static_cast<uint32_t>(base.generator_count());

  std::vector<std::string> names;
  if (m == 1) {
    names = base.generator_names();
  } else {
    for (uint32_t j = 1; j <= m; ++j)
      for (uint32_t s = 0; s < k; ++s)
        names.push_back(fresh_name(base.generator_name(s) + "_" + std::to_string(j), names));
  }

  std::vector<Word> relators;
  for (uint32_t j = 0; j < m; ++j) {
    for (const auto& r : base.relators()) {
      std::vector<Letter> shifted;
      shifted.reserve(r.size());
      for (Letter l : r.letters())
        shifted.push_back(make_letter(letter_gen(l) + j * k, letter_sign(l)));
      relators.push_back(Word::from_letters(shifted));
    }
  }
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t j = i + 1; j < m; ++j)
      for (uint32_t s = 0; s < k; ++s)
        for (uint32_t t = 0; t < k; ++t)
          relators.push_back(
              commutator(Word::generator(i * k + s), Word::generator(j * k + t)));

  Json root;
  root["base_generators"] = base.generator_names();
  {
    Json rels = Json::array();
    for (const auto& r : base.relators()) rels.push_back(serialize_word(r, base));
    root["base_relators"] = std::move(rels);
  }
  root["m"] = m;
  Provenance prov{{"naive_power", std::move(root)}};

  NaivePower out;
  out.pres = Presentation::create(std::move(names), std::move(relators), std::move(prov));
  out.dict.num_factors = m;
  out.dict.base_rank = k;
  for (uint32_t j = 0; j < m; ++j)
    for (uint32_t s = 0; s < k; ++s)
      out.dict.entries.push_back(Word::generator(j * k + s));
  return out;
}

}  // namespace powpres
