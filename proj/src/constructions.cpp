#include "powpres/constructions.hpp"

#include <bit>
#include <limits>

#include "powpres/errors.hpp"
#include "powpres/smith.hpp"

namespace powpres {

namespace {

Json words_json(const std::vector<Word>& ws, const Presentation& ctx) {
  Json arr = Json::array();
  for (const auto& w : ws) arr.push_back(serialize_word(w, ctx));
  return arr;
}

// Binary digits needed to write the 1-based positions 1..count.
uint32_t digit_count(uint64_t count) {
  return count == 0 ? 0 : std::bit_width(count);
}

std::vector<uint32_t> iota_factors(uint32_t m) {
  std::vector<uint32_t> f(m);
  for (uint32_t j = 0; j < m; ++j) f[j] = j;
  return f;
}

void check_factor_args(const CoordinateDictionary& dict,
                       const std::vector<uint32_t>& base_gens,
                       const std::vector<uint32_t>& factors) {
  if (factors.empty())
    throw precondition_error("generating words need at least one factor");
  for (uint32_t f : factors)
    if (f >= dict.num_factors)
      throw precondition_error("factor index outside the dictionary");
  for (uint32_t g : base_gens)
    if (g >= dict.base_rank)
      throw precondition_error("base generator index outside the dictionary");
}

}  // namespace

Presentation uce_presentation(const Presentation& p, const CommutatorWitnesses& w) {
  validate_witness_shape(p, w);
  const uint32_t k = static_cast<uint32_t>(p.generator_count());

  std::vector<Word> relators;
  relators.reserve(k + k * p.relator_count());
  for (uint32_t x = 0; x < k; ++x)
    relators.push_back(Word::generator(x, -1) * w.words[x]);
  for (const auto& r : p.relators())
    for (uint32_t x = 0; x < k; ++x)
      relators.push_back(commutator(r, Word::generator(x)));

  Provenance prov = p.provenance();
  prov.push_back({"uce", Json{{"witnesses", words_json(w.words, p)}}});
  return Presentation::create(p.generator_names(), std::move(relators),
                              std::move(prov));
}

SquareResult square_presentation(const Presentation& p, const CommutatorWitnesses& w,
                                 const CoordinateDictionary& dict,
                                 const SquareOptions& opt) {
  validate_witness_shape(p, w);
  const uint32_t k = static_cast<uint32_t>(p.generator_count());
  if (k == 0) throw precondition_error("square construction needs generators");
  if (dict.num_factors == 0 ||
      dict.entries.size() != size_t(dict.num_factors) * dict.base_rank)
    throw precondition_error("square construction: malformed dictionary");
  for (const auto& e : dict.entries)
    if (e.min_alphabet() > k)
      throw precondition_error("square construction: dictionary leaves the alphabet");

  if (!opt.bypass_hypothesis_check) {
    if (!abelianization(p).is_trivial())
      throw hypothesis_error("square construction requires a perfect group (H1 = 0)");
    if (!opt.asserted_h2_trivial)
      throw hypothesis_error(
          "square construction requires trivial second homology; assert it via "
          "SquareOptions or bypass the check explicitly");
  }

  // Alphabet: x block keeps the old names, y block gets fresh y_* names.
  std::vector<std::string> names = p.generator_names();
  for (uint32_t i = 0; i < k; ++i)
    names.push_back(fresh_name("y_" + p.generator_name(i), names));

  std::vector<Word> sub_y(k), sub_yx(k);
  for (uint32_t i = 0; i < k; ++i) {
    sub_y[i] = Word::generator(k + i);
    sub_yx[i] = Word::generator(k + i, -1) * Word::generator(i);
  }

  std::vector<Word> relators;
  relators.reserve(p.relator_count() + k + size_t(k) * k);
  for (const auto& r : p.relators()) relators.push_back(r);
  for (uint32_t i = 0; i < k; ++i)
    relators.push_back(Word::generator(k + i, -1) * substitute(w.words[i], sub_y));
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < k; ++j)
      relators.push_back(commutator(
          Word::generator(i) * Word::generator(k + i, -1), Word::generator(k + j)));

  Provenance prov = p.provenance();
  prov.push_back({"square", Json{{"witnesses", words_json(w.words, p)}}});

  SquareResult out;
  out.pres = Presentation::create(std::move(names), std::move(relators),
                                  std::move(prov));

  out.dict.num_factors = 2 * dict.num_factors;
  out.dict.base_rank = dict.base_rank;
  out.dict.entries.reserve(2 * dict.entries.size());
  for (const auto& e : dict.entries) out.dict.entries.push_back(substitute(e, sub_y));
  for (const auto& e : dict.entries) out.dict.entries.push_back(substitute(e, sub_yx));

  out.witnesses.words.reserve(2 * size_t(k));
  for (uint32_t i = 0; i < k; ++i) out.witnesses.words.push_back(w.words[i]);
  for (uint32_t i = 0; i < k; ++i)
    out.witnesses.words.push_back(substitute(w.words[i], sub_y));
  return out;
}

CommutatorWitnesses propagate_witnesses(const CommutatorWitnesses& w,
                                        const std::vector<Word>& substitution) {
  CommutatorWitnesses out;
  out.words.reserve(w.words.size());
  for (const auto& c : w.words) {
    Word image = substitute(c, substitution);
    for (int64_t s : exponent_sum_vector(image, image.min_alphabet()))
      if (s != 0)
        throw witness_error("propagated witness acquired a nonzero exponent sum");
    out.words.push_back(std::move(image));
  }
  return out;
}

std::vector<Word> binary_generating_words_for_factors(
    const CoordinateDictionary& dict, const std::vector<uint32_t>& base_gens,
    const std::vector<uint32_t>& factors) {
  check_factor_args(dict, base_gens, factors);
  const uint32_t digits = digit_count(factors.size());

  std::vector<Word> out;
  out.reserve(base_gens.size() * (1 + digits));
  for (uint32_t r : base_gens) {
    Word diag;
    for (uint32_t f : factors) diag = diag * dict.entry(f, r);
    out.push_back(std::move(diag));
  }
  for (uint32_t i = 0; i < digits; ++i)
    for (uint32_t r : base_gens) {
      Word partial;
      for (size_t pos = 0; pos < factors.size(); ++pos)
        if (((pos + 1) >> i) & 1) partial = partial * dict.entry(factors[pos], r);
      out.push_back(std::move(partial));
    }
  return out;
}

std::vector<Word> binary_generating_words(const CoordinateDictionary& dict,
                                          const std::vector<uint32_t>& base_gens,
                                          uint32_t m) {
  if (m == 0 || m > dict.num_factors)
    throw precondition_error("binary generating words: dictionary does not cover m factors");
  return binary_generating_words_for_factors(dict, base_gens, iota_factors(m));
}

std::vector<Word> diagonal_power_generating_words_for_factors(
    const CoordinateDictionary& dict, const std::vector<uint32_t>& base_gens,
    const Word& g, const std::vector<uint32_t>& factors) {
  check_factor_args(dict, base_gens, factors);
  if (g.min_alphabet() > dict.base_rank)
    throw precondition_error("diagonal-power element leaves the base alphabet");

  std::vector<Word> out;
  out.reserve(base_gens.size() + 1);
  for (uint32_t r : base_gens) {
    Word diag;
    for (uint32_t f : factors) diag = diag * dict.entry(f, r);
    out.push_back(std::move(diag));
  }
  if (factors.size() > size_t(std::numeric_limits<int>::max()))
    throw precondition_error("diagonal-power words: too many factors");
  Word power;
  for (size_t pos = 0; pos < factors.size(); ++pos) {
    std::vector<Word> row(dict.base_rank);
    for (uint32_t s = 0; s < dict.base_rank; ++s) row[s] = dict.entry(factors[pos], s);
    power = power * substitute(g, row).pow(static_cast<int>(pos + 1));
  }
  out.push_back(std::move(power));
  return out;
}

std::vector<Word> diagonal_power_generating_words(const CoordinateDictionary& dict,
                                                  const std::vector<uint32_t>& base_gens,
                                                  const Word& g, uint32_t m) {
  if (m == 0 || m > dict.num_factors)
    throw precondition_error("diagonal-power words: dictionary does not cover m factors");
  return diagonal_power_generating_words_for_factors(dict, base_gens, g,
                                                     iota_factors(m));
}

CountPair predicted_counts(uint64_t k, uint64_t l, uint64_t n, CountRegime regime) {
  if (k == 0) throw precondition_error("predicted_counts: k must be positive");
  switch (regime) {
    case CountRegime::naive: {
      uint64_t cross = n < 2 ? 0 : k * k * n * (n - 1) / 2;
      return {k * n, l * n + cross};
    }
    case CountRegime::constant_k:
      return {k, n * (k * k + 2 * k) + l};
    case CountRegime::staged_k: {
      if (n == 0) return {k, l};
      if (n == 1)
        throw precondition_error(
            "staged closed form starts at n = 2 (use the constant-k value for n = 1)");
      uint64_t sigma = 1 + n * (n - 1) * (2 * n - 1) / 6;
      uint64_t tau = n * n - 1;
      return {n * k, sigma * k * k + tau * k + l};
    }
    case CountRegime::bp_family:
      return n == 0 ? CountPair{3, 3} : CountPair{4, 24 * n - 5};
  }
  throw precondition_error("predicted_counts: unknown regime");
}

std::optional<Word> zero_exponent_form(const Presentation& p, const Word& w) {
  if (w.min_alphabet() > p.generator_count())
    throw precondition_error("zero_exponent_form: word leaves the alphabet");
  auto e = exponent_sum_vector(w, static_cast<uint32_t>(p.generator_count()));
  bool zero = true;
  for (long long s : e) zero = zero && s == 0;
  if (zero) return w;

  std::vector<BigInt> v(e.begin(), e.end());
  auto z = solve_left(exponent_matrix(p), v);
  if (!z) return std::nullopt;

  constexpr int64_t kMaxPower = 100000;  // keep corrected words materializable
  Word out = w;
  for (size_t i = 0; i < z->size(); ++i) {
    if ((*z)[i] == 0) continue;
    if ((*z)[i] > kMaxPower || (*z)[i] < -kMaxPower) return std::nullopt;
    out = out * p.relators()[i].pow(-(*z)[i].convert_to<int>());
  }
  return out;
}

}  // namespace powpres
