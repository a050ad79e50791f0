#include "powpres/fixtures.hpp"

#include "powpres/errors.hpp"
#include "powpres/tietze.hpp"

namespace powpres {

namespace {

CommutatorWitnesses parse_witnesses(const Presentation& p,
                                    const std::vector<std::string>& texts) {
  CommutatorWitnesses w;
  w.words.reserve(texts.size());
  for (const auto& t : texts) w.words.push_back(parse_word(t, p));
  return w;
}

Fixture make_a5() {
  Fixture f;
  f.name = "a5";
  f.pres = parse_presentation("gens: a b\nrel: a^2\nrel: b^3\nrel: (ab)^5\n")
               .with_provenance({{"builtin_example", Json{{"name", "a5"}}}});
  f.witnesses = parse_witnesses(f.pres, {"ABabAbaBAbABBabbABBaba",
                                         "ABabABAbbaBAbaBa"});
  f.images = {Permutation::from_images({1, 0, 3, 2, 4}),
              Permutation::from_images({2, 1, 4, 3, 0})};
  f.superperfect = false;  // the double cover is a proper extension
  f.order = 60;
  return f;
}

Fixture make_sl25() {
  Fixture f;
  f.name = "sl25";
  f.pres = parse_presentation("gens: a b\nrel: a^3 b^-5\nrel: b^5 (ab)^-2\n")
               .with_provenance({{"builtin_example", Json{{"name", "sl25"}}}});
  f.witnesses = parse_witnesses(f.pres, {"aaBAbABaBBAbbb", "aBAbbABa"});
  // Action on the 24 nonzero vectors of the plane over the 5-element field.
  f.images = {Permutation::from_images({20, 16, 12, 8,  0,  21, 17, 13,
                                        4,  1,  22, 18, 9,  5,  2,  23,
                                        14, 10, 6,  3,  19, 15, 11, 7}),
              Permutation::from_images({7,  10, 18, 21, 3,  6,  9,  17,
                                        20, 2,  5,  13, 16, 19, 1,  4,
                                        12, 15, 23, 0,  8,  11, 14, 22})};
  f.superperfect = true;
  f.order = 120;
  return f;
}

}  // namespace

const std::vector<Fixture>& builtin_examples() {
  static const std::vector<Fixture> all = {make_a5(), make_sl25()};
  return all;
}

const Fixture& fixture_by_name(const std::string& name) {
  for (const auto& f : builtin_examples())
    if (f.name == name) return f;
  throw precondition_error("unknown fixture: " + name);
}

Fixture bp_fixture(uint64_t p) {
  if (p == 0) throw precondition_error("bp fixture needs p >= 1");
  if (p > 1000000) throw precondition_error("bp fixture: p too large to materialize");
  const int ip = static_cast<int>(p);
  const Word a = Word::generator(0), b = Word::generator(1);
  const Word al = Word::generator(2), be = Word::generator(3);

  std::vector<Word> relators = {
      b * a.pow(ip) * b.inverse() * a.pow(-(ip + 1)),
      be * al.pow(ip) * be.inverse() * al.pow(-(ip + 1)),
      commutator(b * a * b.inverse(), a) * be.inverse(),
      commutator(be * al * be.inverse(), al) * b.inverse(),
  };

  Fixture f;
  f.name = "bp" + std::to_string(p);
  f.pres = Presentation::create(
      {"a", "b", "al", "be"}, std::move(relators),
      {{"bp", Json{{"p", p}}}});
  f.witnesses.words = {
      commutator(b.inverse(), a.pow(-ip)),
      commutator(be * al * be.inverse(), al),
      commutator(be.inverse(), al.pow(-ip)),
      commutator(b * a * b.inverse(), a),
  };
  f.superperfect = true;  // curated: built to have trivial H1 and H2
  f.order = 0;
  return f;
}

Fixture bp_reduced_fixture(uint64_t p) {
  Fixture four = bp_fixture(p);
  const Word a = Word::generator(0), b = Word::generator(1);
  const Word replacement = commutator(b * a * b.inverse(), a);

  Fixture f;
  f.name = four.name + "r";
  f.pres = tietze_remove_generator(four.pres, "be", replacement);
  std::vector<Word> sub = {Word::generator(0), Word::generator(1),
                           Word::generator(2), replacement};
  f.witnesses.words = {substitute(four.witnesses.words[0], sub),
                       substitute(four.witnesses.words[1], sub),
                       substitute(four.witnesses.words[2], sub)};
  f.superperfect = true;
  f.order = 0;
  return f;
}

Fixture synthetic_fixture(uint32_t k, uint32_t l) {
  if (k == 0) throw precondition_error("synthetic fixture needs k >= 1");
  if (l < k)
    throw precondition_error(
        "synthetic fixture needs l >= k (one defining relator per generator)");

  std::vector<std::string> names;
  names.reserve(k);
  for (uint32_t i = 1; i <= k; ++i) names.push_back("x" + std::to_string(i));

  std::vector<Word> relators;
  relators.reserve(l);
  for (uint32_t i = 0; i < k; ++i)
    relators.push_back(Word::generator(i, -1) *
                       commutator(Word::generator(i), Word::generator((i + 1) % k)));
  for (uint32_t i = k; i < l; ++i)
    relators.push_back(
        commutator(Word::generator(i % k), Word::generator((i + 1) % k)));

  Fixture f;
  f.name = "synthetic_" + std::to_string(k) + "_" + std::to_string(l);
  f.pres = Presentation::create(std::move(names), std::move(relators),
                                {{"synthetic", Json{{"k", k}, {"l", l}}}});
  for (uint32_t i = 0; i < k; ++i)
    f.witnesses.words.push_back(
        commutator(Word::generator(i), Word::generator((i + 1) % k)));
  f.superperfect = false;  // shape-only fixture: no homology claim attached
  f.order = 0;
  return f;
}

}  // namespace powpres
