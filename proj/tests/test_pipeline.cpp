#include <doctest.h>

#include <cstdint>

#include "powpres/constructions.hpp"
#include "powpres/errors.hpp"
#include "powpres/fixtures.hpp"
#include "powpres/homomorphism.hpp"
#include "powpres/pipeline.hpp"
#include "powpres/presentation.hpp"
#include "powpres/stabilizer_chain.hpp"
#include "powpres/todd_coxeter.hpp"

using namespace powpres;

namespace {

PipelineOptions opts(GeneratorBoundSchedule s, ReducerKind r, bool assert_h2 = true) {
  PipelineOptions o;
  o.schedule = std::move(s);
  o.reducer = r;
  o.asserted_h2_trivial = assert_h2;
  return o;
}

}  // namespace

TEST_CASE("schedule bounds by kind") {
  const auto dflt = make_schedule(ScheduleKind::binary_default, 2);
  CHECK(dflt.bound(1) == 2);
  CHECK(dflt.bound(2) == 6);   // 2 * (1 + 2)
  CHECK(dflt.bound(4) == 8);   // 2 * (1 + 3)
  CHECK(dflt.bound(7) == 8);
  CHECK(dflt.bound(8) == 10);  // 2 * (1 + 4)
  CHECK_THROWS_AS(dflt.bound(0), precondition_error);

  const auto ck = make_schedule(ScheduleKind::constant_k, 3);
  for (uint64_t m : {1, 2, 16, 1000}) CHECK(ck.bound(m) == 3);

  const auto st = make_schedule(ScheduleKind::staged_k, 2);
  CHECK(st.bound(1) == 2);
  CHECK(st.bound(2) == 2);
  CHECK(st.bound(4) == 4);
  CHECK(st.bound(8) == 6);
  CHECK(st.bound(16) == 8);
  CHECK(st.bound(9) == 8);  // ceil(log2 9) = 4

  const auto dp = make_schedule(ScheduleKind::diagonal_power, 3);
  CHECK(dp.bound(1) == 3);
  CHECK(dp.bound(2) == 4);
  CHECK(dp.bound(64) == 4);

  const auto hall = hall_sl25_schedule();
  CHECK(hall.bound(1) == 2);
  CHECK(hall.bound(19) == 2);
  CHECK(hall.bound(20) == 3);
  CHECK(hall.bound(1024) == 3);
  CHECK(hall.reference_relator_counts.at(16) == 36);
  CHECK(hall.reference_relator_counts.at(1024) == 118);

  const auto sq = make_schedule(ScheduleKind::square_only, 2);
  CHECK(sq.never_rewrite());
  CHECK(sq.bound(1) == 2);
}

TEST_CASE("schedule construction is validated") {
  CHECK_THROWS_AS(make_schedule(ScheduleKind::constant_k, 0), precondition_error);
  CHECK_THROWS_AS(make_schedule(ScheduleKind::hall_sl25, 3), precondition_error);
  CHECK_THROWS_AS(make_schedule(ScheduleKind::user_table, 2), precondition_error);

  const auto table = schedule_from_table(2, {{4, 6}, {16, 4}});
  CHECK(table.bound(1) == 2);   // implicit (1, base_rank) step
  CHECK(table.bound(3) == 2);
  CHECK(table.bound(4) == 6);
  CHECK(table.bound(15) == 6);
  CHECK(table.bound(40) == 4);
  CHECK_THROWS_AS(schedule_from_table(2, {{4, 6}, {4, 5}}), precondition_error);
  CHECK_THROWS_AS(schedule_from_table(2, {{4, 0}}), precondition_error);
  CHECK_THROWS_AS(schedule_from_table(2, {{1, 5}}), precondition_error);
}

TEST_CASE("count simulation matches the closed forms") {
  // constant_k and staged_k reproduce predicted_counts at powers of two.
  for (uint64_t k = 2; k <= 4; ++k) {
    const uint64_t l = k + 1;
    for (uint64_t n = 1; n <= 6; ++n) {
      const uint64_t m = uint64_t(1) << n;
      const auto ck = simulate_counts(k, l, m, make_schedule(ScheduleKind::constant_k, k),
                                      ReducerKind::stub);
      const CountPair want = predicted_counts(k, l, n, CountRegime::constant_k);
      CHECK(ck.back().generators == want.generators);
      CHECK(ck.back().relators == want.relators);

      if (n >= 2) {
        const auto st = simulate_counts(k, l, m, make_schedule(ScheduleKind::staged_k, k),
                                        ReducerKind::stub);
        const CountPair sw = predicted_counts(k, l, n, CountRegime::staged_k);
        CHECK(st.back().generators == sw.generators);
        CHECK(st.back().relators == sw.relators);
      }
    }
  }
  // The reduced two-relator family: 24n - 5 relators on 4 generators.
  for (uint64_t n = 1; n <= 8; ++n) {
    const auto sim = simulate_counts(3, 3, uint64_t(1) << n,
                                     make_schedule(ScheduleKind::diagonal_power, 3),
                                     ReducerKind::diagonal_power);
    const CountPair want = predicted_counts(3, 3, n, CountRegime::bp_family);
    CHECK(sim.back().generators == want.generators);
    CHECK(sim.back().relators == want.relators);
  }
  CHECK_THROWS_AS(simulate_counts(0, 1, 2, make_schedule(ScheduleKind::constant_k, 2),
                                  ReducerKind::stub),
                  precondition_error);
  CHECK_THROWS_AS(simulate_counts(3, 1, 2, make_schedule(ScheduleKind::constant_k, 2),
                                  ReducerKind::stub),
                  precondition_error);
}

TEST_CASE("power 1 echoes the input after validation only") {
  const Fixture& a5 = fixture_by_name("a5");  // perfect but H2 is nontrivial
  auto o = opts(make_schedule(ScheduleKind::binary_default, 2), ReducerKind::binary,
                /*assert_h2=*/false);
  const auto r = power_of_two_presentation(a5.pres, a5.witnesses, 0, o);
  CHECK(r.presentation == a5.pres);
  CHECK(r.predicted_relator_count == 3);
  REQUIRE(r.stage_log.size() == 1);
  CHECK(r.stage_log[0].phase == "input");
  const auto r2 = power_presentation(a5.pres, a5.witnesses, 1, o);
  CHECK(r2.presentation == a5.pres);
}

TEST_CASE("hypothesis guards trip exactly when a square is coming") {
  const Fixture& a5 = fixture_by_name("a5");
  auto o = opts(make_schedule(ScheduleKind::binary_default, 2), ReducerKind::binary,
                /*assert_h2=*/false);
  CHECK_THROWS_AS(power_of_two_presentation(a5.pres, a5.witnesses, 1, o),
                  hypothesis_error);
  o.bypass_hypothesis_check = true;
  CHECK(power_of_two_presentation(a5.pres, a5.witnesses, 1, o)
            .presentation.generator_count() == 4);

  // Imperfect input: refused even with the assertion.
  const Presentation zxz = parse_presentation("gens: a b\nrel: [a,b]\n");
  const CommutatorWitnesses zw{{Word(), Word()}};
  auto o2 = opts(make_schedule(ScheduleKind::binary_default, 2), ReducerKind::binary);
  CHECK_THROWS_AS(power_of_two_presentation(zxz, zw, 1, o2), hypothesis_error);
}

TEST_CASE("input validation: ranks, witnesses, images") {
  const Fixture& sl = fixture_by_name("sl25");
  auto o = opts(make_schedule(ScheduleKind::binary_default, 3), ReducerKind::binary);
  CHECK_THROWS_AS(power_of_two_presentation(sl.pres, sl.witnesses, 1, o),
                  precondition_error);  // schedule rank mismatch

  auto o2 = opts(make_schedule(ScheduleKind::binary_default, 2), ReducerKind::binary);
  o2.base_images = {sl.images[0]};
  CHECK_THROWS_AS(power_of_two_presentation(sl.pres, sl.witnesses, 1, o2),
                  precondition_error);  // image count

  o2.base_images = {sl.images[1], sl.images[0]};  // swapped: relators break
  CHECK_THROWS_AS(power_of_two_presentation(sl.pres, sl.witnesses, 1, o2),
                  precondition_error);

  o2.base_images = sl.images;
  CommutatorWitnesses swapped{{sl.witnesses.words[1], sl.witnesses.words[0]}};
  CHECK_THROWS_AS(power_of_two_presentation(sl.pres, swapped, 1, o2), witness_error);
}

TEST_CASE("default schedule skips rewrites that would not shrink") {
  const Fixture& sl = fixture_by_name("sl25");
  auto o = opts(make_schedule(ScheduleKind::binary_default, 2), ReducerKind::binary);
  o.base_images = sl.images;
  const auto r = power_of_two_presentation(sl.pres, sl.witnesses, 1, o);
  // bound(2) = 6 >= 4 current generators: square only.
  REQUIRE(r.stage_log.size() == 2);
  CHECK(r.stage_log[1].phase == "square");
  CHECK(r.presentation.generator_count() == 4);
  CHECK(r.presentation.relator_count() == 8);
  CHECK(r.predicted_relator_count == 8);
  CHECK(r.report.fully_verified);
  REQUIRE(r.images.has_value());
  // The images certify the construction: relators trivial, order 120^2.
  const HomReport rep = verify_presentation_hom({r.presentation, *r.images},
                                                bigint_pow(BigInt(120), 2));
  CHECK(rep.ok());
  for (uint32_t f = 0; f < 2; ++f)
    for (uint32_t s = 0; s < 2; ++s)
      CHECK(evaluate_word(r.dictionary.entry(f, s), *r.images) ==
            embed_block(sl.images[s], 2, f));
}

TEST_CASE("verified rewrite through the permutation oracle") {
  const Fixture& sl = fixture_by_name("sl25");
  auto o = opts(make_schedule(ScheduleKind::diagonal_power, 2),
                ReducerKind::diagonal_power);
  o.base_images = sl.images;
  const auto r = power_of_two_presentation(sl.pres, sl.witnesses, 1, o);
  REQUIRE(r.stage_log.size() == 3);
  CHECK(r.stage_log[2].phase == "rewrite");
  CHECK(r.presentation.generator_count() == 3);
  CHECK(r.presentation.relator_count() == 11);
  CHECK(r.report.fully_verified);
  REQUIRE(r.images.has_value());
  CHECK(r.images->size() == 3);
  // The three new generators still generate the whole square.
  CHECK(StabilizerChain::build(*r.images).order() == 14400);
  const HomReport rep = verify_presentation_hom({r.presentation, *r.images},
                                                bigint_pow(BigInt(120), 2));
  CHECK(rep.ok());
  // Dictionary still addresses both factors, now over the new alphabet.
  for (uint32_t f = 0; f < 2; ++f)
    for (uint32_t s = 0; s < 2; ++s)
      CHECK(evaluate_word(r.dictionary.entry(f, s), *r.images) ==
            embed_block(sl.images[s], 2, f));
  // Witnesses are genuine: zero sums and correct evaluations.
  validate_witness_shape(r.presentation, r.witnesses);
  for (size_t i = 0; i < 3; ++i)
    CHECK(evaluate_word(r.witnesses.words[i], *r.images) == (*r.images)[i]);
}

TEST_CASE("user expressions are oracle-checked when images exist") {
  const Fixture& sl = fixture_by_name("sl25");
  // Recompute correct expressions offline through a breadth-first search,
  // then hand them to the pipeline as if a user supplied them.
  const SquareResult sq = square_presentation(sl.pres, sl.witnesses,
                                              CoordinateDictionary::identity(2),
                                              {true, false});
  std::vector<Permutation> sq_imgs;
  for (int i = 0; i < 2; ++i) sq_imgs.push_back(embed_diagonal(sl.images[i], 2));
  for (int i = 0; i < 2; ++i) sq_imgs.push_back(embed_block(sl.images[i], 2, 0));
  const auto new_words = diagonal_power_generating_words(
      sq.dict, {0, 1}, Word::generator(0), 2);
  std::vector<Permutation> new_imgs;
  for (const Word& w : new_words) new_imgs.push_back(evaluate_word(w, sq_imgs));
  std::vector<Word> exprs;
  for (const auto& g : sq_imgs) exprs.push_back(factor_element_bfs(new_imgs, g));

  auto o = opts(make_schedule(ScheduleKind::diagonal_power, 2),
                ReducerKind::diagonal_power);
  o.base_images = sl.images;
  o.user_expressions[2] = exprs;
  const auto r = power_of_two_presentation(sl.pres, sl.witnesses, 1, o);
  CHECK(r.report.fully_verified);
  CHECK(r.presentation.generator_count() == 3);

  // A wrong expression is rejected, not absorbed.
  auto bad = o;
  bad.user_expressions[2][0] = Word::generator(1);
  CHECK_THROWS_AS(power_of_two_presentation(sl.pres, sl.witnesses, 1, bad),
                  factorization_error);
  // Wrong arity is a contract violation.
  auto short_list = o;
  short_list.user_expressions[2].pop_back();
  CHECK_THROWS_AS(power_of_two_presentation(sl.pres, sl.witnesses, 1, short_list),
                  precondition_error);
}

TEST_CASE("stub rewrites never claim verification") {
  const Fixture& sl = fixture_by_name("sl25");
  auto o = opts(hall_sl25_schedule(), ReducerKind::stub);
  o.base_images = sl.images;  // images in, but the stub cannot be factored through
  const auto r = power_of_two_presentation(sl.pres, sl.witnesses, 2, o);
  CHECK(!r.report.fully_verified);
  CHECK(!r.images.has_value());
  CHECK(r.presentation.generator_count() == 2);
  CHECK(r.presentation.relator_count() == 18);
  // The log switches to unverified at the first rewrite.
  REQUIRE(r.stage_log.size() == 5);
  CHECK(r.stage_log[1].verified);
  CHECK(!r.stage_log[2].verified);
  bool noted = false;
  for (const auto& n : r.report.notes)
    noted = noted || n.find("placeholder expressions") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("mismatched reducer and schedule are refused") {
  const Fixture& sl = fixture_by_name("sl25");
  // constant_k wants 2 words at m = 2; the binary reducer makes 6.
  auto o = opts(make_schedule(ScheduleKind::constant_k, 2), ReducerKind::binary);
  CHECK_THROWS_AS(power_of_two_presentation(sl.pres, sl.witnesses, 1, o),
                  precondition_error);
}

TEST_CASE("kill stage reaches non-power-of-two targets") {
  const Fixture& sl = fixture_by_name("sl25");

  // m = 3: one dead factor, its coordinates die directly.
  auto o = opts(make_schedule(ScheduleKind::constant_k, 2), ReducerKind::stub);
  const auto r3 = power_presentation(sl.pres, sl.witnesses, 3, o);
  REQUIRE(!r3.stage_log.empty());
  CHECK(r3.stage_log.back().phase == "kill");
  CHECK(r3.stage_log.back().factors == 3);
  CHECK(r3.presentation.relator_count() == 20);  // 18 at m=4, +2 coordinates
  CHECK(r3.dictionary.num_factors == 3);
  CHECK(r3.dictionary.entries.size() == 6);

  // m = 5: three dead factors via the reducer's subset words.
  const auto r5 = power_presentation(sl.pres, sl.witnesses, 5, o);
  CHECK(r5.stage_log.back().phase == "kill");
  CHECK(r5.presentation.relator_count() ==
        r5.stage_log[r5.stage_log.size() - 2].relators + 2);  // stub: k words
  CHECK(r5.dictionary.num_factors == 5);

  // Verified kill with images: the result still models SL(2,5)^3.
  auto ov = opts(make_schedule(ScheduleKind::square_only, 2), ReducerKind::binary);
  ov.base_images = sl.images;
  const auto rv = power_presentation(sl.pres, sl.witnesses, 3, ov);
  CHECK(rv.report.fully_verified);
  REQUIRE(rv.images.has_value());
  CHECK((*rv.images)[0].degree() == 72);
  const HomReport rep = verify_presentation_hom({rv.presentation, *rv.images},
                                                bigint_pow(BigInt(120), 3));
  CHECK(rep.ok());
}

TEST_CASE("stage log always matches the simulation") {
  const Fixture& sl = fixture_by_name("sl25");
  for (uint64_t m : {2, 3, 6, 11, 16}) {
    auto o = opts(hall_sl25_schedule(), ReducerKind::stub);
    const auto r = power_presentation(sl.pres, sl.witnesses, m, o);
    const auto sim = simulate_counts(2, 2, m, o.schedule, o.reducer);
    REQUIRE(r.stage_log.size() == sim.size());
    for (size_t i = 0; i < sim.size(); ++i) {
      CHECK(r.stage_log[i].phase == sim[i].phase);
      CHECK(r.stage_log[i].factors == sim[i].factors);
      CHECK(r.stage_log[i].generators == sim[i].generators);
      CHECK(r.stage_log[i].relators == sim[i].relators);
    }
    CHECK(r.predicted_relator_count == r.presentation.relator_count());
  }
}

TEST_CASE("reference counts are reported with their deviation") {
  const Fixture& sl = fixture_by_name("sl25");
  auto o = opts(hall_sl25_schedule(), ReducerKind::stub);
  const auto r16 = power_presentation(sl.pres, sl.witnesses, 16, o);
  REQUIRE(r16.report.reference_relator_count.has_value());
  CHECK(*r16.report.reference_relator_count == 36);
  REQUIRE(r16.report.reference_deviation.has_value());
  CHECK(*r16.report.reference_deviation == -2);
  CHECK(r16.presentation.relator_count() == 34);
  bool noted = false;
  for (const auto& n : r16.report.notes)
    noted = noted || n.find("reference relator count") != std::string::npos;
  CHECK(noted);

  // No reference entry at other powers: the fields stay empty.
  const auto r8 = power_presentation(sl.pres, sl.witnesses, 8, o);
  CHECK(!r8.report.reference_relator_count.has_value());
  CHECK(!r8.report.reference_deviation.has_value());
}

TEST_CASE("runs without any oracle say so") {
  // No rewrites, so the run stays internally verified — but with no images
  // attached it still cannot call itself fully verified, and says why.
  const Fixture& syn = synthetic_fixture(2, 2);
  auto o = opts(make_schedule(ScheduleKind::square_only, 2), ReducerKind::stub);
  const auto r = power_of_two_presentation(syn.pres, syn.witnesses, 1, o);
  CHECK(!r.report.fully_verified);
  bool noted = false;
  for (const auto& n : r.report.notes)
    noted = noted || n.find("no permutation oracle") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("square-only tower on the superperfect fixture, certified end to end") {
  const Fixture& sl = fixture_by_name("sl25");
  auto o = opts(make_schedule(ScheduleKind::square_only, 2), ReducerKind::binary);
  o.base_images = sl.images;
  const auto r = power_of_two_presentation(sl.pres, sl.witnesses, 2, o);
  CHECK(r.presentation.generator_count() == 8);
  CHECK(r.presentation.relator_count() == 28);
  CHECK(r.report.fully_verified);
  REQUIRE(r.images.has_value());
  CHECK(StabilizerChain::build(*r.images).order() == bigint_pow(BigInt(120), 4));
  // Small enough to certify by coset enumeration as well... at m = 2.
  const auto r1 = power_of_two_presentation(sl.pres, sl.witnesses, 1, o);
  CHECK(todd_coxeter(r1.presentation).index == 14400);
}

TEST_CASE("depth and size guards") {
  const Fixture& sl = fixture_by_name("sl25");
  auto o = opts(make_schedule(ScheduleKind::constant_k, 2), ReducerKind::stub);
  CHECK_THROWS_AS(power_of_two_presentation(sl.pres, sl.witnesses, 31, o),
                  precondition_error);
  CHECK_THROWS_AS(power_presentation(sl.pres, sl.witnesses, 0, o),
                  precondition_error);
}
