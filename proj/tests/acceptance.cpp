// Acceptance gate: nine end-to-end criteria, one [PASS]/[FAIL] line each,
// with wall-clock budgets enforced as part of the verdict. Exit code is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "powpres/bigint.hpp"
#include "powpres/constructions.hpp"
#include "powpres/errors.hpp"
#include "powpres/fixtures.hpp"
#include "powpres/homomorphism.hpp"
#include "powpres/json_io.hpp"
#include "powpres/pipeline.hpp"
#include "powpres/presentation.hpp"
#include "powpres/smith.hpp"
#include "powpres/stabilizer_chain.hpp"
#include "powpres/tietze.hpp"
#include "powpres/todd_coxeter.hpp"
#include "tietze_walk.hpp"

using namespace powpres;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Checker {
  bool ok = true;
  std::ostringstream failures;
  std::ostringstream info;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (failures.tellp() > 0) failures << "; ";
    failures << what;
  }

  template <typename T, typename U>
  void require_eq(const T& got, const U& want, const std::string& what) {
    std::ostringstream msg;
    msg << what << " (got " << got << ", want " << want << ")";
    require(got == static_cast<T>(want), msg.str());
  }

  std::string detail() const {
    if (!ok) return failures.str();
    return info.str();
  }
};

uint64_t ceil_log2(uint64_t m) {
  uint64_t n = 0;
  while ((uint64_t(1) << n) < m) ++n;
  return n;
}

uint64_t tc_order(const Presentation& p, Checker& ck, const std::string& tag) {
  const EnumerationResult res = todd_coxeter(p, {}, {});
  ck.require(res.status == TCStatus::success, tag + ": enumeration did not complete");
  return res.status == TCStatus::success ? res.index : 0;
}

// --- criterion 1: closed-form count exactness --------------------------------

void criterion_counts(Checker& ck) {
  const std::vector<std::pair<uint64_t, uint64_t>> shapes = {
      {2, 2}, {2, 3}, {3, 3}, {4, 4}};
  for (const auto& [k, l] : shapes) {
    const Fixture fx = synthetic_fixture(static_cast<uint32_t>(k),
                                         static_cast<uint32_t>(l));
    const std::string tag = "(k=" + std::to_string(k) + ",l=" + std::to_string(l) + ")";

    for (uint64_t n = 1; n <= 6; ++n) {
      const NaivePower np = naive_power(fx.pres, static_cast<uint32_t>(n));
      const CountPair want = predicted_counts(k, l, n, CountRegime::naive);
      ck.require_eq(np.pres.generator_count(), want.generators,
                    tag + " naive gens at n=" + std::to_string(n));
      ck.require_eq(np.pres.relators().size(), want.relators,
                    tag + " naive rels at n=" + std::to_string(n));
    }

    for (const bool staged : {false, true}) {
      PipelineOptions opt;
      opt.schedule = make_schedule(
          staged ? ScheduleKind::staged_k : ScheduleKind::constant_k, k);
      opt.reducer = ReducerKind::stub;
      opt.asserted_h2_trivial = true;
      const std::string regime = staged ? " staged" : " constant";
      for (uint32_t n = 1; n <= 6; ++n) {
        const PowerPipelineResult r =
            power_of_two_presentation(fx.pres, fx.witnesses, n, opt);
        // The staged closed form starts at n = 2; its stage-1 value coincides
        // with the constant-k one, which is what the pipeline produces.
        const CountPair want =
            (staged && n == 1)
                ? predicted_counts(k, l, 1, CountRegime::constant_k)
                : predicted_counts(k, l, n,
                                   staged ? CountRegime::staged_k
                                          : CountRegime::constant_k);
        const std::string at = tag + regime + " at n=" + std::to_string(n);
        ck.require_eq(r.presentation.generator_count(), want.generators,
                      at + " gens");
        ck.require_eq(r.presentation.relators().size(), want.relators,
                      at + " rels");
        ck.require_eq(r.stage_log.back().generators, want.generators,
                      at + " log gens");
        ck.require_eq(r.stage_log.back().relators, want.relators,
                      at + " log rels");
        ck.require_eq(r.predicted_relator_count, want.relators,
                      at + " prediction");
      }
    }
  }
  ck.info << "4 base shapes x n=1..6: naive, constant-k and staged doubling "
             "all match the closed forms exactly";
}

// --- criterion 2: the two-relator family ladder ------------------------------

void criterion_bp_ladder(Checker& ck) {
  for (uint64_t p = 1; p <= 3; ++p) {
    ck.require_eq(bp_fixture(p).pres.generator_count(), 4u,
                  "four-generator form gens (p=" + std::to_string(p) + ")");
    ck.require_eq(bp_fixture(p).pres.relators().size(), 4u,
                  "four-generator form rels (p=" + std::to_string(p) + ")");
    ck.require_eq(bp_reduced_fixture(p).pres.generator_count(), 3u,
                  "reduced form gens (p=" + std::to_string(p) + ")");
    ck.require_eq(bp_reduced_fixture(p).pres.relators().size(), 3u,
                  "reduced form rels (p=" + std::to_string(p) + ")");
  }

  const Fixture bp = bp_reduced_fixture(2);
  PipelineOptions opt;
  opt.schedule = make_schedule(ScheduleKind::diagonal_power, 3);
  opt.reducer = ReducerKind::diagonal_power;
  opt.asserted_h2_trivial = true;

  const PowerPipelineResult r =
      power_of_two_presentation(bp.pres, bp.witnesses, 4, opt);
  ck.require_eq(r.stage_log.size(), size_t(9), "stage log length at n=4");
  if (r.stage_log.size() == 9) {
    ck.require_eq(r.stage_log[1].relators, 15u, "square-stage relators at m=2");
    const uint64_t ladder[4] = {19, 43, 67, 91};
    for (uint32_t n = 1; n <= 4; ++n) {
      const StageEntry& e = r.stage_log[2 * n];
      ck.require_eq(e.relators, ladder[n - 1],
                    "ladder relators at stage " + std::to_string(n));
      ck.require_eq(e.relators, predicted_counts(3, 3, n, CountRegime::bp_family).relators,
                    "closed form 24n-5 at stage " + std::to_string(n));
      ck.require_eq(e.generators, 4u, "ladder gens at stage " + std::to_string(n));
    }
  }

  uint64_t tight = 0;
  for (uint64_t m = 2; m <= 64; ++m) {
    const PowerPipelineResult pr =
        power_presentation(bp.pres, bp.witnesses, m, opt);
    const uint64_t bound = 24 * ceil_log2(m) - 1;
    const uint64_t rels = pr.presentation.relators().size();
    std::ostringstream what;
    what << "relator count at m=" << m << " within 24*ceil(log2 m)-1 (" << rels
         << " vs " << bound << ")";
    ck.require(rels <= bound, what.str());
    if (rels == bound) ++tight;
  }
  ck.info << "3-gen/3-rel base; stage relators 15,19,43,67,91 (= 24n-5); "
          << "m=2..64 under 24*ceil(log2 m)-1, tight at " << tight
          << " values of m";
}

// --- criterion 3: coset enumeration certification ----------------------------

void criterion_enumeration(Checker& ck) {
  const Fixture a5 = fixture_by_name("a5");
  const Fixture sl = fixture_by_name("sl25");

  const auto timed = [&](const Presentation& p, uint64_t expect, double budget,
                         const std::string& tag) {
    const auto t0 = Clock::now();
    const uint64_t got = tc_order(p, ck, tag);
    const double dt = seconds_since(t0);
    ck.require_eq(got, expect, tag + " order");
    std::ostringstream what;
    what << tag << " budget (" << dt << "s vs " << budget << "s)";
    ck.require(dt <= budget, what.str());
    ck.info << tag << "=" << got << " ";
  };

  timed(a5.pres, 60, 1.0, "a5");
  timed(sl.pres, 120, 1.0, "sl25");

  SquareOptions so;
  so.asserted_h2_trivial = true;
  const SquareResult sq = square_presentation(
      sl.pres, sl.witnesses, CoordinateDictionary::identity(2), so);
  timed(sq.pres, 14400, 30.0, "square(sl25)");
  timed(uce_presentation(a5.pres, a5.witnesses), 120, 1.0, "central-ext(a5)");
}

// --- criterion 4: the homology hypothesis is load-bearing --------------------

void criterion_negative_control(Checker& ck) {
  const Fixture a5 = fixture_by_name("a5");
  SquareOptions so;
  so.bypass_hypothesis_check = true;
  const SquareResult sq = square_presentation(
      a5.pres, a5.witnesses, CoordinateDictionary::identity(2), so);
  const uint64_t order = tc_order(sq.pres, ck, "bypassed square of a5");
  ck.require(order % 3600 == 0 && order > 3600,
             "order " + std::to_string(order) + " is not a proper multiple of 3600");
  ck.info << "bypassing the homology guard on a5 enumerates to " << order << " = "
          << order / 3600 << " x 3600, not 3600: the guard is load-bearing";
}

// --- criterion 5: large-power surjectivity -----------------------------------

void criterion_large_power(Checker& ck) {
  const Fixture sl = fixture_by_name("sl25");
  PipelineOptions opt;
  opt.schedule = make_schedule(ScheduleKind::square_only, 2);
  opt.asserted_h2_trivial = true;
  opt.base_images = sl.images;

  const PowerPipelineResult r = power_presentation(sl.pres, sl.witnesses, 16, opt);
  ck.require_eq(r.presentation.generator_count(), 32u, "generator count");
  ck.require_eq(r.presentation.relators().size(), 372u, "relator count");
  ck.require(r.report.fully_verified, "run not fully verified");
  ck.require(r.images.has_value(), "no images on a verified run");
  if (!r.images) return;

  ck.require_eq((*r.images)[0].degree(), 384u, "image degree");
  const HomReport rep =
      verify_presentation_hom({r.presentation, *r.images}, bigint_pow(120, 16));
  ck.require(rep.relators_trivial, "a relator fails to evaluate to the identity");
  ck.require(rep.order_matches,
             "image order " + rep.generated_order.str() + " != 120^16");

  for (uint32_t f = 0; f < 16; ++f)
    for (uint32_t s = 0; s < 2; ++s)
      ck.require(evaluate_word(r.dictionary.entry(f, s), *r.images) ==
                     embed_block(sl.images[s], 16, f),
                 "dictionary entry (" + std::to_string(f) + "," + std::to_string(s) +
                     ") is not the coordinate embedding");
  ck.info << "(32,372) presentation of the 16th power; all relators die under "
             "the degree-384 action, the 32 dictionary words are exactly the "
             "coordinate embeddings, and the image group order is 120^16 = "
          << bigint_pow(120, 16).str();
}

// --- criterion 6: compressed generating sets ---------------------------------

void criterion_generating_sets(Checker& ck) {
  const Fixture a5 = fixture_by_name("a5");
  const GroupHom base{a5.pres, a5.images};
  const std::vector<uint32_t> base_gens = {0, 1};

  for (const uint32_t m : {2u, 3u, 5u, 8u, 16u}) {
    const std::string tag = "m=" + std::to_string(m);
    const NaivePower np = naive_power(a5.pres, m);
    const GroupHom big = direct_power_hom(base, m);

    const std::vector<Word> words = binary_generating_words(np.dict, base_gens, m);
    const uint64_t bound = 2 * (1 + ceil_log2(uint64_t(m) + 1));
    std::ostringstream what;
    what << tag << " binary word count (" << words.size() << " vs bound " << bound
         << ")";
    ck.require(words.size() <= bound, what.str());

    std::vector<Permutation> imgs;
    imgs.reserve(words.size());
    for (const Word& w : words) imgs.push_back(evaluate_word(w, big.images));
    const BigInt order = StabilizerChain::build(imgs).order();
    ck.require(order == bigint_pow(60, m),
               tag + " binary words generate order " + order.str() +
                   " != 60^" + std::to_string(m));

    const std::vector<Word> dp = diagonal_power_generating_words(
        np.dict, base_gens, Word::generator(0), m);
    ck.require_eq(dp.size(), size_t(3), tag + " twisted-power word count");
    if (m == 2) {
      std::vector<Permutation> dp_imgs;
      for (const Word& w : dp) dp_imgs.push_back(evaluate_word(w, big.images));
      const BigInt dp_order = StabilizerChain::build(dp_imgs).order();
      ck.require(dp_order == BigInt(3600),
                 "m=2 twisted-power words generate order " + dp_order.str() +
                     " != 3600");
    }
  }
  ck.info << "binary words for the 5th..16th powers of a5 stay within "
             "2(1+ceil(log2(m+1))) and generate the full power; twisted-power "
             "sets always have 3 words (full-power generation checked at m=2, "
             "where the twist element has order > m-1)";
}

// --- criterion 7: Tietze invariance ------------------------------------------

void criterion_tietze_invariance(Checker& ck) {
  std::mt19937 rng(20260819);
  int runs = 0;
  for (const char* name : {"a5", "sl25"}) {
    const Fixture fx = fixture_by_name(name);
    const uint64_t expect = fx.order.convert_to<uint64_t>();
    for (int i = 0; i < 250; ++i, ++runs) {
      const Presentation q = testing::random_tietze_walk(fx.pres, rng, 4);
      const uint64_t got =
          tc_order(q, ck, std::string(name) + " walk " + std::to_string(i));
      if (got != expect) {
        ck.require(false, std::string(name) + " walk " + std::to_string(i) +
                              " changed the order to " + std::to_string(got));
        continue;
      }
      if (!abelianization(q).is_trivial())
        ck.require(false, std::string(name) + " walk " + std::to_string(i) +
                              " changed the abelianization");
    }
  }
  ck.info << runs
          << " random 4-move walks (250 per fixture) preserve the coset count "
             "and the abelianization";
}

// --- criterion 8: abelianization guard ---------------------------------------

void criterion_homology_guard(Checker& ck) {
  for (uint64_t p = 1; p <= 7; ++p) {
    ck.require(abelianization(bp_fixture(p).pres).is_trivial(),
               "four-generator family not perfect at p=" + std::to_string(p));
    ck.require(abelianization(bp_reduced_fixture(p).pres).is_trivial(),
               "reduced family not perfect at p=" + std::to_string(p));
  }
  ck.require(abelianization(fixture_by_name("a5").pres).is_trivial(),
             "a5 not perfect");
  ck.require(abelianization(fixture_by_name("sl25").pres).is_trivial(),
             "sl25 not perfect");

  const Presentation zxz = parse_presentation("gens: a b\nrel: [a,b]\n");
  const AbelianInvariants inv = abelianization(zxz);
  ck.require(inv.free_rank == 2 && inv.torsion.empty(),
             "free abelian rank-2 group misidentified");

  const Presentation z = parse_presentation("gens: a\n");
  SquareOptions so;
  so.asserted_h2_trivial = true;
  bool rejected = false;
  try {
    square_presentation(z, CommutatorWitnesses{{Word()}},
                        CoordinateDictionary::identity(1), so);
  } catch (const hypothesis_error&) {
    rejected = true;
  }
  ck.require(rejected, "the square construction accepted an infinite cyclic input");
  ck.info << "both family forms (p<=7), a5 and sl25 are perfect; <a,b|[a,b]> "
             "reports free rank 2; the square construction rejects <a|>";
}

// --- criterion 9: small-generating-set replay --------------------------------

void criterion_small_generating_sets(Checker& ck) {
  const Fixture sl = fixture_by_name("sl25");
  PipelineOptions opt;
  opt.schedule = hall_sl25_schedule();
  opt.reducer = ReducerKind::stub;
  opt.asserted_h2_trivial = true;

  const PowerPipelineResult r16 = power_presentation(sl.pres, sl.witnesses, 16, opt);
  ck.require_eq(r16.presentation.generator_count(), 2u, "m=16 gens");
  ck.require_eq(r16.presentation.relators().size(), 34u, "m=16 rels");
  ck.require(r16.report.reference_relator_count &&
                 *r16.report.reference_relator_count == 36,
             "m=16 reference count not recorded");
  ck.require(r16.report.reference_deviation && *r16.report.reference_deviation == -2,
             "m=16 deviation not recorded as -2");
  const uint64_t m16_rels = r16.presentation.relators().size();
  ck.require(m16_rels <= predicted_counts(2, 2, 4, CountRegime::constant_k).relators,
             "m=16 outside the constant-rank bound");
  ck.require(m16_rels <= predicted_counts(2, 2, 4, CountRegime::staged_k).relators,
             "m=16 outside the staged bound");
  ck.require(!r16.report.fully_verified,
             "a schedule with no defining expressions claimed verification");
  ck.require(!r16.report.notes.empty(), "m=16 run report carries no notes");

  const PowerPipelineResult r1024 =
      power_presentation(sl.pres, sl.witnesses, 1024, opt);
  ck.require_eq(r1024.presentation.generator_count(), 3u, "m=1024 gens");
  ck.require_eq(r1024.presentation.relators().size(), 118u, "m=1024 rels");
  ck.require(r1024.report.reference_relator_count &&
                 *r1024.report.reference_relator_count == 118,
             "m=1024 reference count not recorded");
  ck.require(r1024.report.reference_deviation && *r1024.report.reference_deviation == 0,
             "m=1024 deviation not recorded as 0");
  const uint64_t m1024_rels = r1024.presentation.relators().size();
  ck.require(m1024_rels <= predicted_counts(2, 2, 10, CountRegime::staged_k).relators,
             "m=1024 outside the staged bound");
  ck.require(!r1024.report.fully_verified,
             "a schedule with no defining expressions claimed verification");

  ck.info << "m=16: (2,34) vs reference 36, deviation -2 recorded (the shared "
             "diagonal saves two commutator relators); m=1024: (3,118) matches "
             "the reference exactly; both stay inside the doubling-regime "
             "bounds (34<=34 constant / 92 staged; 118<=1344 staged at rank 3 "
             "past m=19) and both runs are flagged count-exact but unverified";
}

// --- driver ------------------------------------------------------------------

struct Criterion {
  int id;
  const char* label;
  double budget_s;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "doubling-regime count exactness", 1.0, criterion_counts},
      {2, "two-relator family ladder", 1.0, criterion_bp_ladder},
      {3, "coset enumeration certification", 33.0, criterion_enumeration},
      {4, "homology hypothesis negative control", 60.0, criterion_negative_control},
      {5, "large-power surjectivity", 60.0, criterion_large_power},
      {6, "compressed generating sets", 120.0, criterion_generating_sets},
      {7, "Tietze invariance", 120.0, criterion_tietze_invariance},
      {8, "abelianization guard", 1.0, criterion_homology_guard},
      {9, "small-generating-set replay", 120.0, criterion_small_generating_sets},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Checker ck;
    const auto t0 = Clock::now();
    try {
      c.run(ck);
    } catch (const std::exception& e) {
      ck.require(false, std::string("threw: ") + e.what());
    }
    const double dt = seconds_since(t0);
    if (dt > c.budget_s) {
      std::ostringstream what;
      what << "over budget (" << dt << "s vs " << c.budget_s << "s)";
      ck.require(false, what.str());
    }
    const bool pass = ck.ok;
    failed += pass ? 0 : 1;
    std::printf("[%s] criterion %d (%.2fs) %s — %s\n", pass ? "PASS" : "FAIL",
                c.id, dt, c.label, ck.detail().c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed;
}
