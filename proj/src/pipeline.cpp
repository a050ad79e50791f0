#include "powpres/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "powpres/errors.hpp"
#include "powpres/homomorphism.hpp"
#include "powpres/smith.hpp"
#include "powpres/stabilizer_chain.hpp"
#include "powpres/tietze.hpp"

namespace powpres {

namespace {

uint64_t ceil_log2(uint64_t m) {
  return m <= 1 ? 0 : std::bit_width(m - 1);
}

uint64_t kill_word_count(uint64_t dead, uint64_t k, ReducerKind reducer) {
  if (dead == 1) return k;  // the dead factor's own coordinates
  switch (reducer) {
    case ReducerKind::binary:
      return k * (1 + std::bit_width(dead));
    case ReducerKind::diagonal_power:
      return k + 1;
    case ReducerKind::stub:
      return k;
  }
  throw precondition_error("unknown reducer");
}

const char* schedule_name(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::binary_default: return "binary_default";
    case ScheduleKind::constant_k: return "constant_k";
    case ScheduleKind::staged_k: return "staged_k";
    case ScheduleKind::diagonal_power: return "diagonal_power";
    case ScheduleKind::hall_sl25: return "hall_sl25";
    case ScheduleKind::user_table: return "user_table";
    case ScheduleKind::square_only: return "square_only";
  }
  return "?";
}

}  // namespace

uint64_t GeneratorBoundSchedule::bound(uint64_t m) const {
  if (m == 0) throw precondition_error("bound: factor count must be positive");
  if (m == 1) return base_rank;
  switch (kind) {
    case ScheduleKind::binary_default:
      // 1 + ceil(log2(m+1)) digit classes, ceil(log2(m+1)) = bit_width(m).
      return base_rank * (1 + std::bit_width(m));
    case ScheduleKind::constant_k:
      return base_rank;
    case ScheduleKind::staged_k:
      return base_rank * std::max<uint64_t>(1, ceil_log2(m));
    case ScheduleKind::diagonal_power:
      return base_rank + 1;
    case ScheduleKind::hall_sl25:
      return m <= 19 ? 2 : 3;
    case ScheduleKind::user_table: {
      uint64_t out = base_rank;
      for (const auto& [threshold, value] : table) {
        if (threshold > m) break;
        out = value;
      }
      return out;
    }
    case ScheduleKind::square_only:
      // Never consulted for rewriting; anything at least the current rank
      // would do, so make the "no shrink" reading unmistakable.
      return UINT64_MAX;
  }
  throw precondition_error("unknown schedule kind");
}

GeneratorBoundSchedule make_schedule(ScheduleKind kind, uint64_t base_rank) {
  if (base_rank == 0) throw precondition_error("schedule needs a positive base rank");
  if (kind == ScheduleKind::hall_sl25 && base_rank != 2)
    throw precondition_error("the hall_sl25 schedule is specific to rank 2");
  if (kind == ScheduleKind::user_table)
    throw precondition_error("use schedule_from_table for explicit tables");
  GeneratorBoundSchedule s;
  s.kind = kind;
  s.base_rank = base_rank;
  s.name = schedule_name(kind);
  return s;
}

GeneratorBoundSchedule schedule_from_table(
    uint64_t base_rank, std::vector<std::pair<uint64_t, uint64_t>> steps) {
  if (base_rank == 0) throw precondition_error("schedule needs a positive base rank");
  if (steps.empty() || steps.front().first != 1)
    steps.insert(steps.begin(), {1, base_rank});
  if (steps.front().second != base_rank)
    throw precondition_error("table bound at m = 1 must equal the base rank");
  for (size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].second == 0)
      throw precondition_error("table bounds must be positive");
    if (i > 0 && steps[i].first <= steps[i - 1].first)
      throw precondition_error("table thresholds must be strictly increasing");
  }
  GeneratorBoundSchedule s;
  s.kind = ScheduleKind::user_table;
  s.base_rank = base_rank;
  s.name = "user_table";
  s.table = std::move(steps);
  return s;
}

GeneratorBoundSchedule hall_sl25_schedule() {
  GeneratorBoundSchedule s = make_schedule(ScheduleKind::hall_sl25, 2);
  s.reference_relator_counts = {{16, 36}, {1024, 118}};
  return s;
}

namespace {

struct State {
  Presentation pres;
  CoordinateDictionary dict;
  CommutatorWitnesses wit;
  std::optional<std::vector<Permutation>> images;
  bool images_given = false;
  bool verified = true;  // no unverified rewrite (or failed fixup) so far
  std::vector<StageEntry> log;
  std::vector<std::string> notes;
  bool noted_placeholder_expr = false;
  bool noted_untrusted_expr = false;
  bool noted_fixup_fallback = false;
  bool noted_images_dropped = false;
  bool noted_h1_skip = false;
};

void note_once(State& st, bool& flag, std::string msg) {
  if (flag) return;
  st.notes.push_back(std::move(msg));
  flag = true;
}

void log_stage(State& st, const char* phase, uint64_t factors) {
  st.log.push_back({phase, factors,
                    static_cast<uint64_t>(st.pres.generator_count()),
                    static_cast<uint64_t>(st.pres.relator_count()), st.verified});
}

// Re-check perfectness while the run is still certified; afterwards the
// presentation may legitimately have homology we cannot predict.
void recheck_h1(State& st, const PipelineOptions& opt, const std::string& where) {
  if (!st.verified || opt.bypass_hypothesis_check) {
    if (!st.verified)
      note_once(st, st.noted_h1_skip,
                "abelianization re-checks skipped once the run is unverified");
    return;
  }
  if (!abelianization(st.pres).is_trivial())
    throw error("internal: abelianization became nontrivial after " + where);
}

std::vector<uint32_t> iota_u32(uint64_t n) {
  std::vector<uint32_t> v(n);
  for (uint64_t i = 0; i < n; ++i) v[i] = static_cast<uint32_t>(i);
  return v;
}

void check_input(const Presentation& p, const CommutatorWitnesses& w,
                 const PipelineOptions& opt, State& st, bool will_square) {
  const size_t k = p.generator_count();
  if (k == 0) throw precondition_error("pipeline requires at least one generator");
  if (opt.schedule.base_rank != k)
    throw precondition_error("schedule base rank " +
                             std::to_string(opt.schedule.base_rank) +
                             " does not match the presentation rank " +
                             std::to_string(k));
  validate_witness_shape(p, w);
  // A power-1 run constructs nothing, so it owes no hypotheses.
  if (will_square && !opt.bypass_hypothesis_check) {
    if (!abelianization(p).is_trivial())
      throw hypothesis_error(
          "input abelianization is nontrivial; the construction requires a "
          "perfect group");
    if (!opt.asserted_h2_trivial)
      throw hypothesis_error(
          "the construction also requires trivial second homology, which is "
          "not machine-checkable here; pass the assertion explicitly");
  }
  if (opt.reducer == ReducerKind::diagonal_power && !opt.dp_element.empty() &&
      opt.dp_element.min_alphabet() > k)
    throw precondition_error("dp element leaves the base alphabet");

  if (!opt.base_images.empty()) {
    if (opt.base_images.size() != k)
      throw precondition_error("expected " + std::to_string(k) +
                               " base images, got " +
                               std::to_string(opt.base_images.size()));
    const uint32_t d = opt.base_images.front().degree();
    if (d == 0) throw precondition_error("base images must have positive degree");
    for (const auto& g : opt.base_images)
      if (g.degree() != d)
        throw precondition_error("base images must share one degree");
    for (size_t i = 0; i < p.relator_count(); ++i)
      if (!evaluate_word(p.relators()[i], opt.base_images).is_identity())
        throw precondition_error("base images do not satisfy relator #" +
                                 std::to_string(i));
    for (size_t i = 0; i < w.words.size(); ++i)
      if (!(evaluate_word(w.words[i], opt.base_images) == opt.base_images[i]))
        throw witness_error("witness for generator '" +
                            p.generator_name(static_cast<uint32_t>(i)) +
                            "' does not evaluate to the generator under the "
                            "base images");
    st.images = opt.base_images;
    st.images_given = true;
  }

  st.pres = p;
  st.dict = CoordinateDictionary::identity(static_cast<uint32_t>(k));
  st.wit = w;
  log_stage(st, "input", 1);
}

void square_stage(State& st, const PipelineOptions& opt, uint64_t m) {
  SquareOptions sq_opt;
  sq_opt.asserted_h2_trivial = true;  // carried from the input-time assertion
  sq_opt.bypass_hypothesis_check = opt.bypass_hypothesis_check || !st.verified;
  SquareResult sq = square_presentation(st.pres, st.wit, st.dict, sq_opt);

  if (st.images) {
    const size_t g_cur = st.pres.generator_count();
    std::vector<Permutation> next;
    next.reserve(2 * g_cur);
    for (size_t i = 0; i < g_cur; ++i)
      next.push_back(embed_diagonal((*st.images)[i], 2));
    for (size_t i = 0; i < g_cur; ++i)
      next.push_back(embed_block((*st.images)[i], 2, 0));
    st.images = std::move(next);
  }

  st.pres = std::move(sq.pres);
  st.dict = std::move(sq.dict);
  st.wit = std::move(sq.witnesses);
  log_stage(st, "square", m);
  recheck_h1(st, opt, "the doubling stage at " + std::to_string(m) + " factors");
}

void rewrite_stage(State& st, const PipelineOptions& opt, uint64_t m,
                   uint64_t kappa, const std::vector<uint32_t>& base_gens) {
  const size_t g_cur = st.pres.generator_count();
  const std::string at_m = " at factor count " + std::to_string(m);

  // New generating set, as words over the current alphabet.
  std::vector<Word> new_words;
  switch (opt.reducer) {
    case ReducerKind::binary:
      new_words = binary_generating_words(st.dict, base_gens,
                                          static_cast<uint32_t>(m));
      break;
    case ReducerKind::diagonal_power: {
      const Word g = opt.dp_element.empty() ? Word::generator(0) : opt.dp_element;
      new_words = diagonal_power_generating_words(st.dict, base_gens, g,
                                                  static_cast<uint32_t>(m));
      break;
    }
    case ReducerKind::stub:
      for (uint64_t j = 0; j < kappa; ++j)
        new_words.push_back(Word::generator(static_cast<uint32_t>(j % g_cur)));
      break;
  }
  if (new_words.size() != kappa)
    throw precondition_error(
        "reducer produced " + std::to_string(new_words.size()) + " words" +
        at_m + " but the schedule bound is " + std::to_string(kappa) +
        "; pick a matching reducer/schedule pair");

  std::vector<std::string> names;
  names.reserve(kappa);
  for (uint64_t j = 0; j < kappa; ++j) names.push_back("t" + std::to_string(j + 1));

  // Images of the new generators are computable whenever the old ones are.
  std::vector<Permutation> new_images;
  if (st.images)
    for (const Word& nw : new_words)
      new_images.push_back(evaluate_word(nw, *st.images));

  // Old generators expressed over the new alphabet, from the best source
  // available: caller-supplied, factored through the oracle, or placeholder.
  std::vector<Word> exprs;
  bool verified_this = false;
  if (auto it = opt.user_expressions.find(m); it != opt.user_expressions.end()) {
    exprs = it->second;
    if (exprs.size() != g_cur)
      throw precondition_error("expected " + std::to_string(g_cur) +
                               " user expressions" + at_m + ", got " +
                               std::to_string(exprs.size()));
    for (const Word& e : exprs)
      if (e.min_alphabet() > kappa)
        throw precondition_error("user expression leaves the new alphabet" + at_m);
    if (st.images) {
      for (size_t q = 0; q < g_cur; ++q)
        if (!(evaluate_word(exprs[q], new_images) == (*st.images)[q]))
          throw factorization_error(
              "user expression for generator '" +
              st.pres.generator_name(static_cast<uint32_t>(q)) + "'" + at_m +
              " does not evaluate to that generator");
      verified_this = true;
    } else {
      note_once(st, st.noted_untrusted_expr,
                "user expressions accepted without an oracle" + at_m +
                    "; the run is flagged unverified");
    }
  } else if (st.images && opt.verify_rewrites && opt.reducer != ReducerKind::stub) {
    // Stub words are count-exact placeholders, not a generating set, so
    // factoring through them can only fail; they take the placeholder branch.
    StabilizerChain::Options chain_opt;
    chain_opt.track_words = true;
    const StabilizerChain chain = StabilizerChain::build(new_images, chain_opt);
    exprs.reserve(g_cur);
    for (size_t q = 0; q < g_cur; ++q) {
      try {
        exprs.push_back(factor_element(chain, new_images, (*st.images)[q]));
      } catch (const factorization_error& e) {
        throw factorization_error("rewrite" + at_m + ", generator '" +
                                  st.pres.generator_name(static_cast<uint32_t>(q)) +
                                  "': " + e.what());
      }
    }
    verified_this = true;
  } else {
    exprs.reserve(g_cur);
    for (size_t q = 0; q < g_cur; ++q)
      exprs.push_back(Word::generator(static_cast<uint32_t>((q + 1) % kappa)));
    note_once(st, st.noted_placeholder_expr,
              "rewrite" + at_m +
                  " uses placeholder expressions; counts are exact but the "
                  "output is unverified");
  }

  GeneratingSetRewrite rw{names, new_words, exprs, verified_this};
  Presentation next = rewrite_to_generating_set(st.pres, rw);

  // Witnesses for the new generators: substituting the defining word gives a
  // word equal to t_j in the rewritten group; relator powers then cancel the
  // exponent sums without moving the element. Unsolvable or oversized fixups
  // fall back to placeholder commutators and void the certification.
  CommutatorWitnesses new_wit;
  new_wit.words.reserve(kappa);
  bool fixup_ok = true;
  for (uint64_t j = 0; j < kappa; ++j) {
    std::optional<Word> fixed;
    if (fixup_ok) fixed = zero_exponent_form(next, substitute(new_words[j], exprs));
    if (fixed) {
      new_wit.words.push_back(std::move(*fixed));
    } else {
      fixup_ok = false;
      new_wit.words.resize(j);  // restart: mixing genuine and placeholder helps nobody
      break;
    }
  }
  if (!fixup_ok) {
    new_wit.words.clear();
    for (uint64_t j = 0; j < kappa; ++j)
      new_wit.words.push_back(commutator(Word::generator(static_cast<uint32_t>(j)),
                                         Word::generator(static_cast<uint32_t>((j + 1) % kappa))));
    if (verified_this)
      note_once(st, st.noted_fixup_fallback,
                "witness fixup failed" + at_m +
                    "; continuing with placeholder witnesses, run unverified");
    verified_this = false;
  }
  if (verified_this && st.images) {
    for (uint64_t j = 0; j < kappa; ++j)
      if (!(evaluate_word(new_wit.words[j], new_images) == new_images[j]))
        throw error("internal: propagated witness fails its oracle check" + at_m);
  }

  st.pres = std::move(next);
  st.dict = rewrite_dictionary(st.dict, exprs);
  st.wit = std::move(new_wit);
  if (st.images) {
    if (verified_this) {
      st.images = std::move(new_images);
    } else {
      st.images.reset();
      note_once(st, st.noted_images_dropped,
                "permutation images dropped" + at_m +
                    ": the presented group is no longer certified to match "
                    "the permutation model");
    }
  }
  st.verified = st.verified && verified_this;
  log_stage(st, "rewrite", m);
  recheck_h1(st, opt, "the rewrite at " + std::to_string(m) + " factors");
}

void kill_stage(State& st, const PipelineOptions& opt, uint64_t m, uint64_t full,
                const std::vector<uint32_t>& base_gens) {
  const uint64_t dead_count = full - m;
  std::vector<uint32_t> dead;
  dead.reserve(dead_count);
  for (uint64_t f = m; f < full; ++f) dead.push_back(static_cast<uint32_t>(f));

  std::vector<Word> words;
  if (dead_count == 1) {
    for (uint32_t s : base_gens)
      words.push_back(st.dict.entry(dead.front(), s));
  } else {
    switch (opt.reducer) {
      case ReducerKind::binary:
        words = binary_generating_words_for_factors(st.dict, base_gens, dead);
        break;
      case ReducerKind::diagonal_power: {
        const Word g = opt.dp_element.empty() ? Word::generator(0) : opt.dp_element;
        words = diagonal_power_generating_words_for_factors(st.dict, base_gens, g, dead);
        break;
      }
      case ReducerKind::stub:
        for (uint32_t s : base_gens) {
          Word diag;
          for (uint32_t f : dead) diag = diag * st.dict.entry(f, s);
          words.push_back(diag);
        }
        break;
    }
  }

  st.pres = kill_generators(st.pres, words);
  st.dict.num_factors = static_cast<uint32_t>(m);
  st.dict.entries.resize(m * st.dict.base_rank);
  if (st.images) {
    std::vector<Permutation> next;
    next.reserve(st.images->size());
    for (const auto& g : *st.images)
      next.push_back(restrict_blocks(g, static_cast<uint32_t>(full),
                                     static_cast<uint32_t>(m)));
    st.images = std::move(next);
  }
  log_stage(st, "kill", m);
  recheck_h1(st, opt, "killing the dead factors");
}

void run_doubling(State& st, const PipelineOptions& opt, uint32_t n,
                  const std::vector<uint32_t>& base_gens) {
  for (uint32_t i = 1; i <= n; ++i) {
    const uint64_t m = uint64_t(1) << i;
    square_stage(st, opt, m);
    if (opt.schedule.never_rewrite()) continue;
    const uint64_t kappa = opt.schedule.bound(m);
    if (kappa < st.pres.generator_count())
      rewrite_stage(st, opt, m, kappa, base_gens);
  }
}

PowerPipelineResult finalize(State&& st, const PipelineOptions& opt, uint64_t k,
                             uint64_t l, uint64_t final_m) {
  const auto sim = simulate_counts(k, l, final_m, opt.schedule, opt.reducer);
  if (sim.size() != st.log.size())
    throw error("internal: stage log has " + std::to_string(st.log.size()) +
                " entries, count simulation has " + std::to_string(sim.size()));
  for (size_t i = 0; i < sim.size(); ++i) {
    const StageEntry& a = st.log[i];
    const StageEntry& b = sim[i];
    if (a.phase != b.phase || a.factors != b.factors ||
        a.generators != b.generators || a.relators != b.relators)
      throw error("internal: stage log diverged from the count simulation at "
                  "stage #" + std::to_string(i) + " (" + a.phase + ")");
  }

  PowerPipelineResult out;
  out.predicted_relator_count = sim.back().relators;
  out.report.fully_verified = st.verified && st.images.has_value();
  if (st.verified && !st.images_given)
    st.notes.push_back(
        "no permutation oracle attached; construction is count-exact but ran "
        "without independent verification");

  if (auto it = opt.schedule.reference_relator_counts.find(final_m);
      it != opt.schedule.reference_relator_counts.end()) {
    const uint64_t actual = st.pres.relator_count();
    out.report.reference_relator_count = it->second;
    out.report.reference_deviation =
        static_cast<int64_t>(actual) - static_cast<int64_t>(it->second);
    st.notes.push_back("reference relator count at " + std::to_string(final_m) +
                       " factors: " + std::to_string(it->second) + ", this run: " +
                       std::to_string(actual) + " (deviation " +
                       std::to_string(*out.report.reference_deviation) + ")");
  }

  out.presentation = std::move(st.pres);
  out.dictionary = std::move(st.dict);
  out.witnesses = std::move(st.wit);
  out.stage_log = std::move(st.log);
  out.images = std::move(st.images);
  out.report.notes = std::move(st.notes);
  return out;
}

}  // namespace

PowerPipelineResult power_of_two_presentation(const Presentation& p,
                                              const CommutatorWitnesses& w,
                                              uint32_t n,
                                              const PipelineOptions& opt) {
  if (n > 30) throw precondition_error("doubling depth too large");
  State st;
  check_input(p, w, opt, st, n > 0);
  const uint64_t k = p.generator_count();
  const uint64_t l = p.relator_count();
  run_doubling(st, opt, n, iota_u32(k));
  return finalize(std::move(st), opt, k, l, uint64_t(1) << n);
}

PowerPipelineResult power_presentation(const Presentation& p,
                                       const CommutatorWitnesses& w, uint64_t m,
                                       const PipelineOptions& opt) {
  if (m == 0) throw precondition_error("factor count must be positive");
  if (m > (uint64_t(1) << 30)) throw precondition_error("factor count too large");
  State st;
  check_input(p, w, opt, st, m > 1);
  const uint64_t k = p.generator_count();
  const uint64_t l = p.relator_count();
  const uint32_t n = static_cast<uint32_t>(ceil_log2(m));
  const std::vector<uint32_t> base_gens = iota_u32(k);
  run_doubling(st, opt, n, base_gens);
  const uint64_t full = uint64_t(1) << n;
  if (full != m) kill_stage(st, opt, m, full, base_gens);
  return finalize(std::move(st), opt, k, l, m);
}

std::vector<StageEntry> simulate_counts(uint64_t k, uint64_t l, uint64_t m,
                                        const GeneratorBoundSchedule& schedule,
                                        ReducerKind reducer) {
  if (k == 0) throw precondition_error("simulate_counts needs a positive rank");
  if (m == 0) throw precondition_error("factor count must be positive");
  if (schedule.base_rank != k)
    throw precondition_error("schedule base rank does not match");
  std::vector<StageEntry> out;
  out.push_back({"input", 1, k, l, true});
  if (m == 1) return out;

  const uint64_t n = ceil_log2(m);
  uint64_t g = k;
  uint64_t r = l;
  for (uint64_t i = 1; i <= n; ++i) {
    const uint64_t mm = uint64_t(1) << i;
    r += g + g * g;
    g *= 2;
    out.push_back({"square", mm, g, r, true});
    if (schedule.never_rewrite()) continue;
    const uint64_t kappa = schedule.bound(mm);
    if (kappa < g) {
      r += kappa;
      g = kappa;
      out.push_back({"rewrite", mm, g, r, true});
    }
  }
  const uint64_t full = uint64_t(1) << n;
  if (full != m) {
    r += kill_word_count(full - m, k, reducer);
    out.push_back({"kill", m, g, r, true});
  }
  return out;
}

}  // namespace powpres
