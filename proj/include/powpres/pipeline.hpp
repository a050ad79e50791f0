#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "powpres/constructions.hpp"
#include "powpres/permutation.hpp"
#include "powpres/presentation.hpp"

namespace powpres {

// How many generators the presentation of G^m is allowed to keep after the
// stage that reaches m factors. The pipeline rewrites down to bound(m)
// whenever that is smaller than the current generator count.
enum class ScheduleKind {
  binary_default,   // k * (1 + ceil(log2(m+1))): matches the binary reducer
  constant_k,       // k at every stage: matches the stub reducer
  staged_k,         // k * max(1, ceil(log2 m)): slower shrink, fewer relators
  diagonal_power,   // k + 1 from two factors on: matches the power reducer
  hall_sl25,        // 2 gens through m=19, then 3 (SL(2,5) only)
  user_table,       // explicit (threshold, bound) steps
  square_only,      // never rewrite
};

struct GeneratorBoundSchedule {
  ScheduleKind kind = ScheduleKind::binary_default;
  uint64_t base_rank = 0;
  std::string name;
  // user_table only: (m, bound) steps, strictly increasing in m, starting at
  // m = 1 with bound = base_rank. bound(m) reads the last step with step.m <= m.
  std::vector<std::pair<uint64_t, uint64_t>> table;
  // Published generator/relator counts to compare a run against, keyed by the
  // final factor count. The run report records the match or the deviation.
  std::map<uint64_t, uint64_t> reference_relator_counts;

  uint64_t bound(uint64_t m) const;
  bool never_rewrite() const { return kind == ScheduleKind::square_only; }
};

GeneratorBoundSchedule make_schedule(ScheduleKind kind, uint64_t base_rank);
GeneratorBoundSchedule schedule_from_table(
    uint64_t base_rank, std::vector<std::pair<uint64_t, uint64_t>> steps);
// base_rank 2, bound 2 up to m = 19 and 3 beyond, with the published relator
// counts for m = 16 (36) and m = 1024 (118) attached as references. The small
// generating sets exist but no defining expressions are known here, so runs
// under this schedule are count-exact and flagged unverified.
GeneratorBoundSchedule hall_sl25_schedule();

// Where the new generating set's words come from at a rewrite stage. The
// word count must equal the schedule bound at that stage (checked).
enum class ReducerKind {
  binary,          // diagonals + binary-digit partial diagonals
  diagonal_power,  // diagonals + one twisted power word
  stub,            // placeholder single-letter words; count-exact only
};

struct PipelineOptions {
  GeneratorBoundSchedule schedule;
  ReducerKind reducer = ReducerKind::binary;
  // Forwarded to the input hypothesis check (see SquareOptions).
  bool asserted_h2_trivial = false;
  bool bypass_hypothesis_check = false;
  // Optional permutation oracle: images of the base generators. When present,
  // relators and witnesses are checked against it up front, image tracking is
  // on, and rewrites are verified by factoring through a stabilizer chain.
  std::vector<Permutation> base_images;
  bool verify_rewrites = true;
  // Caller-supplied old-in-new expressions for the rewrite at factor count m
  // (size = generator count before the rewrite, words over the new alphabet).
  // Checked against the oracle when one is attached, else taken on trust and
  // the run is flagged unverified.
  std::map<uint64_t, std::vector<Word>> user_expressions;
  // Element of the base group for the diagonal_power reducer; empty means the
  // first base generator.
  Word dp_element;
};

struct StageEntry {
  std::string phase;  // "input" | "square" | "rewrite" | "kill"
  uint64_t factors = 0;
  uint64_t generators = 0;
  uint64_t relators = 0;
  bool verified = true;  // no unverified rewrite upstream of this point
  bool operator==(const StageEntry&) const = default;
};

struct RunReport {
  bool fully_verified = false;
  std::vector<std::string> notes;
  // Set when the schedule carries a reference count for the final factor
  // count; deviation = actual - reference.
  std::optional<uint64_t> reference_relator_count;
  std::optional<int64_t> reference_deviation;
};

struct PowerPipelineResult {
  Presentation presentation;
  CoordinateDictionary dictionary;
  CommutatorWitnesses witnesses;
  uint64_t predicted_relator_count = 0;
  std::vector<StageEntry> stage_log;
  // Present iff base images were supplied and every rewrite was verified.
  std::optional<std::vector<Permutation>> images;
  RunReport report;
};

// Doubles n times: G -> G^2 -> ... -> G^(2^n), squaring and then rewriting
// per the schedule. n = 0 echoes the input (after the hypothesis checks).
PowerPipelineResult power_of_two_presentation(const Presentation& p,
                                              const CommutatorWitnesses& w,
                                              uint32_t n,
                                              const PipelineOptions& opt);

// Arbitrary m >= 1: runs to 2^ceil(log2 m) and kills the trailing dead
// factors by adjoining one relator per reducer word for those factors.
PowerPipelineResult power_presentation(const Presentation& p,
                                       const CommutatorWitnesses& w, uint64_t m,
                                       const PipelineOptions& opt);

// The arithmetic shadow of power_presentation: stage log the pipeline would
// produce for a rank-k, l-relator input, without building anything. The
// pipeline asserts its own log matches this.
std::vector<StageEntry> simulate_counts(uint64_t k, uint64_t l, uint64_t m,
                                        const GeneratorBoundSchedule& schedule,
                                        ReducerKind reducer);

}  // namespace powpres
