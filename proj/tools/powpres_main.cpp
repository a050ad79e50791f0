// powpres: construct and verify concise presentations of direct powers of
// perfect groups. Subcommands: build, verify, count, reduce.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "powpres/constructions.hpp"
#include "powpres/errors.hpp"
#include "powpres/fixtures.hpp"
#include "powpres/homomorphism.hpp"
#include "powpres/json_io.hpp"
#include "powpres/pipeline.hpp"
#include "powpres/presentation.hpp"
#include "powpres/smith.hpp"
#include "powpres/tietze.hpp"
#include "powpres/todd_coxeter.hpp"

namespace {

using namespace powpres;

// Exit codes: 0 success, 1 usage/input error, 2 hypothesis violation,
// 3 factorization failure, 4 verification failed, 5 inconclusive
// (enumeration overflow / search budget exhausted).
constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitFactorization = 3;
constexpr int kExitVerifyFailed = 4;
constexpr int kExitInconclusive = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw precondition_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw precondition_error("cannot write '" + out_path + "'");
  out << content;
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
    return c == '{' || c == '[';
  }
  return false;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// shared config

struct CommonOpts {
  std::string format = "text";
  std::string output;
  uint64_t seed = 0;  // reserved: all current code paths are deterministic
};

struct BuildSource {
  std::string label;
  Presentation pres;
  CommutatorWitnesses witnesses;
  std::vector<Permutation> images;
  bool superperfect = false;
};

BuildSource from_fixture(const std::string& name, uint64_t p) {
  Fixture f;
  if (name == "bp") {
    f = bp_reduced_fixture(p);
  } else {
    f = fixture_by_name(name);
  }
  BuildSource src;
  src.label = f.name;
  src.pres = f.pres;
  src.witnesses = f.witnesses;
  src.images = f.images;
  src.superperfect = f.superperfect;
  return src;
}

// JSON build inputs: {"presentation": {...}, "witnesses": [...],
// "images": [...]?, "superperfect": bool?}.
BuildSource from_file(const std::string& path) {
  const std::string text = read_file(path);
  if (!looks_like_json(text))
    throw precondition_error(
        "build input files are JSON (presentation + witnesses); got text. "
        "Wrap the presentation or use --fixture.");
  Json j = Json::parse(text);
  BuildSource src;
  src.label = path;
  src.pres = presentation_from_json(j.contains("presentation") ? j.at("presentation") : j);
  if (j.contains("witnesses"))
    src.witnesses = witnesses_from_json(j.at("witnesses"), src.pres);
  else
    throw precondition_error("build input '" + path + "' carries no witnesses");
  if (j.contains("images") && !j.at("images").is_null())
    for (const auto& e : j.at("images")) src.images.push_back(permutation_from_json(e));
  if (j.contains("superperfect")) src.superperfect = j.at("superperfect").get<bool>();
  return src;
}

struct SchedulePick {
  GeneratorBoundSchedule schedule;
  ReducerKind reducer = ReducerKind::binary;
  std::string reducer_name = "binary";
};

SchedulePick resolve_schedule(const std::string& choice, const std::string& table_spec,
                              uint64_t base_rank, bool bp_input) {
  SchedulePick pick;
  auto set = [&](ScheduleKind kind, ReducerKind red, const char* red_name) {
    pick.schedule = make_schedule(kind, base_rank);
    pick.reducer = red;
    pick.reducer_name = red_name;
  };
  if (choice == "default") {
    if (bp_input)
      set(ScheduleKind::diagonal_power, ReducerKind::diagonal_power, "diagonal_power");
    else
      set(ScheduleKind::binary_default, ReducerKind::binary, "binary");
  } else if (choice == "constant-k") {
    set(ScheduleKind::constant_k, ReducerKind::stub, "stub");
  } else if (choice == "staged") {
    set(ScheduleKind::staged_k, ReducerKind::stub, "stub");
  } else if (choice == "dp") {
    set(ScheduleKind::diagonal_power, ReducerKind::diagonal_power, "diagonal_power");
  } else if (choice == "hall") {
    pick.schedule = hall_sl25_schedule();
    if (pick.schedule.base_rank != base_rank)
      throw precondition_error("the hall schedule needs a rank-2 input");
    pick.reducer = ReducerKind::stub;
    pick.reducer_name = "stub";
  } else if (choice == "square-only") {
    set(ScheduleKind::square_only, ReducerKind::binary, "binary");
  } else if (choice == "table") {
    if (table_spec.empty())
      throw precondition_error("--schedule table needs --table m:bound[,m:bound...]");
    std::vector<std::pair<uint64_t, uint64_t>> steps;
    std::istringstream ss(table_spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos)
        throw precondition_error("bad --table entry '" + item + "' (want m:bound)");
      steps.emplace_back(std::stoull(item.substr(0, colon)),
                         std::stoull(item.substr(colon + 1)));
    }
    pick.schedule = schedule_from_table(base_rank, std::move(steps));
    pick.reducer = ReducerKind::stub;
    pick.reducer_name = "stub";
  } else {
    throw precondition_error("unknown schedule '" + choice +
                             "' (default | constant-k | staged | dp | hall | "
                             "square-only | table)");
  }
  return pick;
}

// ---------------------------------------------------------------------------
// build

struct BuildConfig {
  CommonOpts common;
  std::string fixture;
  std::string input;
  uint64_t p = 2;
  uint64_t power = 1;
  std::string schedule = "default";
  std::string table;
  bool assert_h2 = false;
  bool bypass = false;
};

std::string build_text(const PowerPipelineResult& r, const BuildSource& src,
                       const SchedulePick& pick, uint64_t power) {
  std::ostringstream out;
  out << "# powpres build: " << src.label << " power " << power << "\n";
  out << "# schedule: " << pick.schedule.name << "  reducer: " << pick.reducer_name
      << "\n";
  for (const auto& e : r.stage_log)
    out << "# stage: " << e.phase << " factors=" << e.factors
        << " generators=" << e.generators << " relators=" << e.relators
        << " verified=" << yesno(e.verified) << "\n";
  out << "# predicted_relator_count: " << r.predicted_relator_count << "\n";
  out << "# fully_verified: " << yesno(r.report.fully_verified) << "\n";
  if (r.report.reference_relator_count)
    out << "# reference_relator_count: " << *r.report.reference_relator_count
        << " deviation: " << *r.report.reference_deviation << "\n";
  for (const auto& n : r.report.notes) out << "# note: " << n << "\n";
  for (size_t i = 0; i < r.witnesses.words.size(); ++i)
    out << "# witness " << r.presentation.generator_name(static_cast<uint32_t>(i))
        << ": " << serialize_word(r.witnesses.words[i], r.presentation) << "\n";
  out << serialize_presentation(r.presentation);
  return out.str();
}

int cmd_build(const BuildConfig& cfg) {
  if (cfg.fixture.empty() == cfg.input.empty())
    throw precondition_error("build needs exactly one of --fixture or --input");
  const BuildSource src =
      cfg.fixture.empty() ? from_file(cfg.input) : from_fixture(cfg.fixture, cfg.p);

  const SchedulePick pick =
      resolve_schedule(cfg.schedule, cfg.table, src.pres.generator_count(),
                       cfg.fixture == "bp");
  PipelineOptions opt;
  opt.schedule = pick.schedule;
  opt.reducer = pick.reducer;
  opt.asserted_h2_trivial = src.superperfect || cfg.assert_h2;
  opt.bypass_hypothesis_check = cfg.bypass;
  opt.base_images = src.images;

  const PowerPipelineResult r = power_presentation(src.pres, src.witnesses,
                                                   cfg.power, opt);

  if (cfg.common.format == "json") {
    Json j = pipeline_result_to_json(r);
    emit(cfg.common.output, j.dump(2) + "\n");
  } else {
    emit(cfg.common.output, build_text(r, src, pick, cfg.power));
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
  CommonOpts common;
  std::string fixture;
  std::string input;
  std::string images_path;
  uint64_t p = 2;
  uint64_t power = 1;
  bool tc = false;
  bool ss = false;
  bool h1 = false;
  std::string strategy = "hlt";
  uint64_t max_cosets = 5'000'000;
};

struct LoadedTarget {
  Presentation pres;
  uint64_t factors = 1;
  std::vector<Permutation> images;  // empty when none available
  std::optional<BigInt> expected_order;
};

LoadedTarget load_target(const VerifyConfig& cfg) {
  LoadedTarget t;
  std::optional<Fixture> fx;
  if (!cfg.fixture.empty())
    fx = cfg.fixture == "bp" ? bp_reduced_fixture(cfg.p) : fixture_by_name(cfg.fixture);

  if (!cfg.input.empty()) {
    const std::string text = read_file(cfg.input);
    if (looks_like_json(text)) {
      Json j = Json::parse(text);
      if (j.contains("presentation")) {  // pipeline result
        t.pres = presentation_from_json(j.at("presentation"));
        t.factors = j.at("dictionary").at("num_factors").get<uint64_t>();
        if (j.contains("images") && !j.at("images").is_null())
          for (const auto& e : j.at("images"))
            t.images.push_back(permutation_from_json(e));
      } else {
        t.pres = presentation_from_json(j);
        t.factors = cfg.power;
      }
    } else {
      t.pres = parse_presentation(text);
      t.factors = cfg.power;
    }
    if (t.images.empty() && fx && fx->pres.generator_count() == t.pres.generator_count() &&
        t.factors == 1)
      t.images = fx->images;
  } else if (fx) {
    t.pres = fx->pres;
    t.images = fx->images;
    t.factors = 1;
  } else {
    throw precondition_error("verify needs --input and/or --fixture");
  }

  if (!cfg.images_path.empty()) {
    t.images.clear();
    for (const auto& e : Json::parse(read_file(cfg.images_path)))
      t.images.push_back(permutation_from_json(e));
  }
  if (fx && fx->order > 0)
    t.expected_order = bigint_pow(fx->order, static_cast<unsigned>(t.factors));
  return t;
}

int cmd_verify(const VerifyConfig& cfg) {
  if (!cfg.tc && !cfg.ss && !cfg.h1)
    throw precondition_error("verify needs at least one of --tc, --ss, --h1");
  const LoadedTarget t = load_target(cfg);

  Json checks = Json::array();
  std::ostringstream text;
  bool all_pass = true;
  bool inconclusive = false;

  if (cfg.h1) {
    const AbelianInvariants inv = abelianization(t.pres);
    const bool pass = inv.is_trivial();
    all_pass = all_pass && pass;
    Json c;
    c["name"] = "h1";
    Json tor = Json::array();
    for (const auto& d : inv.torsion) tor.push_back(d.str());
    c["torsion"] = std::move(tor);
    c["free_rank"] = inv.free_rank;
    c["pass"] = pass;
    checks.push_back(std::move(c));
    text << "check h1: torsion=[";
    for (size_t i = 0; i < inv.torsion.size(); ++i)
      text << (i ? " " : "") << inv.torsion[i].str();
    text << "] free_rank=" << inv.free_rank << " -> " << (pass ? "pass" : "FAIL")
         << "\n";
  }

  if (cfg.tc) {
    EnumerationLimits limits;
    limits.max_cosets = cfg.max_cosets;
    if (cfg.strategy == "hlt")
      limits.strategy = TCStrategy::hlt;
    else if (cfg.strategy == "felsch")
      limits.strategy = TCStrategy::felsch;
    else
      throw precondition_error("unknown strategy '" + cfg.strategy + "'");
    const EnumerationResult res = todd_coxeter(t.pres, {}, limits);
    Json c;
    c["name"] = "tc";
    c["strategy"] = cfg.strategy;
    if (res.status == TCStatus::overflow) {
      inconclusive = true;
      c["status"] = "overflow";
      c["cosets_defined"] = res.stats.total_defined;
      c["cosets_alive"] = res.stats.alive;
      c["pass"] = false;
      checks.push_back(std::move(c));
      text << "check tc: overflow after " << res.stats.total_defined
           << " cosets (alive " << res.stats.alive << ") -> INCONCLUSIVE\n";
    } else {
      const bool pass = !t.expected_order || BigInt(res.index) == *t.expected_order;
      all_pass = all_pass && pass;
      c["status"] = "success";
      c["index"] = res.index;
      c["expected"] = t.expected_order ? Json(t.expected_order->str()) : Json(nullptr);
      c["cosets_defined"] = res.stats.total_defined;
      c["max_alive"] = res.stats.max_alive;
      c["coincidences"] = res.stats.coincidences;
      c["pass"] = pass;
      checks.push_back(std::move(c));
      text << "check tc: index=" << res.index;
      if (t.expected_order) text << " expected=" << t.expected_order->str();
      text << " strategy=" << cfg.strategy << " -> " << (pass ? "pass" : "FAIL")
           << "\n";
    }
  }

  if (cfg.ss) {
    if (t.images.size() != t.pres.generator_count())
      throw precondition_error(
          "ss check needs one permutation image per generator (from the input "
          "file, --images, or a rank-matching --fixture)");
    const HomReport rep = verify_presentation_hom({t.pres, t.images}, t.expected_order);
    const bool pass = rep.ok();
    all_pass = all_pass && pass;
    Json c = hom_report_to_json(rep);
    c["name"] = "ss";
    c["pass"] = pass;
    checks.push_back(std::move(c));
    text << "check ss: relators_trivial=" << yesno(rep.relators_trivial)
         << " order=" << rep.generated_order.str();
    if (rep.expected_order) text << " expected=" << rep.expected_order->str();
    text << " -> " << (pass ? "pass" : "FAIL") << "\n";
  }

  const std::string verdict =
      inconclusive ? "INCONCLUSIVE" : (all_pass ? "PASS" : "FAIL");
  if (cfg.common.format == "json") {
    Json out;
    out["checks"] = std::move(checks);
    out["pass"] = all_pass && !inconclusive;
    out["inconclusive"] = inconclusive;
    emit(cfg.common.output, out.dump(2) + "\n");
  } else {
    text << "result: " << verdict << "\n";
    emit(cfg.common.output, text.str());
  }
  if (inconclusive) return kExitInconclusive;
  return all_pass ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// count

struct CountConfig {
  CommonOpts common;
  uint64_t k = 2;
  uint64_t l = 2;
  uint64_t max_n = 6;
};

int cmd_count(const CountConfig& cfg) {
  if (cfg.k == 0 || cfg.l == 0)
    throw precondition_error("count needs positive --k and --l");
  std::ostringstream csv;
  Json rows = Json::array();
  csv << "# naive: n = factor count; constant_k / staged_k: stages, i.e. "
         "G^(2^n); bp: B_p^(2^n). staged_k starts at n = 2.\n";
  csv << "n,naive_gens,naive_rels,constant_k_gens,constant_k_rels,"
         "staged_k_gens,staged_k_rels,bp_gens,bp_rels\n";
  for (uint64_t n = 1; n <= cfg.max_n; ++n) {
    const CountPair naive = predicted_counts(cfg.k, cfg.l, n, CountRegime::naive);
    const CountPair ck = predicted_counts(cfg.k, cfg.l, n, CountRegime::constant_k);
    std::optional<CountPair> staged;
    if (n >= 2) staged = predicted_counts(cfg.k, cfg.l, n, CountRegime::staged_k);
    const CountPair bp = predicted_counts(cfg.k, cfg.l, n, CountRegime::bp_family);

    csv << n << "," << naive.generators << "," << naive.relators << ","
        << ck.generators << "," << ck.relators << ",";
    if (staged)
      csv << staged->generators << "," << staged->relators;
    else
      csv << "-,-";
    csv << "," << bp.generators << "," << bp.relators << "\n";

    Json row;
    row["n"] = n;
    row["naive"] = Json{{"generators", naive.generators}, {"relators", naive.relators}};
    row["constant_k"] = Json{{"generators", ck.generators}, {"relators", ck.relators}};
    row["staged_k"] = staged ? Json{{"generators", staged->generators},
                                    {"relators", staged->relators}}
                             : Json(nullptr);
    row["bp_family"] = Json{{"generators", bp.generators}, {"relators", bp.relators}};
    rows.push_back(std::move(row));
  }
  if (cfg.common.format == "json") {
    Json out;
    out["k"] = cfg.k;
    out["l"] = cfg.l;
    out["rows"] = std::move(rows);
    emit(cfg.common.output, out.dump(2) + "\n");
  } else {
    emit(cfg.common.output, csv.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reduce: Tietze script runner
//
// Script grammar (one move per line, # comments):
//   add NAME := WORD      new generator NAME defined by WORD
//   remove NAME := WORD   remove NAME, replacing it by WORD
//   kill WORD             adjoin WORD as a relator (quotient move)

struct ReduceConfig {
  CommonOpts common;
  std::string input;
  std::string script;
};

Presentation load_presentation_file(const std::string& path) {
  const std::string text = read_file(path);
  if (looks_like_json(text)) {
    Json j = Json::parse(text);
    return presentation_from_json(j.contains("presentation") ? j.at("presentation") : j);
  }
  return parse_presentation(text);
}

int cmd_reduce(const ReduceConfig& cfg) {
  Presentation p = load_presentation_file(cfg.input);
  std::istringstream script(read_file(cfg.script));
  std::string line;
  int line_no = 0;
  while (std::getline(script, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    auto rest_after = [&](const std::string& sep) {
      const auto pos = line.find(sep);
      if (pos == std::string::npos)
        throw precondition_error("script line " + std::to_string(line_no) +
                                 ": expected '" + sep + "'");
      return line.substr(pos + sep.size());
    };
    if (op == "add" || op == "remove") {
      std::string name;
      ls >> name;
      if (name.empty())
        throw precondition_error("script line " + std::to_string(line_no) +
                                 ": expected a generator name");
      const std::string word_text = rest_after(":=");
      if (op == "add")
        p = tietze_add_generator(p, name, parse_word(word_text, p, line_no));
      else
        p = tietze_remove_generator(p, name, parse_word(word_text, p, line_no));
    } else if (op == "kill") {
      const std::string word_text = line.substr(line.find("kill") + 4);
      p = kill_generators(p, {parse_word(word_text, p, line_no)});
    } else {
      throw precondition_error("script line " + std::to_string(line_no) +
                               ": unknown move '" + op + "'");
    }
  }
  if (cfg.common.format == "json")
    emit(cfg.common.output, presentation_to_json(p).dump(2) + "\n");
  else
    emit(cfg.common.output, serialize_presentation(p));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"concise presentations of direct powers of perfect groups"};
  app.require_subcommand(1);

  BuildConfig bcfg;
  VerifyConfig vcfg;
  CountConfig ccfg;
  ReduceConfig rcfg;

  auto add_common = [](CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--format", c.format, "output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("-o,--output", c.output, "output file (default stdout)");
    cmd->add_option("--seed", c.seed,
                    "seed for budgeted searches (reserved; runs are "
                    "deterministic)");
  };

  CLI::App* build = app.add_subcommand("build", "construct a power presentation");
  build->add_option("--fixture", bcfg.fixture, "builtin example: a5 | sl25 | bp");
  build->add_option("--input", bcfg.input,
                    "JSON file with presentation + witnesses (+ images)");
  build->add_option("--p", bcfg.p, "parameter p for the bp fixture");
  build->add_option("--power", bcfg.power, "target power m >= 1");
  build->add_option("--schedule", bcfg.schedule,
                    "generator-bound schedule: default | constant-k | staged | "
                    "dp | hall | square-only | table");
  build->add_option("--table", bcfg.table, "user table, e.g. 4:6,16:4");
  build->add_flag("--assert-h2-trivial", bcfg.assert_h2,
                  "assert the input group has trivial second homology");
  build->add_flag("--bypass-hypothesis-check", bcfg.bypass,
                  "skip the perfectness and homology guards");
  add_common(build, bcfg.common);

  CLI::App* verify = app.add_subcommand("verify", "check a presentation");
  verify->add_option("--input", vcfg.input,
                     "presentation (text/JSON) or build-result JSON");
  verify->add_option("--fixture", vcfg.fixture,
                     "builtin reference: a5 | sl25 | bp (expected orders, images)");
  verify->add_option("--images", vcfg.images_path,
                     "JSON array of permutations for --ss");
  verify->add_option("--p", vcfg.p, "parameter p for the bp fixture");
  verify->add_option("--power", vcfg.power,
                     "declared factor count for bare presentations");
  verify->add_flag("--tc", vcfg.tc, "coset enumeration over the trivial subgroup");
  verify->add_flag("--ss", vcfg.ss, "permutation check: relators + group order");
  verify->add_flag("--h1", vcfg.h1, "abelianization invariants (expect trivial)");
  verify->add_option("--strategy", vcfg.strategy, "tc strategy: hlt | felsch");
  verify->add_option("--max-cosets", vcfg.max_cosets, "coset table limit");
  add_common(verify, vcfg.common);

  CLI::App* count = app.add_subcommand("count", "closed-form size tables");
  count->add_option("--k", ccfg.k, "base generator count");
  count->add_option("--l", ccfg.l, "base relator count");
  count->add_option("--max-n", ccfg.max_n, "table rows n = 1..max_n");
  add_common(count, ccfg.common);

  CLI::App* reduce = app.add_subcommand("reduce", "run a Tietze move script");
  reduce->add_option("--input", rcfg.input, "presentation file (text or JSON)")
      ->required();
  reduce->add_option("--script", rcfg.script, "move script file")->required();
  add_common(reduce, rcfg.common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(bcfg);
    if (verify->parsed()) return cmd_verify(vcfg);
    if (count->parsed()) return cmd_count(ccfg);
    if (reduce->parsed()) return cmd_reduce(rcfg);
  } catch (const hypothesis_error& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const factorization_error& e) {
    std::cerr << "factorization failure: " << e.what() << "\n";
    return kExitFactorization;
  } catch (const budget_error& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}
