#include "powpres/json_io.hpp"

#include <utility>

#include "powpres/constructions.hpp"
#include "powpres/errors.hpp"
#include "powpres/fixtures.hpp"
#include "powpres/tietze.hpp"

namespace powpres {

namespace {

const Json& need(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw precondition_error(std::string(what) + ": missing key '" + key + "'");
  return j.at(key);
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array())
    throw precondition_error(std::string(what) + ": expected an array");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_string())
      throw precondition_error(std::string(what) + ": expected strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<Word> parse_words(const Json& j, const Presentation& p, const char* what) {
  std::vector<Word> out;
  for (const auto& s : string_list(j, what)) out.push_back(parse_word(s, p));
  return out;
}

Json words_json(const std::vector<Word>& ws, const Presentation& p) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(serialize_word(w, p));
  return out;
}

}  // namespace

Json presentation_to_json(const Presentation& p) {
  Json out;
  out["generators"] = p.generator_names();
  out["relators"] = words_json(p.relators(), p);
  Json prov = Json::array();
  for (const auto& step : p.provenance())
    prov.push_back(Json{{"op", step.op}, {"args", step.args}});
  out["provenance"] = std::move(prov);
  return out;
}

Presentation presentation_from_json(const Json& j) {
  auto names = string_list(need(j, "generators", "presentation"), "generators");
  Presentation skeleton = Presentation::create(names, {}, {});
  auto relators =
      parse_words(need(j, "relators", "presentation"), skeleton, "relators");

  Provenance prov;
  if (j.contains("provenance")) {
    const Json& steps = j.at("provenance");
    if (!steps.is_array())
      throw precondition_error("presentation: provenance must be an array");
    for (const auto& s : steps) {
      ProvenanceStep step;
      step.op = need(s, "op", "provenance step").get<std::string>();
      step.args = need(s, "args", "provenance step");
      prov.push_back(std::move(step));
    }
  } else {
    // Same root a freshly parsed text presentation gets.
    Presentation tmp = Presentation::create(names, relators, {});
    Json root;
    root["generators"] = names;
    root["relators"] = words_json(relators, tmp);
    prov.push_back({"parsed", std::move(root)});
  }
  return Presentation::create(std::move(names), std::move(relators), std::move(prov));
}

Json dictionary_to_json(const CoordinateDictionary& d, const Presentation& p) {
  Json out;
  out["num_factors"] = d.num_factors;
  out["base_rank"] = d.base_rank;
  out["entries"] = words_json(d.entries, p);
  return out;
}

CoordinateDictionary dictionary_from_json(const Json& j, const Presentation& p) {
  CoordinateDictionary d;
  d.num_factors = need(j, "num_factors", "dictionary").get<uint32_t>();
  d.base_rank = need(j, "base_rank", "dictionary").get<uint32_t>();
  d.entries = parse_words(need(j, "entries", "dictionary"), p, "entries");
  if (d.entries.size() != size_t(d.num_factors) * d.base_rank)
    throw precondition_error("dictionary: entry count does not match shape");
  return d;
}

Json witnesses_to_json(const CommutatorWitnesses& w, const Presentation& p) {
  return words_json(w.words, p);
}

CommutatorWitnesses witnesses_from_json(const Json& j, const Presentation& p) {
  return CommutatorWitnesses{parse_words(j, p, "witnesses")};
}

Json permutation_to_json(const Permutation& g) {
  Json out;
  out["images"] = g.images();
  return out;
}

Permutation permutation_from_json(const Json& j) {
  if (j.contains("images"))
    return Permutation::from_images(j.at("images").get<std::vector<uint32_t>>());
  if (j.contains("cycles")) {
    const uint32_t degree = need(j, "degree", "permutation").get<uint32_t>();
    auto cycles =
        need(j, "cycles", "permutation").get<std::vector<std::vector<uint32_t>>>();
    return Permutation::from_cycles(degree, cycles);
  }
  throw precondition_error("permutation: need 'images' or 'degree'+'cycles'");
}

Json stage_log_to_json(const std::vector<StageEntry>& log) {
  Json out = Json::array();
  for (const auto& e : log)
    out.push_back(Json{{"phase", e.phase},
                       {"factors", e.factors},
                       {"generators", e.generators},
                       {"relators", e.relators},
                       {"verified", e.verified}});
  return out;
}

Json run_report_to_json(const RunReport& r) {
  Json out;
  out["fully_verified"] = r.fully_verified;
  out["notes"] = r.notes;
  out["reference_relator_count"] =
      r.reference_relator_count ? Json(*r.reference_relator_count) : Json(nullptr);
  out["reference_deviation"] =
      r.reference_deviation ? Json(*r.reference_deviation) : Json(nullptr);
  return out;
}

Json pipeline_result_to_json(const PowerPipelineResult& r) {
  Json out;
  out["presentation"] = presentation_to_json(r.presentation);
  out["dictionary"] = dictionary_to_json(r.dictionary, r.presentation);
  out["witnesses"] = witnesses_to_json(r.witnesses, r.presentation);
  out["predicted_relator_count"] = r.predicted_relator_count;
  out["stage_log"] = stage_log_to_json(r.stage_log);
  if (r.images) {
    Json imgs = Json::array();
    for (const auto& g : *r.images) imgs.push_back(permutation_to_json(g));
    out["images"] = std::move(imgs);
  } else {
    out["images"] = nullptr;
  }
  out["report"] = run_report_to_json(r.report);
  return out;
}

Json hom_report_to_json(const HomReport& r) {
  Json out;
  out["relators_trivial"] = r.relators_trivial;
  out["violated_relators"] = r.violated_relators;
  out["generated_order"] = r.generated_order.str();
  out["expected_order"] = r.expected_order ? Json(r.expected_order->str()) : Json(nullptr);
  out["order_matches"] = r.order_matches;
  out["ok"] = r.ok();
  return out;
}

// --- provenance replay -------------------------------------------------------

namespace {

Presentation presentation_from_parts(const Json& args, const char* what) {
  auto names = string_list(need(args, "generators", what), what);
  Presentation skeleton = Presentation::create(names, {}, {});
  auto relators = parse_words(need(args, "relators", what), skeleton, what);
  return Presentation::create(std::move(names), std::move(relators), {});
}

Presentation replay_root(const ProvenanceStep& step) {
  const Json& a = step.args;
  if (step.op == "parsed") {
    Presentation body = presentation_from_parts(a, "parsed step");
    Json root;
    root["generators"] = body.generator_names();
    root["relators"] = words_json(body.relators(), body);
    return body.with_provenance({{"parsed", std::move(root)}});
  }
  if (step.op == "naive_power") {
    Presentation base = Presentation::create(
        string_list(need(a, "base_generators", "naive_power step"), "base_generators"),
        {}, {});
    auto relators = parse_words(need(a, "base_relators", "naive_power step"), base,
                                "base_relators");
    base = Presentation::create(base.generator_names(), std::move(relators), {});
    return naive_power(base, need(a, "m", "naive_power step").get<uint32_t>()).pres;
  }
  if (step.op == "builtin_example")
    return fixture_by_name(need(a, "name", "builtin_example step").get<std::string>())
        .pres;
  if (step.op == "bp")
    return bp_fixture(need(a, "p", "bp step").get<uint64_t>()).pres;
  if (step.op == "synthetic")
    return synthetic_fixture(need(a, "k", "synthetic step").get<uint32_t>(),
                             need(a, "l", "synthetic step").get<uint32_t>())
        .pres;
  throw precondition_error("replay: unknown root op '" + step.op + "'");
}

Presentation replay_step(Presentation cur, const ProvenanceStep& step) {
  const Json& a = step.args;
  if (step.op == "naive_product")
    return naive_product(cur,
                         presentation_from_parts(need(a, "other", "naive_product step"),
                                                 "naive_product step"));
  if (step.op == "add_generator")
    return tietze_add_generator(
        cur, need(a, "name", "add_generator step").get<std::string>(),
        parse_word(need(a, "definition", "add_generator step").get<std::string>(), cur));
  if (step.op == "remove_generator")
    return tietze_remove_generator(
        cur, need(a, "name", "remove_generator step").get<std::string>(),
        parse_word(need(a, "replacement", "remove_generator step").get<std::string>(),
                   cur));
  if (step.op == "add_relator") {
    RelatorDerivation deriv;
    for (const auto& t : need(a, "terms", "add_relator step")) {
      RelatorDerivation::Term term;
      term.relator_index = need(t, "relator", "derivation term").get<size_t>();
      term.exponent = need(t, "exponent", "derivation term").get<int>();
      term.conjugator =
          parse_word(need(t, "conjugator", "derivation term").get<std::string>(), cur);
      deriv.terms.push_back(std::move(term));
    }
    return tietze_add_relator(
        cur, parse_word(need(a, "word", "add_relator step").get<std::string>(), cur),
        deriv);
  }
  if (step.op == "remove_relator")
    return tietze_remove_relator(cur,
                                 need(a, "index", "remove_relator step").get<size_t>());
  if (step.op == "kill")
    return kill_generators(cur,
                           parse_words(need(a, "words", "kill step"), cur, "kill step"));
  if (step.op == "rewrite_generating_set") {
    GeneratingSetRewrite rw;
    rw.names = string_list(need(a, "names", "rewrite step"), "rewrite step");
    rw.new_in_old = parse_words(need(a, "new_in_old", "rewrite step"), cur, "new_in_old");
    Presentation skeleton = Presentation::create(rw.names, {}, {});
    rw.old_in_new =
        parse_words(need(a, "old_in_new", "rewrite step"), skeleton, "old_in_new");
    rw.verified = need(a, "verified", "rewrite step").get<bool>();
    return rewrite_to_generating_set(cur, rw);
  }
  if (step.op == "uce")
    return uce_presentation(
        cur, CommutatorWitnesses{
                 parse_words(need(a, "witnesses", "uce step"), cur, "witnesses")});
  if (step.op == "square") {
    CommutatorWitnesses w{
        parse_words(need(a, "witnesses", "square step"), cur, "witnesses")};
    // The output presentation depends only on the input and the witnesses;
    // the dictionary argument shapes the (discarded) output dictionary. The
    // hypothesis was the original caller's to establish, so no re-check here.
    SquareOptions opt;
    opt.bypass_hypothesis_check = true;
    return square_presentation(
               cur, w,
               CoordinateDictionary::identity(
                   static_cast<uint32_t>(cur.generator_count())),
               opt)
        .pres;
  }
  throw precondition_error("replay: unknown op '" + step.op + "'");
}

}  // namespace

Presentation replay(const Provenance& trace) {
  if (trace.empty()) throw precondition_error("replay: empty provenance");
  Presentation cur = replay_root(trace.front());
  for (size_t i = 1; i < trace.size(); ++i) cur = replay_step(std::move(cur), trace[i]);
  return cur;
}

// --- schema validation -------------------------------------------------------

namespace {

bool type_matches(const Json& doc, const std::string& t) {
  if (t == "object") return doc.is_object();
  if (t == "array") return doc.is_array();
  if (t == "string") return doc.is_string();
  if (t == "integer") return doc.is_number_integer();
  if (t == "number") return doc.is_number();
  if (t == "boolean") return doc.is_boolean();
  if (t == "null") return doc.is_null();
  throw precondition_error("schema: unsupported type '" + t + "'");
}

void check(const Json& doc, const Json& schema, const std::string& path) {
  if (!schema.is_object())
    throw precondition_error("schema: schema node at " + path + " must be an object");

  if (schema.contains("type")) {
    const Json& t = schema.at("type");
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(doc, t.get<std::string>());
    } else if (t.is_array()) {
      for (const auto& alt : t) ok = ok || type_matches(doc, alt.get<std::string>());
    }
    if (!ok)
      throw precondition_error("schema violation at " + path + ": wrong type (want " +
                               t.dump() + ")");
  }

  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& v : schema.at("enum")) ok = ok || v == doc;
    if (!ok)
      throw precondition_error("schema violation at " + path + ": value not in enum");
  }

  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const auto& r : schema.at("required"))
        if (!doc.contains(r.get<std::string>()))
          throw precondition_error("schema violation at " + path +
                                   ": missing required key '" + r.get<std::string>() +
                                   "'");
    const Json* props =
        schema.contains("properties") ? &schema.at("properties") : nullptr;
    if (props)
      for (auto it = props->begin(); it != props->end(); ++it)
        if (doc.contains(it.key()))
          check(doc.at(it.key()), it.value(), path + "/" + it.key());
    if (schema.contains("additionalProperties") &&
        schema.at("additionalProperties").is_boolean() &&
        !schema.at("additionalProperties").get<bool>())
      for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!props || !props->contains(it.key()))
          throw precondition_error("schema violation at " + path +
                                   ": unexpected key '" + it.key() + "'");
  }

  if (doc.is_array()) {
    if (schema.contains("minItems") &&
        doc.size() < schema.at("minItems").get<size_t>())
      throw precondition_error("schema violation at " + path + ": too few items");
    if (schema.contains("items")) {
      size_t i = 0;
      for (const auto& e : doc) check(e, schema.at("items"), path + "/" + std::to_string(i++));
    }
  }
}

}  // namespace

void validate_schema(const Json& doc, const Json& schema) {
  check(doc, schema, "");
}

}  // namespace powpres
