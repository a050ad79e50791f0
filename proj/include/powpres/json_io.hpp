#pragma once

#include <string>
#include <vector>

#include "powpres/homomorphism.hpp"
#include "powpres/jsonx.hpp"
#include "powpres/permutation.hpp"
#include "powpres/pipeline.hpp"
#include "powpres/presentation.hpp"

namespace powpres {

// JSON mirrors of the core value types. Output order is fixed (ordered keys,
// canonical word spelling), so equal values serialize byte-identically; every
// *_from_json re-parses what its *_to_json wrote, bit-exactly.

Json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);

Json dictionary_to_json(const CoordinateDictionary& d, const Presentation& p);
CoordinateDictionary dictionary_from_json(const Json& j, const Presentation& p);

Json witnesses_to_json(const CommutatorWitnesses& w, const Presentation& p);
CommutatorWitnesses witnesses_from_json(const Json& j, const Presentation& p);

// Output: {"images": [...]}. Input additionally accepts
// {"degree": n, "cycles": [[..], ..]}.
Json permutation_to_json(const Permutation& g);
Permutation permutation_from_json(const Json& j);

Json stage_log_to_json(const std::vector<StageEntry>& log);
Json run_report_to_json(const RunReport& r);
Json pipeline_result_to_json(const PowerPipelineResult& r);

Json hom_report_to_json(const HomReport& r);

// Structural validator for the subset of JSON Schema the shipped schemas
// use: type, properties, required, items, enum, additionalProperties,
// minItems. Throws precondition_error naming the offending path.
void validate_schema(const Json& doc, const Json& schema);

}  // namespace powpres
