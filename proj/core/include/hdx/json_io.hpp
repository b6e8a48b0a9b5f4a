#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "hdx/boolean_fkn.hpp"
#include "hdx/decomposition.hpp"
#include "hdx/eposet.hpp"
#include "hdx/expansion.hpp"

namespace hdx {

using Json = nlohmann::ordered_json;

/// Deterministic writer: object keys in insertion order, floating values with
/// 17 significant digits, two-space indentation.
void write_json(std::ostream& out, const Json& value);
std::string dump_json(const Json& value);

Json face_to_json(const Face& f);

Json to_json(const ExpansionReport& report, const WeightedComplex& X);
Json to_json(const LevelDecomposition& dec, const GradedPoset& X,
             const WeightedComplex* complex = nullptr);
Json to_json(const EposetFit& fit);
Json to_json(const EposetEigentable& table);
Json to_json(const SdCriterion& sd);
Json to_json(const ForcingReport& report, const GradedPoset& P);
Json to_json(const OrthogonalityReport& report);
Json to_json(const FknResult& result);

}  // namespace hdx
