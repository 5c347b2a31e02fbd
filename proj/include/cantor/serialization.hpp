#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cantor/cantor_model.hpp"
#include "cantor/nesting.hpp"

namespace cantor {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaId = "cantor-nest/1";

// Scalar encodings: Rational as the canonical "num/den" string, Interval as
// [lo, hi, lo_closed, hi_closed].
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json interval_to_json(const Interval& iv);
Interval interval_from_json(const Json& j);
Json union_to_json(const IntervalUnion& u);
IntervalUnion union_from_json(const Json& j);

// Set-exchange format: {"schema", "kind": "gap"|"digit"|"cover", ...}.
Json gap_set_to_json(const GapCantor& gc, const GapBudget& budget);
GapCantor gap_set_from_json(const Json& j);
Json digit_spec_to_json(const DigitCantorSpec& spec);
DigitCantorSpec digit_spec_from_json(const Json& j);
Json cover_to_json(const CoverApprox& cover);
CoverApprox cover_from_json(const Json& j);

struct LoadedSet {
    std::optional<GapCantor> gaps;
    std::optional<DigitCantorSpec> spec;
    std::optional<CoverApprox> cover;
};

LoadedSet set_from_json(const Json& j);
LoadedSet load_set_file(const std::string& path);

Json dimension_to_json(const DimensionEnclosure& d);
Json cert_to_json(const FuzzyMeasureCert& cert);
Json cp_report_to_json(const CpReport& r);
Json p_estimate_to_json(const PEstimate& e);
Json nesting_report_to_json(const NestingReport& r, bool include_sets = false);

/// Constructions registered by name with a JSON parameter schema; the CLI and
/// tests instantiate by name. Rational parameters are "num/den" strings.
std::vector<std::string> construction_names();
Json construction_schema(const std::string& name);
LoadedSet build_construction(const std::string& name, const Json& params);

/// Writes via a temp file plus rename so readers never observe a torn file.
void write_file_atomic(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace cantor
