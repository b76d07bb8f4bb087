#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "resonant/normalform.hpp"
#include "resonant/smalldivisor.hpp"
#include "resonant/versal.hpp"

namespace resonant {

using Json = nlohmann::ordered_json;

/// One input term c * x^K mu^B d/dx_target.
struct FieldTerm {
    unsigned target = 0;             // 0-based internally; 1-based in files
    std::vector<unsigned> exponent;  // x-part, length d
    std::vector<unsigned> mu_exponent;
    Cplx coefficient;
};

/// A parsed problem file: exact frequency data, the input field, and the
/// run parameters.
struct ProblemFile {
    unsigned dim = 0;
    unsigned mu_count = 0;
    unsigned truncation = 8;
    unsigned precision = 256;
    unsigned deg_bound = kDefaultDegBound;
    NormalFormMode mode = NormalFormMode::versal;
    FrequencyVector freq;
    std::vector<FieldTerm> field_terms;
    Json raw;  // the parsed document, echoed into results

    static ProblemFile load(const std::string& path);
    static ProblemFile from_json(const Json& doc);

    /// Builds the input field over the given ring and checks that its
    /// degree-1 part is exactly the diagonal implied by lambda.
    Derivation build_field(const RingPtr& ring) const;
};

Json series_to_json(const Series& s);
Series series_from_json(const RingPtr& ring, const Json& doc);
Json derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const RingPtr& ring, const Json& doc);

Json resonance_to_json(const ResonanceBasis& basis);
Json normal_form_to_json(const SolverContext& ctx, const NormalFormResult& result);
Json versal_to_json(const VersalOutput& out, const BigFloat& invariance_residual);
Json bruno_report_to_json(const BrunoReport& rep);

/// Writes a result document with a stable layout; bytes are deterministic
/// for a fixed input and version.
void write_result(const Json& result, const std::string& path);
std::string dump_result(const Json& result);

extern const char* const kResultSchema;
extern const char* const kVersionString;

}  // namespace resonant
