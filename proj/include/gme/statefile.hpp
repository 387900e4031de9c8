#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gme/criteria.hpp"
#include "gme/states.hpp"

namespace gme::io {

// Malformed input: unreadable file, bad JSON, schema violations. Distinct
// from std::invalid_argument, which the physics validation throws.
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// On-disk state document:
//   {"kind": "density"|"pure", "d": <int>, "label": <string?>, "data": ...}
// with complex numbers as [re, im] pairs; "data" is a flat vector of pairs
// for kind "pure" and a nested row-major matrix of pairs for kind "density".
// "d" is mandatory; it is never inferred from the payload length.
struct StateFile {
    std::string kind; // "pure" or "density"
    int d = 0;
    std::optional<std::string> label;
    states::PureState pure;        // populated when kind == "pure"
    bloch::DensityMatrix density;  // populated when kind == "density"
};

StateFile parse_state(const nlohmann::json& j, const bloch::ValidationTolerances& tol = {});
StateFile load_state_file(const std::string& path, const bloch::ValidationTolerances& tol = {});

nlohmann::json state_to_json(const states::PureState& psi, const std::optional<std::string>& label = {});
nlohmann::json state_to_json(const bloch::DensityMatrix& rho, const std::optional<std::string>& label = {});
void save_state_file(const std::string& path, const nlohmann::json& doc);

nlohmann::json bounds_to_json(const criteria::BoundTable& bounds);

// Criterion report serialization; round-trips losslessly.
nlohmann::json report_to_json(const criteria::CriterionReport& report);
criteria::CriterionReport report_from_json(const nlohmann::json& j);

nlohmann::json probe_to_json(const criteria::ProbeReport& probe);

} // namespace gme::io
