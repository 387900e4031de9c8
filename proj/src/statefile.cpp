#include "gme/statefile.hpp"

#include <fstream>

namespace gme::io {

using nlohmann::json;

namespace {

linalg::Complex parse_complex(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw format_error(std::string("state file: ") + where + " entries must be [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json dump_complex(linalg::Complex z) { return json::array({z.real(), z.imag()}); }

} // namespace

StateFile parse_state(const json& j, const bloch::ValidationTolerances& tol) {
    if (!j.is_object()) {
        throw format_error("state file: top level must be a JSON object");
    }
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw format_error("state file: missing string field 'kind'");
    }
    if (!j.contains("d") || !j["d"].is_number_integer()) {
        throw format_error("state file: missing integer field 'd'");
    }
    if (!j.contains("data")) {
        throw format_error("state file: missing field 'data'");
    }

    StateFile out;
    out.kind = j["kind"].get<std::string>();
    out.d = j["d"].get<int>();
    if (j.contains("label")) {
        if (!j["label"].is_string()) {
            throw format_error("state file: 'label' must be a string");
        }
        out.label = j["label"].get<std::string>();
    }
    if (out.d < 2) {
        throw format_error("state file: 'd' must be >= 2");
    }
    const auto dim = static_cast<std::size_t>(out.d) * out.d * out.d;
    const json& data = j["data"];

    if (out.kind == "pure") {
        if (!data.is_array() || data.size() != dim) {
            throw format_error("state file: 'data' must hold exactly d^3 amplitude pairs");
        }
        out.pure.d = out.d;
        out.pure.amplitudes.resize(static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim; ++i) {
            out.pure.amplitudes(static_cast<Eigen::Index>(i)) = parse_complex(data[i], "amplitude");
        }
        states::validate_pure(out.pure, std::max(tol.trace, 1e-12));
    } else if (out.kind == "density") {
        if (!data.is_array() || data.size() != dim) {
            throw format_error("state file: 'data' must hold exactly d^3 matrix rows");
        }
        out.density.d = out.d;
        out.density.matrix.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t r = 0; r < dim; ++r) {
            const json& row = data[r];
            if (!row.is_array() || row.size() != dim) {
                throw format_error("state file: each matrix row must hold exactly d^3 entry pairs");
            }
            for (std::size_t c = 0; c < dim; ++c) {
                out.density.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    parse_complex(row[c], "matrix");
            }
        }
        bloch::validate_density(out.density, tol);
    } else {
        throw format_error("state file: 'kind' must be \"pure\" or \"density\"");
    }
    return out;
}

StateFile load_state_file(const std::string& path, const bloch::ValidationTolerances& tol) {
    std::ifstream in(path);
    if (!in) {
        throw format_error("cannot read state file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw format_error("state file " + path + ": " + e.what());
    }
    return parse_state(j, tol);
}

json state_to_json(const states::PureState& psi, const std::optional<std::string>& label) {
    json data = json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
        data.push_back(dump_complex(psi.amplitudes(i)));
    }
    json j{{"kind", "pure"}, {"d", psi.d}, {"data", std::move(data)}};
    if (label) j["label"] = *label;
    return j;
}

json state_to_json(const bloch::DensityMatrix& rho, const std::optional<std::string>& label) {
    json data = json::array();
    for (Eigen::Index r = 0; r < rho.matrix.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < rho.matrix.cols(); ++c) {
            row.push_back(dump_complex(rho.matrix(r, c)));
        }
        data.push_back(std::move(row));
    }
    json j{{"kind", "density"}, {"d", rho.d}, {"data", std::move(data)}};
    if (label) j["label"] = *label;
    return j;
}

void save_state_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) {
        throw format_error("cannot write state file: " + path);
    }
    out << doc.dump(2) << '\n';
}

json bounds_to_json(const criteria::BoundTable& bounds) {
    return json{{"d", bounds.d},
                {"b1_case_i", bounds.b1_case_i},   {"b1_case_ii", bounds.b1_case_ii},
                {"b2_case_i", bounds.b2_case_i},   {"b2_case_ii", bounds.b2_case_ii},
                {"b3_case_i", bounds.b3_case_i},   {"b3_case_ii", bounds.b3_case_ii},
                {"M", bounds.M}};
}

json report_to_json(const criteria::CriterionReport& r) {
    return json{
        {"d", r.d},
        {"norms", {{"n_1_23", r.norm_1_23}, {"n_2_13", r.norm_2_13}, {"n_3_12", r.norm_3_12}}},
        {"t_value", r.t_value},
        {"bounds", bounds_to_json(r.bounds)},
        {"verdicts",
         {{"gme_detected", r.gme_detected},
          {"not_fully_separable", r.not_fully_separable},
          {"not_separable_1_23", r.not_separable_1_23},
          {"not_separable_2_13", r.not_separable_2_13},
          {"not_separable_3_12", r.not_separable_3_12}}},
        {"margins",
         {{"gme", r.margins.gme},
          {"sep_1_23", r.margins.sep_1_23},
          {"sep_2_13", r.margins.sep_2_13},
          {"sep_3_12", r.margins.sep_3_12},
          {"full_1_23", r.margins.full_1_23},
          {"full_2_13", r.margins.full_2_13},
          {"full_3_12", r.margins.full_3_12}}}};
}

criteria::CriterionReport report_from_json(const json& j) {
    criteria::CriterionReport r;
    r.d = j.at("d").get<int>();
    r.norm_1_23 = j.at("norms").at("n_1_23").get<double>();
    r.norm_2_13 = j.at("norms").at("n_2_13").get<double>();
    r.norm_3_12 = j.at("norms").at("n_3_12").get<double>();
    r.t_value = j.at("t_value").get<double>();
    const json& b = j.at("bounds");
    r.bounds.d = b.at("d").get<int>();
    r.bounds.b1_case_i = b.at("b1_case_i").get<double>();
    r.bounds.b1_case_ii = b.at("b1_case_ii").get<double>();
    r.bounds.b2_case_i = b.at("b2_case_i").get<double>();
    r.bounds.b2_case_ii = b.at("b2_case_ii").get<double>();
    r.bounds.b3_case_i = b.at("b3_case_i").get<double>();
    r.bounds.b3_case_ii = b.at("b3_case_ii").get<double>();
    r.bounds.M = b.at("M").get<double>();
    const json& v = j.at("verdicts");
    r.gme_detected = v.at("gme_detected").get<bool>();
    r.not_fully_separable = v.at("not_fully_separable").get<bool>();
    r.not_separable_1_23 = v.at("not_separable_1_23").get<bool>();
    r.not_separable_2_13 = v.at("not_separable_2_13").get<bool>();
    r.not_separable_3_12 = v.at("not_separable_3_12").get<bool>();
    const json& m = j.at("margins");
    r.margins.gme = m.at("gme").get<double>();
    r.margins.sep_1_23 = m.at("sep_1_23").get<double>();
    r.margins.sep_2_13 = m.at("sep_2_13").get<double>();
    r.margins.sep_3_12 = m.at("sep_3_12").get<double>();
    r.margins.full_1_23 = m.at("full_1_23").get<double>();
    r.margins.full_2_13 = m.at("full_2_13").get<double>();
    r.margins.full_3_12 = m.at("full_3_12").get<double>();
    return r;
}

json probe_to_json(const criteria::ProbeReport& probe) {
    json cuts = json::array();
    for (const auto& stats : probe.cuts) {
        cuts.push_back(json{{"bipartition", states::to_string(stats.cut)},
                            {"trials", stats.trials},
                            {"bound_case_i", stats.bound_case_i},
                            {"bound_case_ii", stats.bound_case_ii},
                            {"max_norm", stats.max_norm},
                            {"exceed_case_i", stats.exceed_case_i},
                            {"exceed_both", stats.exceed_both}});
    }
    json findings = json::array();
    for (const auto& f : probe.findings) {
        json amps = json::array();
        for (Eigen::Index i = 0; i < f.amplitudes.size(); ++i) {
            amps.push_back(dump_complex(f.amplitudes(i)));
        }
        findings.push_back(json{{"bipartition", states::to_string(f.cut)},
                                {"amplitudes", std::move(amps)},
                                {"norm", f.norm},
                                {"t_value", f.t_value},
                                {"fixture", f.fixture}});
    }
    return json{{"d", probe.d},
                {"seed", probe.seed},
                {"trials_per_bipartition", probe.trials_per_cut},
                {"per_bipartition", std::move(cuts)},
                {"max_t_value", probe.max_t_value},
                {"exceed_M", probe.exceed_M},
                {"findings", std::move(findings)}};
}

} // namespace gme::io
