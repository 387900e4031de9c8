// Command-line front end: bound tables, single-state analysis, noise-family
// scans, and the self-test / soundness-probe suite.
//
// Exit codes: 0 success, 2 usage or malformed input, 3 invalid state
// (failed physics validation), 4 self-test regression failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gme/criteria.hpp"
#include "gme/statefile.hpp"
#include "gme/version.hpp"

using nlohmann::json;

namespace {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

struct CommonOpts {
    bool json_out = false;
    bool csv_out = false;
    bool no_meta = false;
    std::uint64_t seed = 12345;
    double tol = 0.0; // 0 means defaults
};

gme::bloch::ValidationTolerances tolerances(const CommonOpts& c) {
    gme::bloch::ValidationTolerances t;
    if (c.tol > 0.0) {
        t.trace = c.tol;
        t.hermiticity = c.tol;
        t.psd = 100.0 * c.tol;
    }
    return t;
}

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_flag("--json", c.json_out, "machine-readable JSON output");
    cmd->add_flag("--csv", c.csv_out, "CSV output");
    cmd->add_flag("--no-meta", c.no_meta, "omit version/timing metadata (for reproducible output)");
    cmd->add_option("--seed", c.seed, "PRNG seed for randomized runs");
    cmd->add_option("--tol", c.tol,
                    "state validation tolerance for trace and Hermiticity checks "
                    "(positivity allows 100x); default 1e-10");
}

json make_meta(const char* command, std::chrono::steady_clock::time_point start) {
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    return json{{"version", gme::kVersion}, {"command", command}, {"wall_time_ms", elapsed.count()}};
}

struct StateSelection {
    std::string builtin; // ghz | w | w3, empty when loading from file
    std::string input_path;
    int d = 0;      // 0 = derive from builtin default
    double x = 1.0; // mixing weight for built-in families / pure inputs
};

// Resolves --state/--d consistency and returns the pure state of the family.
gme::states::PureState builtin_pure(const StateSelection& sel) {
    int d = sel.d;
    if (sel.builtin == "w") {
        if (d == 0) d = 2;
        if (d != 2) throw gme::dimension_error("--state w is a three-qubit family (requires --d 2)");
        return gme::states::w_qubit();
    }
    if (sel.builtin == "w3") {
        if (d == 0) d = 3;
        if (d != 3) throw gme::dimension_error("--state w3 is a three-qutrit family (requires --d 3)");
        return gme::states::w3_qutrit();
    }
    if (sel.builtin == "ghz") {
        if (d == 0) d = 2;
        return gme::states::ghz(d);
    }
    throw gme::dimension_error("unknown built-in state '" + sel.builtin + "' (expected ghz, w or w3)");
}

json input_descriptor(const StateSelection& sel, const gme::io::StateFile* file) {
    if (file != nullptr) {
        json j{{"kind", "file"}, {"path", sel.input_path}, {"file_kind", file->kind}, {"d", file->d}};
        if (file->label) j["label"] = *file->label;
        if (file->kind == "pure") j["x"] = sel.x;
        return j;
    }
    return json{{"kind", "builtin"}, {"state", sel.builtin}, {"d", sel.d}, {"x", sel.x}};
}

// ---------------------------------------------------------------- bounds ---

int cmd_bounds(int d, const CommonOpts& common, std::chrono::steady_clock::time_point start) {
    const auto b = gme::criteria::lemma_bounds(d);
    if (common.json_out) {
        json out{{"bounds", gme::io::bounds_to_json(b)}};
        if (!common.no_meta) out["meta"] = make_meta("bounds", start);
        std::cout << out.dump(2) << '\n';
    } else if (common.csv_out) {
        std::cout << "d,b1_case_i,b1_case_ii,b2_case_i,b2_case_ii,b3_case_i,b3_case_ii,M\n"
                  << b.d << ',' << fmt17(b.b1_case_i) << ',' << fmt17(b.b1_case_ii) << ','
                  << fmt17(b.b2_case_i) << ',' << fmt17(b.b2_case_ii) << ',' << fmt17(b.b3_case_i)
                  << ',' << fmt17(b.b3_case_ii) << ',' << fmt17(b.M) << '\n';
    } else {
        std::cout << "Biseparability bounds for d = " << d << '\n'
                  << "  ||N_1|23||  case (i) " << fmt6(b.b1_case_i) << "   case (ii) " << fmt6(b.b1_case_ii) << '\n'
                  << "  ||N_2|13||  case (i) " << fmt6(b.b2_case_i) << "   case (ii) " << fmt6(b.b2_case_ii) << '\n'
                  << "  ||N_3|12||  case (i) " << fmt6(b.b3_case_i) << "   case (ii) " << fmt6(b.b3_case_ii) << '\n'
                  << "  GME threshold M = " << fmt6(b.M) << '\n';
    }
    return 0;
}

// --------------------------------------------------------------- analyze ---

void print_report_human(const json& input, const gme::criteria::CriterionReport& r) {
    std::cout << "Input: " << input.dump() << '\n'
              << "Norms: ||N_1|23|| = " << fmt6(r.norm_1_23) << "   ||N_2|13|| = " << fmt6(r.norm_2_13)
              << "   ||N_3|12|| = " << fmt6(r.norm_3_12) << '\n'
              << "T(rho) = " << fmt6(r.t_value) << "   (GME threshold M = " << fmt6(r.bounds.M) << ")\n"
              << "Verdicts:\n"
              << "  GME detected:        " << yesno(r.gme_detected) << "  (margin " << fmt6(r.margins.gme) << ")\n"
              << "  not fully separable: " << yesno(r.not_fully_separable) << '\n'
              << "  not separable 1|23:  " << yesno(r.not_separable_1_23) << "  (margin " << fmt6(r.margins.sep_1_23) << ")\n"
              << "  not separable 2|13:  " << yesno(r.not_separable_2_13) << "  (margin " << fmt6(r.margins.sep_2_13) << ")\n"
              << "  not separable 3|12:  " << yesno(r.not_separable_3_12) << "  (margin " << fmt6(r.margins.sep_3_12) << ")\n";
}

void print_report_csv(const gme::criteria::CriterionReport& r) {
    std::cout << "d,n_1_23,n_2_13,n_3_12,t_value,b1_case_i,b1_case_ii,b2_case_i,b2_case_ii,"
                 "b3_case_i,b3_case_ii,M,gme_detected,not_fully_separable,not_separable_1_23,"
                 "not_separable_2_13,not_separable_3_12,margin_gme,margin_sep_1_23,margin_sep_2_13,"
                 "margin_sep_3_12,margin_full_1_23,margin_full_2_13,margin_full_3_12\n";
    std::cout << r.d << ',' << fmt17(r.norm_1_23) << ',' << fmt17(r.norm_2_13) << ',' << fmt17(r.norm_3_12)
              << ',' << fmt17(r.t_value) << ',' << fmt17(r.bounds.b1_case_i) << ',' << fmt17(r.bounds.b1_case_ii)
              << ',' << fmt17(r.bounds.b2_case_i) << ',' << fmt17(r.bounds.b2_case_ii) << ','
              << fmt17(r.bounds.b3_case_i) << ',' << fmt17(r.bounds.b3_case_ii) << ',' << fmt17(r.bounds.M)
              << ',' << (r.gme_detected ? 1 : 0) << ',' << (r.not_fully_separable ? 1 : 0) << ','
              << (r.not_separable_1_23 ? 1 : 0) << ',' << (r.not_separable_2_13 ? 1 : 0) << ','
              << (r.not_separable_3_12 ? 1 : 0) << ',' << fmt17(r.margins.gme) << ','
              << fmt17(r.margins.sep_1_23) << ',' << fmt17(r.margins.sep_2_13) << ','
              << fmt17(r.margins.sep_3_12) << ',' << fmt17(r.margins.full_1_23) << ','
              << fmt17(r.margins.full_2_13) << ',' << fmt17(r.margins.full_3_12) << '\n';
}

int cmd_analyze(const StateSelection& sel, const CommonOpts& common,
                std::chrono::steady_clock::time_point start) {
    gme::bloch::DensityMatrix rho;
    std::optional<gme::io::StateFile> file;
    if (!sel.input_path.empty()) {
        file = gme::io::load_state_file(sel.input_path, tolerances(common));
        if (file->kind == "density") {
            rho = file->density;
        } else {
            rho = gme::states::white_noise(file->pure, sel.x);
        }
    } else {
        rho = gme::states::white_noise(builtin_pure(sel), sel.x);
    }

    const auto report = gme::criteria::evaluate(rho);
    const json input = input_descriptor(sel, file ? &*file : nullptr);
    if (common.json_out) {
        json out = gme::io::report_to_json(report);
        out["input"] = input;
        if (!common.no_meta) out["meta"] = make_meta("analyze", start);
        std::cout << out.dump(2) << '\n';
    } else if (common.csv_out) {
        print_report_csv(report);
    } else {
        print_report_human(input, report);
    }
    return 0;
}

// ------------------------------------------------------------------ scan ---

int cmd_scan(const StateSelection& sel, double x_min, double x_max, int steps,
             const CommonOpts& common, std::chrono::steady_clock::time_point start) {
    if (steps < 2) throw std::domain_error("scan: --steps must be >= 2");
    if (!(x_min >= 0.0 && x_min < x_max && x_max <= 1.0)) {
        throw std::domain_error("scan: need 0 <= x-min < x-max <= 1");
    }

    gme::states::PureState pure;
    std::optional<gme::io::StateFile> file;
    std::string label;
    if (!sel.input_path.empty()) {
        file = gme::io::load_state_file(sel.input_path, tolerances(common));
        if (file->kind != "pure") {
            throw gme::io::format_error("scan: --input must be a pure-state file (kind \"pure\")");
        }
        pure = file->pure;
        label = file->label.value_or(sel.input_path);
    } else {
        pure = builtin_pure(sel);
        label = sel.builtin;
    }
    const auto family = gme::states::noise_family(pure, label);
    const auto bounds = gme::criteria::lemma_bounds(family.d);

    // Published comparison lines only exist for the two worked families.
    std::vector<gme::criteria::AffineLine> lines;
    if (sel.builtin == "w" && family.d == 2) {
        lines = gme::criteria::reference_lines(gme::criteria::ExampleId::example1);
    } else if (sel.builtin == "w3" && family.d == 3) {
        lines = gme::criteria::reference_lines(gme::criteria::ExampleId::example2);
    }

    struct Row {
        double x = 0;
        std::array<double, 3> norms{};
        double t = 0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        Row& row = rows[static_cast<std::size_t>(i)];
        row.x = x_min + (x_max - x_min) * static_cast<double>(i) / (steps - 1);
        row.norms = gme::bloch::n_trace_norms(
            gme::bloch::slices(gme::bloch::extract(family.member(row.x))));
        row.t = (row.norms[0] + row.norms[1] + row.norms[2]) / 3.0;
    }

    using gme::states::Statistic;
    struct Rule {
        const char* name;
        Statistic stat;
        double threshold;
    };
    const std::vector<Rule> rules = {
        {"gme", Statistic::t_value, bounds.M},
        {"not_separable_1_23", Statistic::norm_1_23, std::max(bounds.b1_case_i, bounds.b1_case_ii)},
        {"not_separable_2_13", Statistic::norm_2_13, std::max(bounds.b2_case_i, bounds.b2_case_ii)},
        {"not_separable_3_12", Statistic::norm_3_12, std::max(bounds.b3_case_i, bounds.b3_case_ii)},
        {"not_fully_separable_1_23", Statistic::norm_1_23, bounds.b1_case_i},
        {"not_fully_separable_2_13", Statistic::norm_2_13, bounds.b2_case_i},
        {"not_fully_separable_3_12", Statistic::norm_3_12, bounds.b3_case_i},
    };
    json criticals = json::object();
    double full_sep_min = std::numeric_limits<double>::infinity();
    for (const Rule& rule : rules) {
        const auto x = gme::states::critical_x(family, rule.stat, rule.threshold);
        criticals[rule.name] = x ? json(*x) : json(nullptr);
        if (x && std::string(rule.name).rfind("not_fully", 0) == 0) {
            full_sep_min = std::min(full_sep_min, *x);
        }
    }
    criticals["not_fully_separable"] =
        std::isfinite(full_sep_min) ? json(full_sep_min) : json(nullptr);

    if (common.json_out) {
        json series = json::array();
        for (const Row& row : rows) {
            json r{{"x", row.x},        {"n_1_23", row.norms[0]}, {"n_2_13", row.norms[1]},
                   {"n_3_12", row.norms[2]}, {"t_value", row.t}};
            for (const auto& line : lines) {
                r[line.name] = line.slope * row.x + line.intercept;
            }
            series.push_back(std::move(r));
        }
        json ref = json::array();
        for (const auto& line : lines) {
            ref.push_back(json{{"name", line.name}, {"slope", line.slope}, {"intercept", line.intercept}});
        }
        json out{{"input", input_descriptor(sel, file ? &*file : nullptr)},
                 {"grid", {{"x_min", x_min}, {"x_max", x_max}, {"steps", steps}}},
                 {"bounds", gme::io::bounds_to_json(bounds)},
                 {"critical_x", criticals},
                 {"reference_lines", ref},
                 {"series", series}};
        if (!common.no_meta) out["meta"] = make_meta("scan", start);
        std::cout << out.dump(2) << '\n';
    } else {
        // CSV (also the default): leading comment block, then header and rows.
        std::cout << "# scan state=" << label << " d=" << family.d << " x=[" << fmt17(x_min) << ','
                  << fmt17(x_max) << "] steps=" << steps << '\n';
        for (auto it = criticals.begin(); it != criticals.end(); ++it) {
            std::cout << "# critical_x." << it.key() << " = "
                      << (it.value().is_null() ? std::string("none") : fmt17(it.value().get<double>()))
                      << '\n';
        }
        std::cout << "x,n_1_23,n_2_13,n_3_12,t_value";
        for (const auto& line : lines) std::cout << ',' << line.name;
        std::cout << '\n';
        for (const Row& row : rows) {
            std::cout << fmt17(row.x) << ',' << fmt17(row.norms[0]) << ',' << fmt17(row.norms[1])
                      << ',' << fmt17(row.norms[2]) << ',' << fmt17(row.t);
            for (const auto& line : lines) std::cout << ',' << fmt17(line.slope * row.x + line.intercept);
            std::cout << '\n';
        }
    }
    return 0;
}

// -------------------------------------------------------------- selftest ---

struct Fixture {
    std::string name;
    double expected = 0;
    double actual = 0;
    double tol = 0;

    bool pass() const { return std::abs(actual - expected) <= tol; }
};

std::vector<Fixture> run_regressions() {
    using namespace gme;
    std::vector<Fixture> fixtures;

    const auto b2 = criteria::lemma_bounds(2);
    const double exact[4] = {std::sqrt(227.0), std::sqrt(233.0), 12.0, 4.0};
    const double got[4] = {b2.b1_case_i, b2.b1_case_ii, b2.b2_case_i, b2.b2_case_ii};
    double max_err = 0.0;
    for (int i = 0; i < 4; ++i) max_err = std::max(max_err, std::abs(got[i] - exact[i]));
    fixtures.push_back({"qubit_bound_constants", 0.0, max_err, 1e-12});
    fixtures.push_back({"qubit_gme_threshold", std::sqrt(233.0), b2.M, 1e-12});

    // Noisy three-qubit W family: closed-form slope of ||N_1|23|| and T.
    const double n1_closed = std::sqrt(2941.0 / 18.0 - 5.0 * std::sqrt(5657.0) / 6.0) +
                             std::sqrt(2941.0 / 18.0 + 5.0 * std::sqrt(5657.0) / 6.0) + 10.0;
    const auto w_family = states::noise_family(states::w_qubit(), "w");
    const auto w_norms = bloch::n_trace_norms(bloch::slices(bloch::extract(w_family.member(1.0))));
    fixtures.push_back({"w_norm_1_23", n1_closed, w_norms[0], 1e-9});
    fixtures.push_back({"w_t_value", (2.0 * n1_closed + 28.0 / 3.0) / 3.0,
                        (w_norms[0] + w_norms[1] + w_norms[2]) / 3.0, 1e-9});

    auto crit = [&](states::Statistic s, double threshold) {
        const auto x = states::critical_x(w_family, s, threshold);
        return x ? *x : -1.0;
    };
    fixtures.push_back({"w_critical_x_not_fully_separable", 0.4296,
                        crit(states::Statistic::norm_1_23, std::sqrt(227.0)), 5e-4});
    fixtures.push_back({"w_critical_x_bipartition_1_23", 0.4352,
                        crit(states::Statistic::norm_1_23, std::sqrt(233.0)), 5e-4});
    fixtures.push_back({"w_critical_x_gme", 0.5762, crit(states::Statistic::t_value, std::sqrt(233.0)), 5e-4});

    const auto b3 = criteria::lemma_bounds(3);
    fixtures.push_back({"qutrit_gme_threshold", std::sqrt(932.0 / 3.0) + 10.0, b3.M, 1e-12});
    fixtures.push_back({"qutrit_w_t_value",
                        35.518369283875998, // pinned pipeline value for the qutrit W family
                        bloch::t_value(states::density(states::w3_qutrit())), 1e-6});

    // Product of |0> with a Bell pair: ||N_1|23|| = 45 from first principles.
    states::PureState bell;
    bell.d = 2;
    bell.amplitudes = linalg::ComplexVector::Zero(8);
    bell.amplitudes(0) = 1.0 / std::sqrt(2.0);
    bell.amplitudes(3) = 1.0 / std::sqrt(2.0);
    const auto bell_norms = bloch::n_trace_norms(bloch::slices(bloch::extract(states::density(bell))));
    fixtures.push_back({"product_bell_norm_1_23", 45.0, bell_norms[0], 1e-9});

    return fixtures;
}

int cmd_selftest(int trials, int d, const CommonOpts& common,
                 std::chrono::steady_clock::time_point start) {
    if (trials < 1) throw std::domain_error("selftest: --trials must be >= 1");
    if (d < 2) throw gme::dimension_error("selftest: --d must be >= 2");

    const auto fixtures = run_regressions();
    bool regressions_ok = true;
    for (const auto& f : fixtures) regressions_ok &= f.pass();

    const auto probe = gme::criteria::run_probe(d, trials, common.seed, true);
    const auto bounds = gme::criteria::lemma_bounds(d);

    if (common.json_out) {
        json reg = json::array();
        for (const auto& f : fixtures) {
            reg.push_back(json{{"name", f.name},
                               {"expected", f.expected},
                               {"actual", f.actual},
                               {"tol", f.tol},
                               {"pass", f.pass()}});
        }
        json out{{"regressions", std::move(reg)},
                 {"regressions_pass", regressions_ok},
                 {"probe", gme::io::probe_to_json(probe)}};
        if (!common.no_meta) out["meta"] = make_meta("selftest", start);
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "Regression fixtures:\n";
        for (const auto& f : fixtures) {
            std::cout << "  [" << (f.pass() ? "ok" : "FAIL") << "] " << f.name << ": value "
                      << fmt6(f.actual) << ", expected " << fmt6(f.expected) << " +- " << fmt6(f.tol) << '\n';
        }
        std::cout << "Soundness probe: d = " << d << ", " << trials
                  << " biseparable trials per bipartition, seed " << common.seed << '\n';
        for (const auto& stats : probe.cuts) {
            std::cout << "  " << gme::states::to_string(stats.cut) << ": max ||N|| = "
                      << fmt6(stats.max_norm) << "  bounds (i) " << fmt6(stats.bound_case_i) << " / (ii) "
                      << fmt6(stats.bound_case_ii) << "  above (i): " << stats.exceed_case_i
                      << "  above both: " << stats.exceed_both << '\n';
        }
        std::cout << "  max T over biseparable trials = " << fmt6(probe.max_t_value) << "  (M = "
                  << fmt6(bounds.M) << ", trials above M: " << probe.exceed_M << ")\n"
                  << "  findings recorded: " << probe.findings.size()
                  << " (rerun with --json for amplitudes)\n";
        if (!probe.findings.empty() && probe.findings.front().fixture) {
            std::cout << "  fixture |0> x Bell pair: ||N_1|23|| = " << fmt6(probe.findings.front().norm) << '\n';
        }
    }

    if (!regressions_ok) {
        for (const auto& f : fixtures) {
            if (!f.pass()) {
                std::cerr << "selftest: regression fixture failed: " << f.name << " (value "
                          << fmt17(f.actual) << ", expected " << fmt17(f.expected) << " +- "
                          << fmt17(f.tol) << ")\n";
            }
        }
        return 4;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    const auto start = std::chrono::steady_clock::now();

    CLI::App app{"Trace-norm entanglement criteria for tripartite d x d x d quantum states"};
    app.require_subcommand(1);

    CommonOpts bounds_common;
    int bounds_d = 2;
    CLI::App* bounds_cmd = app.add_subcommand("bounds", "print the biseparability bound table for a dimension");
    bounds_cmd->add_option("--d", bounds_d, "local dimension (>= 2)");
    add_common(bounds_cmd, bounds_common);

    CommonOpts analyze_common;
    StateSelection analyze_sel;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "evaluate the criteria on one state");
    analyze_cmd->add_option("--input", analyze_sel.input_path, "state file (JSON)");
    analyze_cmd->add_option("--state", analyze_sel.builtin, "built-in family: ghz, w or w3");
    analyze_cmd->add_option("--d", analyze_sel.d, "local dimension");
    analyze_cmd->add_option("--x", analyze_sel.x, "white-noise mixing weight in [0,1], default 1");
    add_common(analyze_cmd, analyze_common);

    CommonOpts scan_common;
    StateSelection scan_sel;
    double x_min = 0.0, x_max = 1.0;
    int steps = 101;
    CLI::App* scan_cmd = app.add_subcommand("scan", "sweep a white-noise family over the mixing weight");
    scan_cmd->add_option("--input", scan_sel.input_path, "pure-state file (JSON)");
    scan_cmd->add_option("--state", scan_sel.builtin, "built-in family: ghz, w or w3");
    scan_cmd->add_option("--d", scan_sel.d, "local dimension");
    scan_cmd->add_option("--x-min", x_min, "grid start, default 0");
    scan_cmd->add_option("--x-max", x_max, "grid end, default 1");
    scan_cmd->add_option("--steps", steps, "grid points (>= 2), default 101");
    add_common(scan_cmd, scan_common);

    CommonOpts selftest_common;
    int trials = 10000;
    int selftest_d = 2;
    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "run regression fixtures and the biseparable soundness probe");
    selftest_cmd->add_option("--trials", trials, "probe trials per bipartition (>= 1), default 10000");
    selftest_cmd->add_option("--d", selftest_d, "probe local dimension, default 2");
    add_common(selftest_cmd, selftest_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bounds_cmd->parsed()) return cmd_bounds(bounds_d, bounds_common, start);
        if (analyze_cmd->parsed()) {
            if (analyze_sel.input_path.empty() == analyze_sel.builtin.empty()) {
                std::cerr << "analyze: pass exactly one of --input or --state\n";
                return 2;
            }
            return cmd_analyze(analyze_sel, analyze_common, start);
        }
        if (scan_cmd->parsed()) {
            if (scan_sel.input_path.empty() == scan_sel.builtin.empty()) {
                std::cerr << "scan: pass exactly one of --input or --state\n";
                return 2;
            }
            return cmd_scan(scan_sel, x_min, x_max, steps, scan_common, start);
        }
        if (selftest_cmd->parsed()) return cmd_selftest(trials, selftest_d, selftest_common, start);
    } catch (const gme::io::format_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const gme::dimension_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        // Physics validation failures (trace / hermiticity / positivity / norm).
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
