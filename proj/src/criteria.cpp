#include "gme/criteria.hpp"

#include <algorithm>
#include <cmath>

namespace gme::criteria {

BoundTable lemma_bounds(int d) {
    if (d < 2) {
        throw dimension_error("lemma_bounds: local dimension must be >= 2");
    }
    const double dd = static_cast<double>(d);
    const double a = 2.0 - 2.0 / dd; // ||beta||^2 of the canonical forms
    const double b = 1.0 - 2.0 / dd;

    BoundTable t;
    t.d = d;
    t.b1_case_i = std::sqrt(a * (225.0 * a + 2.0));
    t.b1_case_ii = std::sqrt(233.0 * a) + 15.0 * std::sqrt(b * a);
    double sum = 0.0; // empty at d = 2
    for (int k = 1; k <= d - 2; ++k) {
        sum += std::sqrt(1.0 / (k * (k + 1.0))) * std::sqrt(1.0 / (k + 1.0) - 1.0 / dd);
    }
    t.b2_case_i = 4.0 * (4.0 * sum + 2.0 * (dd * dd - 1.0) / dd);
    t.b2_case_ii = 4.0 * std::sqrt(a) * (1.0 + std::sqrt(b));
    t.b3_case_i = t.b1_case_i;
    t.b3_case_ii = t.b1_case_ii;
    t.M = std::max({t.b1_case_i, t.b1_case_ii, t.b2_case_i});
    return t;
}

CriterionReport evaluate(const bloch::DensityMatrix& rho) {
    const auto norms = bloch::n_trace_norms(bloch::slices(bloch::extract(rho)));

    CriterionReport r;
    r.d = rho.d;
    r.norm_1_23 = norms[0];
    r.norm_2_13 = norms[1];
    r.norm_3_12 = norms[2];
    r.t_value = (norms[0] + norms[1] + norms[2]) / 3.0;
    r.bounds = lemma_bounds(rho.d);

    const double sep1 = std::max(r.bounds.b1_case_i, r.bounds.b1_case_ii);
    const double sep2 = std::max(r.bounds.b2_case_i, r.bounds.b2_case_ii);
    const double sep3 = std::max(r.bounds.b3_case_i, r.bounds.b3_case_ii);

    r.gme_detected = r.t_value > r.bounds.M;
    r.not_separable_1_23 = r.norm_1_23 > sep1;
    r.not_separable_2_13 = r.norm_2_13 > sep2;
    r.not_separable_3_12 = r.norm_3_12 > sep3;
    r.not_fully_separable = r.norm_1_23 > r.bounds.b1_case_i ||
                            r.norm_2_13 > r.bounds.b2_case_i ||
                            r.norm_3_12 > r.bounds.b3_case_i;

    r.margins.gme = r.t_value - r.bounds.M;
    r.margins.sep_1_23 = r.norm_1_23 - sep1;
    r.margins.sep_2_13 = r.norm_2_13 - sep2;
    r.margins.sep_3_12 = r.norm_3_12 - sep3;
    r.margins.full_1_23 = r.norm_1_23 - r.bounds.b1_case_i;
    r.margins.full_2_13 = r.norm_2_13 - r.bounds.b2_case_i;
    r.margins.full_3_12 = r.norm_3_12 - r.bounds.b3_case_i;
    return r;
}

std::optional<ExampleId> example_from_string(std::string_view s) {
    if (s == "example1") return ExampleId::example1;
    if (s == "example2") return ExampleId::example2;
    return std::nullopt;
}

std::vector<AffineLine> reference_lines(ExampleId id) {
    std::vector<AffineLine> lines;
    if (id == ExampleId::example1) {
        // Noisy three-qubit W family. f1 is this criterion's T(rho(x)) - sqrt(233);
        // f2 and f3 are the published comparison criteria for the same family.
        const double n1 = std::sqrt(2941.0 / 18.0 - 5.0 * std::sqrt(5657.0) / 6.0) +
                          std::sqrt(2941.0 / 18.0 + 5.0 * std::sqrt(5657.0) / 6.0) + 10.0;
        lines.push_back({"f1", (2.0 * n1 + 28.0 / 3.0) / 3.0, -std::sqrt(233.0)});
        lines.push_back({"f2", std::sqrt(17.0 / 9.0) + 2.0 * std::sqrt(8.0 / 9.0),
                         -(6.0 + std::sqrt(3.0)) / 3.0});
        lines.push_back({"f3", std::sqrt(66.0) / 12.0, -0.5});
    } else {
        // Noisy three-qutrit W family: f4 is the published comparison line,
        // f5 the published line for this criterion.
        lines.push_back({"f4", 2.372684, -2.177324});
        lines.push_back({"f5", 34.5797, -27.6257});
    }
    return lines;
}

namespace {

states::PureState bell_pair_fixture(int d) {
    // |0> (x) (1/sqrt(d)) sum_a |aa>, product across 1|23.
    states::PureState psi;
    psi.d = d;
    psi.amplitudes = linalg::ComplexVector::Zero(static_cast<Eigen::Index>(d) * d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a) {
        psi.amplitudes(static_cast<Eigen::Index>(a) * d + a) = amp;
    }
    return psi;
}

} // namespace

ProbeReport run_probe(int d, int trials_per_cut, std::uint64_t seed, bool inject_fixture) {
    if (d < 2) {
        throw dimension_error("run_probe: local dimension must be >= 2");
    }
    if (trials_per_cut < 1) {
        throw std::domain_error("run_probe: need at least one trial per bipartition");
    }

    const BoundTable bounds = lemma_bounds(d);
    ProbeReport report;
    report.d = d;
    report.seed = seed;
    report.trials_per_cut = trials_per_cut;

    const states::Bipartition cuts[3] = {states::Bipartition::one_23,
                                         states::Bipartition::two_13,
                                         states::Bipartition::three_12};
    const double case_i[3] = {bounds.b1_case_i, bounds.b2_case_i, bounds.b3_case_i};
    const double case_ii[3] = {bounds.b1_case_ii, bounds.b2_case_ii, bounds.b3_case_ii};

    for (int c = 0; c < 3; ++c) {
        ProbeCutStats& stats = report.cuts[c];
        stats.cut = cuts[c];
        stats.bound_case_i = case_i[c];
        stats.bound_case_ii = case_ii[c];
        const double sep_bound = std::max(case_i[c], case_ii[c]);

        // Independent stream per bipartition so cut results do not interleave.
        linalg::Rng rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(c + 1));

        for (int trial = 0; trial < trials_per_cut; ++trial) {
            const bool is_fixture = inject_fixture && c == 0 && trial == 0;
            const states::PureState psi =
                is_fixture ? bell_pair_fixture(d) : states::random_biseparable(d, cuts[c], rng);
            const auto norms = bloch::n_trace_norms(bloch::slices(bloch::extract(states::density(psi))));
            const double norm = norms[c];
            const double t = (norms[0] + norms[1] + norms[2]) / 3.0;

            ++stats.trials;
            stats.max_norm = std::max(stats.max_norm, norm);
            report.max_t_value = std::max(report.max_t_value, t);
            if (norm > case_i[c]) ++stats.exceed_case_i;
            if (t > bounds.M) ++report.exceed_M;
            if (norm > sep_bound) {
                ++stats.exceed_both;
                ProbeFinding finding;
                finding.cut = cuts[c];
                finding.amplitudes = psi.amplitudes;
                finding.norm = norm;
                finding.t_value = t;
                finding.fixture = is_fixture;
                report.findings.push_back(std::move(finding));
            }
        }
    }
    return report;
}

} // namespace gme::criteria
