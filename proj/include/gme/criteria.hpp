#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gme/bloch.hpp"
#include "gme/states.hpp"

namespace gme::criteria {

// Closed-form upper bounds on ||N^{f|gh}|| for biseparable pure states, per
// bipartition and canonical case, plus the GME threshold M.
struct BoundTable {
    int d = 0;
    double b1_case_i = 0, b1_case_ii = 0; // bipartition 1|23
    double b2_case_i = 0, b2_case_ii = 0; // bipartition 2|13
    double b3_case_i = 0, b3_case_ii = 0; // bipartition 3|12 (equal to 1|23)
    double M = 0;                         // max of the three distinct expressions
};

// d=2 evaluates to (sqrt(227), sqrt(233), 12, 4) with M = sqrt(233).
BoundTable lemma_bounds(int d);

// Signed distances statistic - threshold; positive means the criterion fires.
struct Margins {
    double gme = 0;                                  // t_value - M
    double sep_1_23 = 0, sep_2_13 = 0, sep_3_12 = 0; // norm - max(case_i, case_ii)
    double full_1_23 = 0, full_2_13 = 0, full_3_12 = 0; // norm - case_i
};

struct CriterionReport {
    int d = 0;
    double norm_1_23 = 0, norm_2_13 = 0, norm_3_12 = 0;
    double t_value = 0;
    BoundTable bounds;
    bool gme_detected = false;
    bool not_fully_separable = false;
    bool not_separable_1_23 = false;
    bool not_separable_2_13 = false;
    bool not_separable_3_12 = false;
    Margins margins;
};

// All verdicts use strict inequalities; margins let callers apply a band.
CriterionReport evaluate(const bloch::DensityMatrix& rho);

// Published comparison lines for the two worked noise-family examples,
// as plot-ready (slope, intercept) pairs in the mixing weight x.
struct AffineLine {
    std::string name;
    double slope = 0;
    double intercept = 0;
};

enum class ExampleId { example1, example2 };

std::optional<ExampleId> example_from_string(std::string_view s);
std::vector<AffineLine> reference_lines(ExampleId id);

// Monte-Carlo soundness probe: samples pure biseparable states per
// bipartition and compares the matching ||N^{f|gh}|| (and T) against the
// closed-form bounds. Exceedances are findings, never failures.
struct ProbeFinding {
    states::Bipartition cut = states::Bipartition::one_23;
    linalg::ComplexVector amplitudes;
    double norm = 0;    // ||N^{f|gh}|| for the sampled cut
    double t_value = 0;
    bool fixture = false;
};

struct ProbeCutStats {
    states::Bipartition cut = states::Bipartition::one_23;
    int trials = 0;
    double bound_case_i = 0, bound_case_ii = 0;
    double max_norm = 0;
    int exceed_case_i = 0;   // norm > case-i bound
    int exceed_both = 0;     // norm > max(case_i, case_ii)
};

struct ProbeReport {
    int d = 0;
    std::uint64_t seed = 0;
    int trials_per_cut = 0;
    ProbeCutStats cuts[3];
    double max_t_value = 0;
    int exceed_M = 0; // biseparable trials with T above the GME threshold
    std::vector<ProbeFinding> findings;
};

// inject_fixture prepends |0> (x) (sum_a |aa>)/sqrt(d) as trial 0 of the 1|23
// cut (the two-qubit case is |0> (x) Bell pair, whose ||N^{1|23}|| is 45).
ProbeReport run_probe(int d, int trials_per_cut, std::uint64_t seed, bool inject_fixture = true);

} // namespace gme::criteria
