#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gme/bloch.hpp"
#include "gme/linalg.hpp"

namespace gme::states {

// Pure state of a d x d x d system; amplitude of |abc> sits at a*d^2 + b*d + c.
struct PureState {
    int d = 0;
    linalg::ComplexVector amplitudes; // length d^3, unit norm
};

// Throws std::invalid_argument naming the failed check (shape / norm).
void validate_pure(const PureState& psi, double norm_tol = 1e-12);

bloch::DensityMatrix density(const PureState& psi);

enum class Bipartition { one_23, two_13, three_12 };

const char* to_string(Bipartition cut);
std::optional<Bipartition> bipartition_from_string(std::string_view s);

// (1/sqrt(d)) sum_a |aaa>
PureState ghz(int d);

// (|001> + |010> + |100>) / sqrt(3)
PureState w_qubit();

// (|001> + |010> + |100> + |112> + |121> + |211>) / sqrt(6)
PureState w3_qutrit();

// (1-x)/d^3 I + x |psi><psi|; x outside [0,1] throws std::domain_error.
bloch::DensityMatrix white_noise(const PureState& pure, double x);

struct SchmidtForm {
    int d = 0;
    Bipartition bipartition = Bipartition::one_23;
    linalg::RealVector coefficients;   // non-negative, descending
    linalg::ComplexMatrix left_basis;  // d x d, columns orthonormal (single party)
    linalg::ComplexMatrix right_basis; // d^2 x d, columns orthonormal (pair)
};

// Biorthogonal expansion across the cut (SVD of the regrouped amplitude
// matrix). Each left vector's largest-magnitude component is made real
// positive so the output is deterministic.
SchmidtForm schmidt(const PureState& psi, Bipartition cut);

// sum_i tau_i |left_i> (x) |right_i>, re-embedded at the original party order.
PureState reassemble(const SchmidtForm& form);

enum class CanonicalCase { case_i, case_ii };

// case_i:  sum_i tau_i |i, 0, i>   (product across 2|13, entangled across 1|23 and 3|12)
// case_ii: sum_i tau_i |i, i, i>
// taus must be non-negative with unit square sum; at most d entries.
PureState canonical_case_state(int d, CanonicalCase which, std::span<const double> taus);

// |phi_f> (x) |phi_gh> with both factors Haar-random; exactly product across
// the requested cut.
PureState random_biseparable(int d, Bipartition cut, linalg::Rng& rng);

// White-noise mixing family (1-x)/d^3 I + x |pure><pure|.
struct NoiseFamily {
    int d = 0;
    PureState pure;
    std::string label;

    bloch::DensityMatrix member(double x) const;
};

NoiseFamily noise_family(PureState pure, std::string label);

enum class Statistic { t_value, norm_1_23, norm_2_13, norm_3_12 };

const char* to_string(Statistic s);

double statistic_value(const bloch::DensityMatrix& rho, Statistic s);

// Smallest x in [0,1] with statistic(member(x)) > threshold, or nullopt when
// even the pure member does not exceed it. The analytic path uses the exact
// linearity of the statistic in x; the bisection path (tolerance 1e-9) only
// assumes monotonicity and throws numerical_error if that fails to hold on a
// coarse bracketing grid.
std::optional<double> critical_x(const NoiseFamily& family, Statistic s, double threshold);
std::optional<double> critical_x_bisect(const NoiseFamily& family, Statistic s, double threshold);

} // namespace gme::states
