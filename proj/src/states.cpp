#include "gme/states.hpp"

#include <cmath>
#include <sstream>

namespace gme::states {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

void validate_pure(const PureState& psi, double norm_tol) {
    if (psi.d < 2) {
        throw std::invalid_argument("pure-state validation failed: shape (local dimension must be >= 2)");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(psi.d) * psi.d * psi.d;
    if (psi.amplitudes.size() != dim) {
        std::ostringstream msg;
        msg << "pure-state validation failed: shape (expected " << dim << " amplitudes, got "
            << psi.amplitudes.size() << ")";
        throw std::invalid_argument(msg.str());
    }
    if (!psi.amplitudes.allFinite()) {
        throw std::invalid_argument("pure-state validation failed: finiteness (NaN or Inf amplitude)");
    }
    const double norm = psi.amplitudes.norm();
    if (std::abs(norm - 1.0) > norm_tol) {
        std::ostringstream msg;
        msg << "pure-state validation failed: norm (|psi| = " << norm << ")";
        throw std::invalid_argument(msg.str());
    }
}

bloch::DensityMatrix density(const PureState& psi) {
    bloch::DensityMatrix rho;
    rho.d = psi.d;
    rho.matrix = psi.amplitudes * psi.amplitudes.adjoint();
    return rho;
}

const char* to_string(Bipartition cut) {
    switch (cut) {
        case Bipartition::one_23: return "1|23";
        case Bipartition::two_13: return "2|13";
        case Bipartition::three_12: return "3|12";
    }
    return "?";
}

std::optional<Bipartition> bipartition_from_string(std::string_view s) {
    if (s == "1|23") return Bipartition::one_23;
    if (s == "2|13") return Bipartition::two_13;
    if (s == "3|12") return Bipartition::three_12;
    return std::nullopt;
}

PureState ghz(int d) {
    if (d < 2) {
        throw dimension_error("ghz: local dimension must be >= 2");
    }
    PureState psi;
    psi.d = d;
    psi.amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(d) * d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a) {
        psi.amplitudes((static_cast<Eigen::Index>(a) * d + a) * d + a) = amp;
    }
    return psi;
}

PureState w_qubit() {
    PureState psi;
    psi.d = 2;
    psi.amplitudes = ComplexVector::Zero(8);
    const double amp = 1.0 / std::sqrt(3.0);
    psi.amplitudes(1) = amp; // |001>
    psi.amplitudes(2) = amp; // |010>
    psi.amplitudes(4) = amp; // |100>
    return psi;
}

PureState w3_qutrit() {
    PureState psi;
    psi.d = 3;
    psi.amplitudes = ComplexVector::Zero(27);
    const double amp = 1.0 / std::sqrt(6.0);
    for (Eigen::Index idx : {1, 3, 9, 14, 16, 22}) { // 001,010,100,112,121,211 in ternary
        psi.amplitudes(idx) = amp;
    }
    return psi;
}

bloch::DensityMatrix white_noise(const PureState& pure, double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream msg;
        msg << "white_noise: mixing weight x = " << x << " outside [0,1]";
        throw std::domain_error(msg.str());
    }
    validate_pure(pure);
    const Eigen::Index dim = pure.amplitudes.size();
    bloch::DensityMatrix rho;
    rho.d = pure.d;
    rho.matrix = ((1.0 - x) / static_cast<double>(dim)) * ComplexMatrix::Identity(dim, dim);
    rho.matrix += x * (pure.amplitudes * pure.amplitudes.adjoint());
    return rho;
}

namespace {

// Row index = split-off party, column index = the remaining pair in original
// party order.
std::pair<int, Eigen::Index> regroup_indices(int d, Bipartition cut, int a, int b, int c) {
    switch (cut) {
        case Bipartition::one_23: return {a, static_cast<Eigen::Index>(b) * d + c};
        case Bipartition::two_13: return {b, static_cast<Eigen::Index>(a) * d + c};
        case Bipartition::three_12: return {c, static_cast<Eigen::Index>(a) * d + b};
    }
    return {0, 0};
}

} // namespace

SchmidtForm schmidt(const PureState& psi, Bipartition cut) {
    validate_pure(psi, 1e-10);
    const int d = psi.d;
    ComplexMatrix m = ComplexMatrix::Zero(d, static_cast<Eigen::Index>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                const auto [row, col] = regroup_indices(d, cut, a, b, c);
                m(row, col) = psi.amplitudes((static_cast<Eigen::Index>(a) * d + b) * d + c);
            }

    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtForm form;
    form.d = d;
    form.bipartition = cut;
    form.coefficients = svd.singularValues();
    form.left_basis = svd.matrixU();
    form.right_basis = svd.matrixV().conjugate(); // columns of V*, so psi = sum tau_i U_i (x) V*_i

    // Deterministic gauge: rotate each pair so the largest-magnitude left
    // component is real positive.
    for (Eigen::Index i = 0; i < form.left_basis.cols(); ++i) {
        Eigen::Index imax = 0;
        form.left_basis.col(i).cwiseAbs().maxCoeff(&imax);
        const Complex pivot = form.left_basis(imax, i);
        const double mag = std::abs(pivot);
        if (mag > 0.0) {
            const Complex phase = pivot / mag;
            form.left_basis.col(i) *= std::conj(phase);
            form.right_basis.col(i) *= phase;
        }
    }
    return form;
}

PureState reassemble(const SchmidtForm& form) {
    const int d = form.d;
    if (d < 2 || form.left_basis.rows() != d ||
        form.right_basis.rows() != static_cast<Eigen::Index>(d) * d ||
        form.left_basis.cols() != form.coefficients.size() ||
        form.right_basis.cols() != form.coefficients.size()) {
        throw dimension_error("reassemble: inconsistent Schmidt form shapes");
    }
    PureState psi;
    psi.d = d;
    psi.amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(d) * d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                const auto [row, col] = regroup_indices(d, form.bipartition, a, b, c);
                Complex acc(0.0, 0.0);
                for (Eigen::Index i = 0; i < form.coefficients.size(); ++i)
                    acc += form.coefficients(i) * form.left_basis(row, i) * form.right_basis(col, i);
                psi.amplitudes((static_cast<Eigen::Index>(a) * d + b) * d + c) = acc;
            }
    return psi;
}

PureState canonical_case_state(int d, CanonicalCase which, std::span<const double> taus) {
    if (d < 2) {
        throw dimension_error("canonical_case_state: local dimension must be >= 2");
    }
    if (taus.empty() || taus.size() > static_cast<std::size_t>(d)) {
        throw dimension_error("canonical_case_state: need between 1 and d coefficients");
    }
    double sum_sq = 0.0;
    for (double tau : taus) {
        if (!(tau >= 0.0)) {
            throw std::domain_error("canonical_case_state: coefficients must be non-negative");
        }
        sum_sq += tau * tau;
    }
    if (std::abs(sum_sq - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "canonical_case_state: coefficients are not normalized (sum of squares = " << sum_sq << ")";
        throw std::domain_error(msg.str());
    }

    PureState psi;
    psi.d = d;
    psi.amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(d) * d * d);
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const Eigen::Index a = static_cast<Eigen::Index>(i);
        const Eigen::Index idx = which == CanonicalCase::case_i
                                     ? (a * d + 0) * d + a  // |i, 0, i>
                                     : (a * d + a) * d + a; // |i, i, i>
        psi.amplitudes(idx) = taus[i];
    }
    return psi;
}

PureState random_biseparable(int d, Bipartition cut, linalg::Rng& rng) {
    if (d < 2) {
        throw dimension_error("random_biseparable: local dimension must be >= 2");
    }
    const ComplexVector single = linalg::haar_state(d, rng);
    const ComplexVector pair = linalg::haar_state(d * d, rng);

    PureState psi;
    psi.d = d;
    psi.amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(d) * d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                const auto [row, col] = regroup_indices(d, cut, a, b, c);
                psi.amplitudes((static_cast<Eigen::Index>(a) * d + b) * d + c) = single(row) * pair(col);
            }
    return psi;
}

bloch::DensityMatrix NoiseFamily::member(double x) const { return white_noise(pure, x); }

NoiseFamily noise_family(PureState pure, std::string label) {
    validate_pure(pure);
    NoiseFamily family;
    family.d = pure.d;
    family.pure = std::move(pure);
    family.label = std::move(label);
    return family;
}

const char* to_string(Statistic s) {
    switch (s) {
        case Statistic::t_value: return "t_value";
        case Statistic::norm_1_23: return "norm_1_23";
        case Statistic::norm_2_13: return "norm_2_13";
        case Statistic::norm_3_12: return "norm_3_12";
    }
    return "?";
}

double statistic_value(const bloch::DensityMatrix& rho, Statistic s) {
    const auto norms = bloch::n_trace_norms(bloch::slices(bloch::extract(rho)));
    switch (s) {
        case Statistic::t_value: return (norms[0] + norms[1] + norms[2]) / 3.0;
        case Statistic::norm_1_23: return norms[0];
        case Statistic::norm_2_13: return norms[1];
        case Statistic::norm_3_12: return norms[2];
    }
    return 0.0;
}

std::optional<double> critical_x(const NoiseFamily& family, Statistic s, double threshold) {
    if (threshold < 0.0) {
        throw std::domain_error("critical_x: threshold must be non-negative");
    }
    // White-noise mixing is linear through the origin: statistic(x) = x * statistic(pure).
    const double at_pure = statistic_value(family.member(1.0), s);
    if (at_pure <= threshold) return std::nullopt;
    return threshold / at_pure;
}

std::optional<double> critical_x_bisect(const NoiseFamily& family, Statistic s, double threshold) {
    if (threshold < 0.0) {
        throw std::domain_error("critical_x_bisect: threshold must be non-negative");
    }
    auto stat = [&](double x) { return statistic_value(family.member(x), s); };

    // Bracketing grid doubles as a monotonicity check.
    constexpr int kGrid = 9;
    double prev = stat(0.0);
    double scale = std::abs(prev);
    for (int i = 1; i <= kGrid; ++i) {
        const double x = static_cast<double>(i) / kGrid;
        const double v = stat(x);
        scale = std::max(scale, std::abs(v));
        if (v < prev - 1e-9 * std::max(1.0, scale)) {
            std::ostringstream msg;
            msg << "critical_x_bisect: statistic " << to_string(s)
                << " is not monotone on the family (decrease near x = " << x << ")";
            throw numerical_error(msg.str());
        }
        prev = v;
    }
    if (stat(1.0) <= threshold) return std::nullopt;

    double lo = 0.0, hi = 1.0; // stat(lo) <= threshold < stat(hi)
    if (stat(0.0) > threshold) return 0.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (stat(mid) > threshold) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

} // namespace gme::states
