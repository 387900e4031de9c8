#include "gme/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gme::linalg {

namespace {

void require_nonempty(const RealMatrix& m, const char* op) {
    if (m.rows() < 1 || m.cols() < 1) {
        throw dimension_error(std::string(op) + ": matrix must have at least one row and one column");
    }
    if (!m.allFinite()) {
        throw numerical_error(std::string(op) + ": matrix has non-finite entries");
    }
}

} // namespace

std::vector<double> singular_values(const RealMatrix& m) {
    require_nonempty(m, "singular_values");
    Eigen::JacobiSVD<RealMatrix> svd(m);
    RealVector sv = svd.singularValues();
    std::vector<double> out(sv.data(), sv.data() + sv.size());
    // Eigen returns them descending already; enforce anyway.
    std::sort(out.begin(), out.end(), std::greater<double>());
    if (!out.empty() && out.front() > 0.0) {
        const double cutoff = 1e-13 * out.front();
        for (double& s : out) {
            if (s < cutoff) s = 0.0;
        }
    }
    return out;
}

double trace_norm(const RealMatrix& m) {
    require_nonempty(m, "trace_norm");
    Eigen::JacobiSVD<RealMatrix> svd(m);
    return svd.singularValues().sum();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    constexpr Eigen::Index kMaxSide = Eigen::Index(1) << 24;
    if (ra == 0 || ca == 0 || rb == 0 || cb == 0 ||
        ra > kMaxSide / rb || ca > kMaxSide / cb) {
        throw dimension_error("kron: requested shape is empty or too large");
    }
    ComplexMatrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i) {
        for (Eigen::Index j = 0; j < ca; ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix haar_unitary(int d, Rng& rng) {
    if (d < 1) {
        throw dimension_error("haar_unitary: dimension must be >= 1");
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix ginibre(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            ginibre(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(ginibre);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the gauge: multiply each column by the phase of the matching R
    // diagonal entry so the distribution is exactly Haar.
    for (int j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return q;
}

ComplexMatrix haar_unitary(int d, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(d, rng);
}

ComplexVector haar_state(int dim, Rng& rng) {
    if (dim < 1) {
        throw dimension_error("haar_state: dimension must be >= 1");
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(i) = Complex(re, im);
    }
    const double n = v.norm();
    if (n == 0.0) return haar_state(dim, rng); // astronomically unlikely
    return v / n;
}

} // namespace gme::linalg
