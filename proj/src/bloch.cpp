#include "gme/bloch.hpp"

#include <cmath>
#include <sstream>

namespace gme::bloch {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::RealMatrix;

GeneratorBasis::GeneratorBasis(int d) : d_(d) {
    if (d < 2) {
        throw dimension_error("GeneratorBasis: local dimension must be >= 2");
    }
    generators_.reserve(static_cast<std::size_t>(d) * d - 1);
    for (int m = 1; m < d; ++m) {
        ComplexMatrix g = ComplexMatrix::Zero(d, d);
        for (int a = 0; a < m; ++a) g(a, a) = 1.0;
        g(m, m) = -static_cast<double>(m);
        generators_.push_back(std::sqrt(2.0 / (m * (m + 1.0))) * g);
    }
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix g = ComplexMatrix::Zero(d, d);
            g(j, k) = 1.0;
            g(k, j) = 1.0;
            generators_.push_back(std::move(g));
        }
    }
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix g = ComplexMatrix::Zero(d, d);
            g(j, k) = Complex(0.0, -1.0);
            g(k, j) = Complex(0.0, 1.0);
            generators_.push_back(std::move(g));
        }
    }
}

GeneratorBasis gellmann_basis(int d) { return GeneratorBasis(d); }

void validate_density(const DensityMatrix& rho, const ValidationTolerances& tol) {
    if (rho.d < 2) {
        throw std::invalid_argument("density validation failed: shape (local dimension must be >= 2)");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(rho.d) * rho.d * rho.d;
    if (rho.matrix.rows() != dim || rho.matrix.cols() != dim) {
        std::ostringstream msg;
        msg << "density validation failed: shape (expected " << dim << "x" << dim
            << ", got " << rho.matrix.rows() << "x" << rho.matrix.cols() << ")";
        throw std::invalid_argument(msg.str());
    }
    if (!rho.matrix.allFinite()) {
        throw std::invalid_argument("density validation failed: finiteness (NaN or Inf entry)");
    }
    const double herm = (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol.hermiticity) {
        std::ostringstream msg;
        msg << "density validation failed: hermiticity (max |rho - rho^dag| = " << herm << ")";
        throw std::invalid_argument(msg.str());
    }
    const Complex tr = rho.matrix.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace) {
        std::ostringstream msg;
        msg << "density validation failed: trace (Tr rho = " << tr.real() << ")";
        throw std::invalid_argument(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol.psd) {
        std::ostringstream msg;
        msg << "density validation failed: positivity (min eigenvalue = " << min_eig << ")";
        throw std::invalid_argument(msg.str());
    }
}

namespace {

// Extended basis {I, g_1, ..., g_{d^2-1}} shared by extraction and
// reconstruction. Index 0 is the identity.
std::vector<ComplexMatrix> extended_basis(int d) {
    GeneratorBasis basis(d);
    std::vector<ComplexMatrix> ext;
    ext.reserve(static_cast<std::size_t>(d) * d);
    ext.push_back(ComplexMatrix::Identity(d, d));
    for (int i = 0; i < basis.count(); ++i) ext.push_back(basis[i]);
    return ext;
}

inline std::size_t idx4(int a, int b, int ap, int bp, int d) {
    return ((static_cast<std::size_t>(a) * d + b) * d + ap) * d + bp;
}

// E[p][q][r] = Tr(rho G_p (x) G_q (x) G_r) for the extended basis, computed
// by contracting one party at a time in a fixed order (deterministic).
std::vector<Complex> extended_coefficients(const DensityMatrix& rho) {
    const int d = rho.d;
    const int n_ext = d * d;
    const auto ext = extended_basis(d);

    // Party 3: X1[r][(a,b,a',b')] = sum_{c,c'} rho[(abc),(a'b'c')] G_r(c',c)
    std::vector<std::vector<Complex>> x1(n_ext, std::vector<Complex>(static_cast<std::size_t>(d) * d * d * d));
    for (int r = 0; r < n_ext; ++r) {
        const ComplexMatrix& g = ext[r];
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                for (int ap = 0; ap < d; ++ap)
                    for (int bp = 0; bp < d; ++bp) {
                        Complex acc(0.0, 0.0);
                        const Eigen::Index row0 = (static_cast<Eigen::Index>(a) * d + b) * d;
                        const Eigen::Index col0 = (static_cast<Eigen::Index>(ap) * d + bp) * d;
                        for (int c = 0; c < d; ++c)
                            for (int cp = 0; cp < d; ++cp)
                                acc += rho.matrix(row0 + c, col0 + cp) * g(cp, c);
                        x1[r][idx4(a, b, ap, bp, d)] = acc;
                    }
    }

    // Party 2: X2[r][q][(a,a')] = sum_{b,b'} X1[r][(a,b,a',b')] G_q(b',b)
    std::vector<Complex> x2(static_cast<std::size_t>(n_ext) * n_ext * d * d);
    for (int r = 0; r < n_ext; ++r)
        for (int q = 0; q < n_ext; ++q) {
            const ComplexMatrix& g = ext[q];
            for (int a = 0; a < d; ++a)
                for (int ap = 0; ap < d; ++ap) {
                    Complex acc(0.0, 0.0);
                    for (int b = 0; b < d; ++b)
                        for (int bp = 0; bp < d; ++bp)
                            acc += x1[r][idx4(a, b, ap, bp, d)] * g(bp, b);
                    x2[((static_cast<std::size_t>(r) * n_ext + q) * d + a) * d + ap] = acc;
                }
        }

    // Party 1: E[p][q][r] = sum_{a,a'} X2[r][q][(a,a')] G_p(a',a)
    std::vector<Complex> e(static_cast<std::size_t>(n_ext) * n_ext * n_ext);
    for (int p = 0; p < n_ext; ++p) {
        const ComplexMatrix& g = ext[p];
        for (int q = 0; q < n_ext; ++q)
            for (int r = 0; r < n_ext; ++r) {
                Complex acc(0.0, 0.0);
                for (int a = 0; a < d; ++a)
                    for (int ap = 0; ap < d; ++ap)
                        acc += x2[((static_cast<std::size_t>(r) * n_ext + q) * d + a) * d + ap] * g(ap, a);
                e[(static_cast<std::size_t>(p) * n_ext + q) * n_ext + r] = acc;
            }
    }
    return e;
}

double take_real(Complex v, int p, int q, int r) {
    if (std::abs(v.imag()) > 1e-10) {
        std::ostringstream msg;
        msg << "extract: coefficient (" << p << "," << q << "," << r
            << ") has imaginary residue " << v.imag() << "; input is not Hermitian";
        throw numerical_error(msg.str());
    }
    return v.real();
}

} // namespace

BlochTensor extract(const DensityMatrix& rho) {
    const int d = rho.d;
    if (d < 2) {
        throw dimension_error("extract: local dimension must be >= 2");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(d) * d * d;
    if (rho.matrix.rows() != dim || rho.matrix.cols() != dim) {
        throw dimension_error("extract: matrix shape does not match d^3");
    }

    const int n_ext = d * d;
    const int n = n_ext - 1;
    const auto e = extended_coefficients(rho);
    auto at = [&](int p, int q, int r) {
        return take_real(e[(static_cast<std::size_t>(p) * n_ext + q) * n_ext + r], p, q, r);
    };

    BlochTensor out;
    out.d = d;
    out.t1.resize(n);
    out.t2.resize(n);
    out.t3.resize(n);
    out.t12.resize(n, n);
    out.t13.resize(n, n);
    out.t23.resize(n, n);
    out.t.assign(static_cast<std::size_t>(n) * n * n, 0.0);

    for (int i = 0; i < n; ++i) {
        out.t1(i) = at(i + 1, 0, 0);
        out.t2(i) = at(0, i + 1, 0);
        out.t3(i) = at(0, 0, i + 1);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out.t12(i, j) = at(i + 1, j + 1, 0);
            out.t13(i, j) = at(i + 1, 0, j + 1);
            out.t23(i, j) = at(0, i + 1, j + 1);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double v = at(i + 1, j + 1, k + 1);
                if (std::abs(v) > 4.0) {
                    std::ostringstream msg;
                    msg << "extract: |t_{" << i + 1 << "," << j + 1 << "," << k + 1
                        << "}| = " << std::abs(v) << " exceeds the sanity bound 4";
                    throw numerical_error(msg.str());
                }
                out.three_body(i, j, k) = v;
            }
    return out;
}

DensityMatrix reconstruct(const BlochTensor& tensor) {
    const int d = tensor.d;
    if (d < 2) {
        throw dimension_error("reconstruct: local dimension must be >= 2");
    }
    const int n = d * d - 1;
    if (tensor.t1.size() != n || tensor.t2.size() != n || tensor.t3.size() != n ||
        tensor.t12.rows() != n || tensor.t12.cols() != n ||
        tensor.t13.rows() != n || tensor.t13.cols() != n ||
        tensor.t23.rows() != n || tensor.t23.cols() != n ||
        tensor.t.size() != static_cast<std::size_t>(n) * n * n) {
        throw dimension_error("reconstruct: tensor field shapes do not match d");
    }

    const int n_ext = d * d;
    // Extended coefficient tensor with E[0][0][0] = 1 for the identity term.
    std::vector<double> e(static_cast<std::size_t>(n_ext) * n_ext * n_ext, 0.0);
    auto at = [&](int p, int q, int r) -> double& {
        return e[(static_cast<std::size_t>(p) * n_ext + q) * n_ext + r];
    };
    at(0, 0, 0) = 1.0;
    for (int i = 0; i < n; ++i) {
        at(i + 1, 0, 0) = tensor.t1(i);
        at(0, i + 1, 0) = tensor.t2(i);
        at(0, 0, i + 1) = tensor.t3(i);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            at(i + 1, j + 1, 0) = tensor.t12(i, j);
            at(i + 1, 0, j + 1) = tensor.t13(i, j);
            at(0, i + 1, j + 1) = tensor.t23(i, j);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                at(i + 1, j + 1, k + 1) = tensor.three_body(i, j, k);

    // Per-party factor 1/d on the identity and 1/2 on each generator
    // reproduces the weights 1/d^3, 1/(2d^2), 1/(4d), 1/8.
    auto ext = extended_basis(d);
    ext[0] /= static_cast<double>(d);
    for (int i = 1; i < n_ext; ++i) ext[i] *= 0.5;

    // Party 1: Z1[q][r][(a,a')] = sum_p E[p][q][r] H_p(a,a')
    std::vector<Complex> z1(static_cast<std::size_t>(n_ext) * n_ext * d * d, Complex(0.0, 0.0));
    for (int q = 0; q < n_ext; ++q)
        for (int r = 0; r < n_ext; ++r)
            for (int a = 0; a < d; ++a)
                for (int ap = 0; ap < d; ++ap) {
                    Complex acc(0.0, 0.0);
                    for (int p = 0; p < n_ext; ++p)
                        acc += at(p, q, r) * ext[p](a, ap);
                    z1[((static_cast<std::size_t>(q) * n_ext + r) * d + a) * d + ap] = acc;
                }

    // Party 2: Z2[r][(a,b,a',b')] = sum_q Z1[q][r][(a,a')] H_q(b,b')
    std::vector<Complex> z2(static_cast<std::size_t>(n_ext) * d * d * d * d, Complex(0.0, 0.0));
    for (int r = 0; r < n_ext; ++r)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                for (int ap = 0; ap < d; ++ap)
                    for (int bp = 0; bp < d; ++bp) {
                        Complex acc(0.0, 0.0);
                        for (int q = 0; q < n_ext; ++q)
                            acc += z1[((static_cast<std::size_t>(q) * n_ext + r) * d + a) * d + ap] * ext[q](b, bp);
                        z2[static_cast<std::size_t>(r) * d * d * d * d + idx4(a, b, ap, bp, d)] = acc;
                    }

    // Party 3: rho[(abc),(a'b'c')] = sum_r Z2[r][(a,b,a',b')] H_r(c,c')
    const Eigen::Index dim = static_cast<Eigen::Index>(d) * d * d;
    DensityMatrix out;
    out.d = d;
    out.matrix = ComplexMatrix::Zero(dim, dim);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int ap = 0; ap < d; ++ap)
                    for (int bp = 0; bp < d; ++bp)
                        for (int cp = 0; cp < d; ++cp) {
                            Complex acc(0.0, 0.0);
                            for (int r = 0; r < n_ext; ++r)
                                acc += z2[static_cast<std::size_t>(r) * d * d * d * d + idx4(a, b, ap, bp, d)] * ext[r](c, cp);
                            out.matrix((static_cast<Eigen::Index>(a) * d + b) * d + c,
                                       (static_cast<Eigen::Index>(ap) * d + bp) * d + cp) = acc;
                        }
    return out;
}

CorrelationSlices slices(const BlochTensor& tensor, const NWeights& weights) {
    const int d = tensor.d;
    if (d < 2) {
        throw dimension_error("slices: local dimension must be >= 2");
    }
    const int n = d * d - 1;
    GeneratorBasis basis(d);
    const int f1 = basis.first_diagonal();
    const int f2 = basis.first_symmetric();
    const int f3 = basis.first_antisymmetric();

    CorrelationSlices out;
    out.d = d;
    auto mat = [&] { return RealMatrix::Zero(n, n); };
    out.T1_123 = mat(); out.T2_123 = mat(); out.T3_123 = mat();
    out.T_213 = mat();
    out.T1_312 = mat(); out.T2_312 = mat(); out.T3_312 = mat();

    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            out.T1_123(r, c) = tensor.three_body(f1, c, r);
            out.T2_123(r, c) = tensor.three_body(f2, c, r);
            out.T3_123(r, c) = tensor.three_body(f3, c, r);
            out.T_213(r, c) = tensor.three_body(c, f1, r);
            out.T1_312(r, c) = tensor.three_body(c, r, f1);
            out.T2_312(r, c) = tensor.three_body(c, r, f2);
            out.T3_312(r, c) = tensor.three_body(c, r, f3);
        }

    out.N_123 = weights.t1 * out.T1_123 + weights.t2 * out.T2_123 + weights.t3 * out.T3_123;
    out.N_213 = weights.mid * out.T_213;
    out.N_312 = weights.t1 * out.T1_312 + weights.t2 * out.T2_312 + weights.t3 * out.T3_312;
    return out;
}

std::array<double, 3> n_trace_norms(const CorrelationSlices& s) {
    return {linalg::trace_norm(s.N_123), linalg::trace_norm(s.N_213), linalg::trace_norm(s.N_312)};
}

double t_value(const DensityMatrix& rho, const NWeights& weights) {
    const auto norms = n_trace_norms(slices(extract(rho), weights));
    return (norms[0] + norms[1] + norms[2]) / 3.0;
}

} // namespace gme::bloch
