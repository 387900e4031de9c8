#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gme/errors.hpp"

namespace gme::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// All randomness flows through caller-owned engines so runs are replayable.
using Rng = std::mt19937_64;

// Singular values of m, sorted descending. Values below
// 1e-13 * sigma_max are snapped to exact zero.
std::vector<double> singular_values(const RealMatrix& m);

// Schatten-1 norm: the sum of singular values.
double trace_norm(const RealMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Haar-distributed d x d unitary: QR of a standard complex Gaussian matrix
// with the R diagonal phases folded back into Q.
ComplexMatrix haar_unitary(int d, Rng& rng);
ComplexMatrix haar_unitary(int d, std::uint64_t seed);

// Haar-random unit vector in C^dim (normalized complex Gaussian).
ComplexVector haar_state(int dim, Rng& rng);

} // namespace gme::linalg
