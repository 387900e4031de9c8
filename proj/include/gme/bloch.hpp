#pragma once

#include <array>
#include <vector>

#include "gme/linalg.hpp"

namespace gme::bloch {

// Ordered traceless Hermitian generator basis of SU(d) for one party,
// normalized to Tr(g_i g_j) = 2 delta_ij. Storage is 0-based; the blocks are
//
//   [0 .. d-2]             diagonal:  sqrt(2/(m(m+1))) (sum_{a<m}|a><a| - m|m><m|), m = index+1
//   [d-1 .. d(d+1)/2-2]    symmetric: |j><k| + |k><j|,     pairs (j,k), j<k, lexicographic
//   [d(d+1)/2-1 .. d^2-2]  antisym:  -i(|j><k| - |k><j|),  same pair order
//
// For d=2 this is exactly (sigma_z, sigma_x, sigma_y).
class GeneratorBasis {
public:
    explicit GeneratorBasis(int d);

    int dim() const { return d_; }
    int count() const { return static_cast<int>(generators_.size()); }
    const linalg::ComplexMatrix& operator[](int i) const { return generators_[i]; }

    // 0-based positions of the generators the slice matrices fix.
    int first_diagonal() const { return 0; }
    int first_symmetric() const { return d_ - 1; }
    int first_antisymmetric() const { return d_ * (d_ + 1) / 2 - 1; }

private:
    int d_;
    std::vector<linalg::ComplexMatrix> generators_;
};

GeneratorBasis gellmann_basis(int d);

// State of a tripartite d x d x d system. Basis index of |abc> is
// a*d^2 + b*d + c (party-major, matching the Kronecker order).
struct DensityMatrix {
    int d = 0;
    linalg::ComplexMatrix matrix; // d^3 x d^3
};

struct ValidationTolerances {
    double trace = 1e-10;
    double hermiticity = 1e-10;
    double psd = 1e-8; // smallest eigenvalue may dip to -psd
};

// Throws std::invalid_argument naming the failed check
// (shape / hermiticity / trace / positivity).
void validate_density(const DensityMatrix& rho, const ValidationTolerances& tol = {});

// Correlation coefficients of a state against the generator basis:
// one-body t^a_i, two-body t^{ab}_{ij} and three-body t_{ijk}, all real.
struct BlochTensor {
    int d = 0;
    linalg::RealVector t1, t2, t3;    // length d^2-1
    linalg::RealMatrix t12, t13, t23; // (d^2-1)^2, entry (i,j) pairs the two named parties
    std::vector<double> t;            // t_{ijk}, row-major over (i,j,k)

    int side() const { return d * d - 1; }
    double three_body(int i, int j, int k) const { return t[(static_cast<std::size_t>(i) * side() + j) * side() + k]; }
    double& three_body(int i, int j, int k) { return t[(static_cast<std::size_t>(i) * side() + j) * side() + k]; }
};

// Computes every coefficient Tr(rho g_i (x) g_j (x) g_k) (identity factors
// included for the lower-order tensors). Imaginary residue above 1e-10 on any
// coefficient throws numerical_error; |t_ijk| > 4 throws as well.
BlochTensor extract(const DensityMatrix& rho);

// Rebuilds the state from its coefficients with weights 1/d^3, 1/(2d^2),
// 1/(4d), 1/8 on the identity / one-body / two-body / three-body terms.
DensityMatrix reconstruct(const BlochTensor& tensor);

// Weights of the combined matrices; defaults give
// N_123 = 15 T1 + T2 + T3, N_213 = 4 T, N_312 = 15 T1 + T2 + T3.
struct NWeights {
    double t1 = 15.0;
    double t2 = 1.0;
    double t3 = 1.0;
    double mid = 4.0;
};

// The seven slice matrices and the three combined matrices, all
// (d^2-1) x (d^2-1). With 1-based generator indices and f in
// {1, d, d(d+1)/2} for the T1/T2/T3 family:
//
//   T*_123[r][c] = t_{f, c, r}     (first index fixed)
//   T_213 [r][c] = t_{c, 1, r}     (middle index fixed at 1)
//   T*_312[r][c] = t_{c, r, f}     (last index fixed)
//
// matching the row/column layout of the 3x3 displays at d=2.
struct CorrelationSlices {
    int d = 0;
    linalg::RealMatrix T1_123, T2_123, T3_123;
    linalg::RealMatrix T_213;
    linalg::RealMatrix T1_312, T2_312, T3_312;
    linalg::RealMatrix N_123, N_213, N_312;
};

CorrelationSlices slices(const BlochTensor& tensor, const NWeights& weights = {});

// Trace norms of (N_123, N_213, N_312).
std::array<double, 3> n_trace_norms(const CorrelationSlices& s);

// T(rho): the mean of the three combined-matrix trace norms.
double t_value(const DensityMatrix& rho, const NWeights& weights = {});

} // namespace gme::bloch
