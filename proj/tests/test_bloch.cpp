#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gme/bloch.hpp"
#include "gme/states.hpp"
#include "test_support.hpp"

using namespace gme;
using bloch::DensityMatrix;
using bloch::GeneratorBasis;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::Rng;

namespace {

DensityMatrix maximally_mixed(int d) {
    const Eigen::Index dim = static_cast<Eigen::Index>(d) * d * d;
    DensityMatrix rho;
    rho.d = d;
    rho.matrix = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
    return rho;
}

} // namespace

TEST_CASE("generator basis for qubits is (sigma_z, sigma_x, sigma_y)") {
    const GeneratorBasis basis(2);
    REQUIRE(basis.count() == 3);
    ComplexMatrix sz{{1.0, 0.0}, {0.0, -1.0}};
    ComplexMatrix sx{{0.0, 1.0}, {1.0, 0.0}};
    ComplexMatrix sy{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
    CHECK((basis[0] - sz).cwiseAbs().maxCoeff() == 0.0);
    CHECK((basis[1] - sx).cwiseAbs().maxCoeff() == 0.0);
    CHECK((basis[2] - sy).cwiseAbs().maxCoeff() == 0.0);
    CHECK(basis.first_diagonal() == 0);
    CHECK(basis.first_symmetric() == 1);
    CHECK(basis.first_antisymmetric() == 2);
}

TEST_CASE("generator basis for qutrits starts with the diagonal family") {
    const GeneratorBasis basis(3);
    REQUIRE(basis.count() == 8);
    ComplexMatrix g0 = ComplexMatrix::Zero(3, 3);
    g0(0, 0) = 1.0;
    g0(1, 1) = -1.0;
    CHECK((basis[0] - g0).cwiseAbs().maxCoeff() <= 1e-15);
    ComplexMatrix g1 = ComplexMatrix::Zero(3, 3);
    g1(0, 0) = 1.0;
    g1(1, 1) = 1.0;
    g1(2, 2) = -2.0;
    g1 /= std::sqrt(3.0);
    CHECK((basis[1] - g1).cwiseAbs().maxCoeff() <= 1e-15);
    // Slice positions: first symmetric pairs (0,1), first antisymmetric pairs (0,1).
    CHECK(basis[basis.first_symmetric()](0, 1) == Complex(1.0));
    CHECK(basis[basis.first_antisymmetric()](0, 1) == Complex(0.0, -1.0));
}

TEST_CASE("generator basis is orthonormal, Hermitian and traceless") {
    for (int d = 2; d <= 5; ++d) {
        const GeneratorBasis basis(d);
        REQUIRE(basis.count() == d * d - 1);
        for (int i = 0; i < basis.count(); ++i) {
            CHECK((basis[i] - basis[i].adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK(std::abs(basis[i].trace()) <= 1e-12);
            for (int j = 0; j < basis.count(); ++j) {
                const Complex inner = (basis[i] * basis[j]).trace();
                CHECK(std::abs(inner - (i == j ? Complex(2.0) : Complex(0.0))) <= 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(GeneratorBasis(1), dimension_error);
}

TEST_CASE("density validation names the failed check") {
    auto rho = maximally_mixed(2);
    CHECK_NOTHROW(bloch::validate_density(rho));

    auto bad_trace = rho;
    bad_trace.matrix *= 2.0;
    CHECK_THROWS_WITH_AS(bloch::validate_density(bad_trace), doctest::Contains("trace"),
                         std::invalid_argument);

    auto bad_herm = rho;
    bad_herm.matrix(0, 1) = Complex(0.25, 0.0);
    CHECK_THROWS_WITH_AS(bloch::validate_density(bad_herm), doctest::Contains("hermiticity"),
                         std::invalid_argument);

    auto bad_psd = rho;
    bad_psd.matrix(0, 0) = Complex(-0.1, 0.0);
    bad_psd.matrix(1, 1) += Complex(0.1, 0.0);
    CHECK_THROWS_WITH_AS(bloch::validate_density(bad_psd), doctest::Contains("positivity"),
                         std::invalid_argument);

    auto bad_shape = rho;
    bad_shape.matrix.resize(7, 7);
    CHECK_THROWS_WITH_AS(bloch::validate_density(bad_shape), doctest::Contains("shape"),
                         std::invalid_argument);
}

TEST_CASE("extraction of the maximally mixed state vanishes") {
    const auto tensor = bloch::extract(maximally_mixed(2));
    CHECK(tensor.t1.cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(tensor.t2.cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(tensor.t3.cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(tensor.t12.cwiseAbs().maxCoeff() <= 1e-14);
    for (double v : tensor.t) CHECK(std::abs(v) <= 1e-14);
}

TEST_CASE("extraction of |000>") {
    states::PureState zero;
    zero.d = 2;
    zero.amplitudes = linalg::ComplexVector::Zero(8);
    zero.amplitudes(0) = 1.0;
    const auto tensor = bloch::extract(states::density(zero));
    for (int i = 0; i < 3; ++i) {
        const double want = i == 0 ? 1.0 : 0.0;
        CHECK(tensor.t1(i) == doctest::Approx(want).epsilon(1e-13));
        CHECK(tensor.t2(i) == doctest::Approx(want).epsilon(1e-13));
        CHECK(tensor.t3(i) == doctest::Approx(want).epsilon(1e-13));
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const double want = (i == 0 && j == 0 && k == 0) ? 1.0 : 0.0;
                CHECK(tensor.three_body(i, j, k) == doctest::Approx(want).epsilon(1e-13));
            }
}

TEST_CASE("extraction matches the per-coefficient trace oracle") {
    for (int d : {2, 3}) {
        Rng rng(100 + static_cast<unsigned>(d));
        const auto rho = testsupport::random_density(d, rng);
        const auto tensor = bloch::extract(rho);
        const GeneratorBasis basis(d);
        const ComplexMatrix id = ComplexMatrix::Identity(d, d);
        const int n = d * d - 1;
        for (int i = 0; i < n; ++i) {
            CHECK(tensor.t1(i) ==
                  doctest::Approx(testsupport::coefficient_oracle(rho.matrix, basis[i], id, id).real())
                      .epsilon(1e-11));
            CHECK(tensor.t3(i) ==
                  doctest::Approx(testsupport::coefficient_oracle(rho.matrix, id, id, basis[i]).real())
                      .epsilon(1e-11));
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(tensor.t13(i, j) ==
                      doctest::Approx(
                          testsupport::coefficient_oracle(rho.matrix, basis[i], id, basis[j]).real())
                          .epsilon(1e-11));
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const Complex want =
                        testsupport::coefficient_oracle(rho.matrix, basis[i], basis[j], basis[k]);
                    CHECK(std::abs(want.imag()) <= 1e-11);
                    CHECK(tensor.three_body(i, j, k) == doctest::Approx(want.real()).epsilon(1e-11));
                }
    }
}

TEST_CASE("extraction rejects non-Hermitian input") {
    auto rho = maximally_mixed(2);
    rho.matrix(0, 1) = Complex(0.3, 0.1);
    CHECK_THROWS_AS(bloch::extract(rho), numerical_error);
}

TEST_CASE("reconstruction of zero tensors gives the maximally mixed state") {
    for (int d : {2, 3}) {
        bloch::BlochTensor tensor;
        tensor.d = d;
        const int n = d * d - 1;
        tensor.t1 = linalg::RealVector::Zero(n);
        tensor.t2 = linalg::RealVector::Zero(n);
        tensor.t3 = linalg::RealVector::Zero(n);
        tensor.t12 = linalg::RealMatrix::Zero(n, n);
        tensor.t13 = linalg::RealMatrix::Zero(n, n);
        tensor.t23 = linalg::RealMatrix::Zero(n, n);
        tensor.t.assign(static_cast<std::size_t>(n) * n * n, 0.0);
        const auto rho = bloch::reconstruct(tensor);
        CHECK((rho.matrix - maximally_mixed(d).matrix).cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("reconstruct rejects mismatched shapes") {
    auto tensor = bloch::extract(maximally_mixed(2));
    tensor.t1.resize(5);
    CHECK_THROWS_AS(bloch::reconstruct(tensor), dimension_error);
}

TEST_CASE("extract-reconstruct round trip on random states") {
    for (int d : {2, 3, 4}) {
        Rng rng(500 + static_cast<unsigned>(d));
        for (int trial = 0; trial < 5; ++trial) {
            const auto rho = testsupport::random_density(d, rng);
            const auto back = bloch::reconstruct(bloch::extract(rho));
            CHECK((back.matrix - rho.matrix).cwiseAbs().maxCoeff() <= 1e-10);
        }
    }
}

TEST_CASE("slice matrices of |000>") {
    states::PureState zero;
    zero.d = 2;
    zero.amplitudes = linalg::ComplexVector::Zero(8);
    zero.amplitudes(0) = 1.0;
    const auto s = bloch::slices(bloch::extract(states::density(zero)));
    CHECK(s.T1_123(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.T1_123.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(linalg::trace_norm(s.N_123) == doctest::Approx(15.0).epsilon(1e-12));
}

TEST_CASE("slice matrices of |0> x Bell pair") {
    states::PureState psi;
    psi.d = 2;
    psi.amplitudes = linalg::ComplexVector::Zero(8);
    psi.amplitudes(0) = 1.0 / std::sqrt(2.0); // |000>
    psi.amplitudes(3) = 1.0 / std::sqrt(2.0); // |011>
    const auto s = bloch::slices(bloch::extract(states::density(psi)));
    linalg::RealMatrix want = linalg::RealMatrix::Zero(3, 3);
    want(0, 0) = 1.0;
    want(1, 1) = 1.0;
    want(2, 2) = -1.0;
    CHECK((s.T1_123 - want).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(linalg::trace_norm(s.N_123) == doctest::Approx(45.0).epsilon(1e-12));
}

TEST_CASE("combined matrix of the balanced two-branch state") {
    const double half = std::sqrt(0.5);
    const double taus[2] = {half, half};
    const auto psi = states::canonical_case_state(2, states::CanonicalCase::case_ii, taus);
    const auto s = bloch::slices(bloch::extract(states::density(psi)));
    CHECK(linalg::trace_norm(s.N_123) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("t_value of reference states") {
    CHECK(bloch::t_value(maximally_mixed(2)) == doctest::Approx(0.0));

    // Three-qubit W: closed form (2 * ||N_1|23|| + 28/3) / 3.
    const double n1 = std::sqrt(2941.0 / 18.0 - 5.0 * std::sqrt(5657.0) / 6.0) +
                      std::sqrt(2941.0 / 18.0 + 5.0 * std::sqrt(5657.0) / 6.0) + 10.0;
    const double t_w = bloch::t_value(states::density(states::w_qubit()));
    CHECK(t_w == doctest::Approx(26.4918).epsilon(4e-5));
    CHECK(t_w == doctest::Approx((2.0 * n1 + 28.0 / 3.0) / 3.0).epsilon(1e-12));

    // Three-qutrit W, pinned pipeline value. The quoted line slope 34.5797
    // for this family matches a variant that fixes the 2|13 middle index at
    // the first symmetric generator; the definitions used here fix it at the
    // first diagonal generator, which the d=2 canonical-case formulas require.
    const double t_w3 = bloch::t_value(states::density(states::w3_qutrit()));
    CHECK(t_w3 == doctest::Approx(35.518369283876).epsilon(1e-12));
}

TEST_CASE("extraction is linear in the state") {
    Rng rng(11);
    const auto rho_a = testsupport::random_density(2, rng);
    const auto rho_b = testsupport::random_density(2, rng);
    const double x = 0.3125;
    bloch::DensityMatrix mix;
    mix.d = 2;
    mix.matrix = (1.0 - x) * rho_a.matrix + x * rho_b.matrix;
    const auto ta = bloch::extract(rho_a);
    const auto tb = bloch::extract(rho_b);
    const auto tm = bloch::extract(mix);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                CHECK(tm.three_body(i, j, k) ==
                      doctest::Approx((1.0 - x) * ta.three_body(i, j, k) + x * tb.three_body(i, j, k))
                          .epsilon(1e-12));
            }
    CHECK((tm.t12 - ((1.0 - x) * ta.t12 + x * tb.t12)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("white noise only rescales the tensors") {
    for (int d : {2, 3}) {
        const auto pure = d == 2 ? states::w_qubit() : states::w3_qutrit();
        const double t_pure = bloch::t_value(states::density(pure));
        for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const double t_mixed = bloch::t_value(states::white_noise(pure, x));
            CHECK(std::abs(t_mixed - x * t_pure) <= 1e-10);
        }
    }
}

TEST_CASE("combined-matrix norms are invariant under unitaries on the free parties") {
    // Spot check; the full 200-trial suite runs in the acceptance tests.
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = testsupport::random_density(2, rng);
        const auto norms = bloch::n_trace_norms(bloch::slices(bloch::extract(rho)));

        const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
        const ComplexMatrix u2 = linalg::haar_unitary(2, rng);
        const ComplexMatrix u3 = linalg::haar_unitary(2, rng);
        const ComplexMatrix u = testsupport::kron3(id, u2, u3);
        bloch::DensityMatrix rotated;
        rotated.d = 2;
        rotated.matrix = u * rho.matrix * u.adjoint();
        const auto rotated_norms = bloch::n_trace_norms(bloch::slices(bloch::extract(rotated)));
        CHECK(std::abs(rotated_norms[0] - norms[0]) <= 1e-8);
    }
}

TEST_CASE("party-reversal symmetry links the two outer norms") {
    for (const auto& psi : {states::ghz(2), states::w_qubit(), states::ghz(3), states::w3_qutrit()}) {
        const auto norms = bloch::n_trace_norms(bloch::slices(bloch::extract(states::density(psi))));
        CHECK(std::abs(norms[2] - norms[0]) <= 1e-9 * std::max(1.0, norms[0]));
    }
}

TEST_CASE("combined-matrix weights are configurable") {
    // With all weights 1 the |000> combined matrix collapses to the plain slice sum.
    states::PureState zero;
    zero.d = 2;
    zero.amplitudes = linalg::ComplexVector::Zero(8);
    zero.amplitudes(0) = 1.0;
    bloch::NWeights w;
    w.t1 = 1.0;
    const auto s = bloch::slices(bloch::extract(states::density(zero)), w);
    CHECK(linalg::trace_norm(s.N_123) == doctest::Approx(1.0).epsilon(1e-12));
}
