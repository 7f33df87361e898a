#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <armadillo>

namespace orbitcf {

using cx = std::complex<double>;

/// 0.5 (X + X^H)
arma::cx_mat hermitian_part(const arma::cx_mat& x);

/// tr(A B) without forming the product.
cx trace_product(const arma::cx_mat& a, const arma::cx_mat& b);

/// Real part of x^H A y; exact for Hermitian A when x == y.
double quad_form(const arma::cx_vec& x, const arma::cx_mat& a);

/// Hermitian PSD square root via eigendecomposition. Eigenvalues in
/// [-1e-10 ||R||, 0) are clamped to zero; anything more negative throws NumericalError.
arma::cx_mat psd_sqrt(const arma::cx_mat& r);

/// Inverse of a Hermitian positive definite matrix; throws NumericalError when
/// the eigenvalue condition number exceeds max_cond.
arma::cx_mat hpd_inverse(const arma::cx_mat& a, double max_cond = 1e14);

/// Largest |A - A^H| entry relative to the Frobenius norm of A.
double hermitian_defect(const arma::cx_mat& a);

// --- random streams --------------------------------------------------------

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of an independent sub-stream, e.g. per drop or per Monte Carlo block.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Circularly-symmetric complex Gaussian with unit variance.
class ComplexNormal {
public:
    cx operator()(Rng& rng) {
        const double re = normal_(rng);
        const double im = normal_(rng);
        return {re, im};
    }

private:
    std::normal_distribution<double> normal_{0.0, 0.70710678118654752440};
};

}  // namespace orbitcf
