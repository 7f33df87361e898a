#include "orbitcf/linalg.hpp"

#include <string>

#include "orbitcf/errors.hpp"

namespace orbitcf {

arma::cx_mat hermitian_part(const arma::cx_mat& x) { return 0.5 * (x + x.t()); }

cx trace_product(const arma::cx_mat& a, const arma::cx_mat& b) {
    if (a.n_cols != b.n_rows || a.n_rows != b.n_cols) throw InputError("trace_product: dimension mismatch");
    return arma::accu(a % b.st());
}

double quad_form(const arma::cx_vec& x, const arma::cx_mat& a) { return std::real(arma::cdot(x, a * x)); }

arma::cx_mat psd_sqrt(const arma::cx_mat& r) {
    if (!r.is_square()) throw InputError("psd_sqrt: matrix must be square");
    const double scale = arma::norm(r, "fro");
    if (scale == 0.0) return arma::cx_mat(r.n_rows, r.n_cols, arma::fill::zeros);
    arma::vec eigval;
    arma::cx_mat eigvec;
    if (!arma::eig_sym(eigval, eigvec, hermitian_part(r)))
        throw NumericalError("psd_sqrt: eigendecomposition failed");
    const double tol = 1e-10 * scale;
    for (double& lam : eigval) {
        if (lam < -tol) throw NumericalError("psd_sqrt: matrix is not PSD (eigenvalue " + std::to_string(lam) + ")");
        lam = lam < 0.0 ? 0.0 : std::sqrt(lam);
    }
    return hermitian_part(eigvec * arma::diagmat(arma::conv_to<arma::cx_vec>::from(eigval)) * eigvec.t());
}

arma::cx_mat hpd_inverse(const arma::cx_mat& a, double max_cond) {
    if (!a.is_square()) throw InputError("hpd_inverse: matrix must be square");
    arma::vec eigval;
    arma::cx_mat eigvec;
    if (!arma::eig_sym(eigval, eigvec, hermitian_part(a)))
        throw NumericalError("hpd_inverse: eigendecomposition failed");
    const double lo = eigval.min();
    const double hi = eigval.max();
    if (!(lo > 0.0) || hi / lo > max_cond)
        throw NumericalError("hpd_inverse: condition number exceeds " + std::to_string(max_cond));
    return hermitian_part(eigvec * arma::diagmat(arma::conv_to<arma::cx_vec>::from(1.0 / eigval)) * eigvec.t());
}

double hermitian_defect(const arma::cx_mat& a) {
    const double scale = arma::norm(a, "fro");
    if (scale == 0.0) return 0.0;
    return arma::abs(a - a.t()).max() / scale;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(splitmix64(base) ^ splitmix64(stream ^ 0xD1B54A32D192ED03ULL));
}

}  // namespace orbitcf
