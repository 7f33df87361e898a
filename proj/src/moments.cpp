#include "orbitcf/moments.hpp"

#include "orbitcf/errors.hpp"

namespace orbitcf {

namespace {

void check_dims(const arma::cx_vec& u_bar, const arma::cx_vec& v_bar, const arma::cx_mat& r_u, const arma::cx_mat& r_v) {
    const arma::uword n = u_bar.n_elem;
    if (v_bar.n_elem != n || r_u.n_rows != n || r_u.n_cols != n || r_v.n_rows != n || r_v.n_cols != n)
        throw InputError("moment: dimension mismatch");
}

}  // namespace

double moment_independent(const arma::cx_vec& u_bar, const arma::cx_vec& v_bar, const arma::cx_mat& r_u,
                          const arma::cx_mat& r_v) {
    check_dims(u_bar, v_bar, r_u, r_v);
    return std::real(trace_product(r_v, r_u)) + quad_form(v_bar, r_u) + quad_form(u_bar, r_v) +
           std::norm(arma::cdot(u_bar, v_bar));
}

CorrelatedMoments moment_correlated(const arma::cx_vec& u_bar, const arma::cx_vec& v_bar, const arma::cx_mat& r_u,
                                    const arma::cx_mat& r_v) {
    check_dims(u_bar, v_bar, r_u, r_v);
    // E{u^H v} picks up tr(R_u^{H/2} R_v^{1/2}) from the shared source.
    const cx shared = trace_product(psd_sqrt(r_u).t(), psd_sqrt(r_v));
    const cx first = arma::cdot(u_bar, v_bar) + shared;
    const double second =
        std::norm(first) + quad_form(v_bar, r_u) + quad_form(u_bar, r_v) + std::real(trace_product(r_v, r_u));
    return {first, second};
}

}  // namespace orbitcf
