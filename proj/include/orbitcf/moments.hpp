#pragma once

#include <armadillo>

#include "orbitcf/linalg.hpp"

namespace orbitcf {

/// E{|u^H v|^2} for independent u ~ CN(u_bar, R_u), v ~ CN(v_bar, R_v).
double moment_independent(const arma::cx_vec& u_bar, const arma::cx_vec& v_bar, const arma::cx_mat& r_u,
                          const arma::cx_mat& r_v);

struct CorrelatedMoments {
    cx first;       ///< E{u^H v}
    double second;  ///< E{|u^H v|^2}
};

/// Moments for u = R_u^{1/2} m + u_bar and v = R_v^{1/2} m + v_bar sharing the
/// same standard complex Gaussian m. Square roots are the Hermitian PSD ones.
CorrelatedMoments moment_correlated(const arma::cx_vec& u_bar, const arma::cx_vec& v_bar, const arma::cx_mat& r_u,
                                    const arma::cx_mat& r_v);

}  // namespace orbitcf
