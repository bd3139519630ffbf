#pragma once

#include <random>

#include "thermobound/spectral.hpp"

namespace thermobound {

/// Random Hermitian matrix (GUE-like) with entries of order `scale`.
template<typename Rng>
HermitianOperator random_hermitian(Eigen::Index dim, Rng &rng, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for(Eigen::Index i = 0; i < dim; ++i)
        for(Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    ComplexMatrix h = (g + g.adjoint()) * (0.5 * scale);
    return HermitianOperator(h);
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of R's diagonal removed.
template<typename Rng>
ComplexMatrix random_unitary(Eigen::Index dim, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for(Eigen::Index i = 0; i < dim; ++i)
        for(Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for(Eigen::Index j = 0; j < dim; ++j) {
        const double mag = std::abs(r(j, j));
        if(mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

/// Random density matrix: W W^dagger / Tr for a complex Ginibre W.
template<typename Rng>
ComplexMatrix random_density_matrix(Eigen::Index dim, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix w(dim, dim);
    for(Eigen::Index i = 0; i < dim; ++i)
        for(Eigen::Index j = 0; j < dim; ++j) w(i, j) = Complex(normal(rng), normal(rng));
    ComplexMatrix rho = w * w.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

} // namespace thermobound
