#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace thermobound {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Largest |H_ij - conj(H_ji)| over all entries.
double max_asymmetry(const ComplexMatrix &m);

/// Largest |H_ij| over all entries.
double max_abs_entry(const ComplexMatrix &m);

/// Dense Hermitian operator (Hamiltonian, number operator, observable).
///
/// Construction checks max|H - H^dagger| <= 1e-9 (1 + max|H|) and stores the
/// exactly Hermitian part (H + H^dagger)/2, so downstream code can rely on
/// real diagonals and conjugate-symmetric off-diagonals.
class HermitianOperator {
  public:
    static constexpr double hermiticity_tolerance = 1e-9;

    explicit HermitianOperator(const ComplexMatrix &entries);

    static HermitianOperator zero(Eigen::Index dim);
    static HermitianOperator identity(Eigen::Index dim);
    static HermitianOperator diagonal(std::span<const double> values);
    static HermitianOperator diagonal(const RealVector &values);

    [[nodiscard]] Eigen::Index dim() const { return entries_.rows(); }
    [[nodiscard]] const ComplexMatrix &matrix() const { return entries_; }

    HermitianOperator &operator+=(const HermitianOperator &other);
    HermitianOperator &operator-=(const HermitianOperator &other);
    HermitianOperator &operator*=(double scale);

    friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator &b) { return a += b; }
    friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator &b) { return a -= b; }
    friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }
    friend HermitianOperator operator*(HermitianOperator a, double s) { return a *= s; }

    /// U H U^dagger for a unitary U of matching dimension.
    [[nodiscard]] HermitianOperator conjugated(const ComplexMatrix &unitary) const;

  private:
    struct Trusted {};
    HermitianOperator(ComplexMatrix entries, Trusted);
    ComplexMatrix entries_;
};

struct SpectralDecomposition {
    RealVector eigenvalues;    // ascending
    ComplexMatrix eigenvectors; // column j belongs to eigenvalues[j]

    [[nodiscard]] Eigen::Index dim() const { return eigenvalues.size(); }
    [[nodiscard]] ComplexMatrix reconstruct() const;
};

/// Eigendecomposition with a reproducible basis: degenerate clusters are
/// re-orthonormalized by Gram-Schmidt in solver order, and every column is
/// phased so its first significant component is real and positive.
SpectralDecomposition eigendecompose(const HermitianOperator &h);

/// Applies fn to each eigenvalue and rebuilds U f(Lambda) U^dagger.
template<typename Fn>
ComplexMatrix apply_function(const SpectralDecomposition &sd, Fn &&fn) {
    RealVector values(sd.dim());
    for(Eigen::Index i = 0; i < sd.dim(); ++i) values[i] = fn(sd.eigenvalues[i]);
    return sd.eigenvectors * values.asDiagonal() * sd.eigenvectors.adjoint();
}

/// e^{-beta H} together with its trace.
///
/// When beta * max|lambda| would overflow the exponent budget, the matrix is
/// e^{-beta (H - shift)} with shift = lambda_min, and trace is the trace of
/// that shifted matrix. log_trace is always ln Tr e^{-beta H}.
struct BoltzmannWeight {
    ComplexMatrix matrix;
    double trace = 0.0;
    double shift = 0.0;
    double log_trace = 0.0;
};

BoltzmannWeight boltzmann_weight(const HermitianOperator &h, double beta);
BoltzmannWeight boltzmann_weight(const SpectralDecomposition &sd, double beta);

/// Re Tr(rho A). rho must be Hermitian with unit trace.
double mean_value(const ComplexMatrix &rho, const HermitianOperator &a);

/// Tr(rho A) without the density-matrix preconditions; used for diagnostics.
Complex trace_product(const ComplexMatrix &a, const ComplexMatrix &b);

} // namespace thermobound
