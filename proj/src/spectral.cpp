#include "thermobound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>

#include "thermobound/error.hpp"

namespace thermobound {

namespace {

// Exponents beyond this are treated as overflow risk; weights below
// e^{-exponent_budget} relative to the largest are flushed to zero.
constexpr double exponent_budget = 700.0;

constexpr double degeneracy_tolerance = 1e-10;

void require_square(const ComplexMatrix &m, const char *what) {
    if(m.rows() != m.cols())
        throw DimensionError(fmt::format("{} must be square, got {}x{}", what, m.rows(), m.cols()));
    if(m.rows() < 1) throw DimensionError(fmt::format("{} must have dimension >= 1", what));
}

void require_finite(const ComplexMatrix &m, const char *what) {
    if(!m.allFinite()) throw DomainError(fmt::format("{} has non-finite entries", what));
}

// Modified Gram-Schmidt over columns [first, last) in place.
void orthonormalize_block(ComplexMatrix &v, Eigen::Index first, Eigen::Index last) {
    for(Eigen::Index j = first; j < last; ++j) {
        for(Eigen::Index k = first; k < j; ++k) {
            const Complex overlap = v.col(k).dot(v.col(j));
            v.col(j) -= overlap * v.col(k);
        }
        const double norm = v.col(j).norm();
        if(norm < 1e-12) throw NumericalError("eigendecompose: degenerate eigenvectors are linearly dependent");
        v.col(j) /= norm;
    }
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> column) {
    const double largest = column.cwiseAbs().maxCoeff();
    for(Eigen::Index i = 0; i < column.size(); ++i) {
        const double mag = std::abs(column[i]);
        if(mag > 1e-8 * largest) {
            column *= std::conj(column[i]) / mag;
            column[i] = Complex(mag, 0.0);
            return;
        }
    }
}

} // namespace

double max_asymmetry(const ComplexMatrix &m) {
    if(m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_entry(const ComplexMatrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

HermitianOperator::HermitianOperator(const ComplexMatrix &entries) {
    require_square(entries, "HermitianOperator");
    require_finite(entries, "HermitianOperator");
    const double asym = max_asymmetry(entries);
    const double limit = hermiticity_tolerance * (1.0 + max_abs_entry(entries));
    if(asym > limit)
        throw DomainError(fmt::format("operator is not Hermitian: max|H - H^dagger| = {:.3e} exceeds {:.3e}", asym, limit));
    entries_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator::HermitianOperator(ComplexMatrix entries, Trusted) : entries_(std::move(entries)) {}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
    if(dim < 1) throw DimensionError("HermitianOperator::zero: dimension must be >= 1");
    return {ComplexMatrix::Zero(dim, dim), Trusted{}};
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
    if(dim < 1) throw DimensionError("HermitianOperator::identity: dimension must be >= 1");
    return {ComplexMatrix::Identity(dim, dim), Trusted{}};
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> values) {
    return diagonal(RealVector(Eigen::Map<const RealVector>(values.data(), static_cast<Eigen::Index>(values.size()))));
}

HermitianOperator HermitianOperator::diagonal(const RealVector &values) {
    if(values.size() < 1) throw DimensionError("HermitianOperator::diagonal: empty diagonal");
    if(!values.allFinite()) throw DomainError("HermitianOperator::diagonal: non-finite entries");
    return {ComplexMatrix(values.cast<Complex>().asDiagonal()), Trusted{}};
}

HermitianOperator &HermitianOperator::operator+=(const HermitianOperator &other) {
    if(other.dim() != dim()) throw DimensionError(fmt::format("operator sum: dimensions {} and {} differ", dim(), other.dim()));
    entries_ += other.entries_;
    return *this;
}

HermitianOperator &HermitianOperator::operator-=(const HermitianOperator &other) {
    if(other.dim() != dim())
        throw DimensionError(fmt::format("operator difference: dimensions {} and {} differ", dim(), other.dim()));
    entries_ -= other.entries_;
    return *this;
}

HermitianOperator &HermitianOperator::operator*=(double scale) {
    if(!std::isfinite(scale)) throw DomainError("operator scale must be finite");
    entries_ *= scale;
    return *this;
}

HermitianOperator HermitianOperator::conjugated(const ComplexMatrix &unitary) const {
    if(unitary.rows() != dim() || unitary.cols() != dim())
        throw DimensionError(fmt::format("conjugated: unitary is {}x{}, operator dimension {}", unitary.rows(), unitary.cols(), dim()));
    ComplexMatrix m = unitary * entries_ * unitary.adjoint();
    return {0.5 * (m + m.adjoint()), Trusted{}};
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition eigendecompose(const HermitianOperator &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
    if(solver.info() != Eigen::Success)
        throw NumericalError(fmt::format("eigendecompose: solver did not converge for dimension {}", h.dim()));

    SpectralDecomposition sd{solver.eigenvalues(), solver.eigenvectors()};
    const Eigen::Index n = sd.dim();
    const double scale = 1.0 + sd.eigenvalues.cwiseAbs().maxCoeff();

    Eigen::Index start = 0;
    while(start < n) {
        Eigen::Index stop = start + 1;
        while(stop < n && sd.eigenvalues[stop] - sd.eigenvalues[stop - 1] <= degeneracy_tolerance * scale) ++stop;
        if(stop - start > 1) orthonormalize_block(sd.eigenvectors, start, stop);
        start = stop;
    }
    for(Eigen::Index j = 0; j < n; ++j) fix_phase(sd.eigenvectors.col(j));
    return sd;
}

BoltzmannWeight boltzmann_weight(const SpectralDecomposition &sd, double beta) {
    if(!std::isfinite(beta) || beta <= 0.0) throw DomainError(fmt::format("boltzmann_weight: beta must be positive and finite, got {}", beta));
    const double lo = sd.eigenvalues.minCoeff();
    const double hi = sd.eigenvalues.maxCoeff();

    BoltzmannWeight out;
    if(beta * std::max(std::abs(lo), std::abs(hi)) > exponent_budget) out.shift = lo;

    RealVector weights(sd.dim());
    for(Eigen::Index i = 0; i < sd.dim(); ++i) {
        const double exponent = -beta * (sd.eigenvalues[i] - out.shift);
        weights[i] = (out.shift != 0.0 && exponent < -exponent_budget) ? 0.0 : std::exp(exponent);
    }
    out.trace = weights.sum();
    out.log_trace = std::log(out.trace) - beta * out.shift;
    out.matrix = sd.eigenvectors * weights.cast<Complex>().asDiagonal() * sd.eigenvectors.adjoint();
    return out;
}

BoltzmannWeight boltzmann_weight(const HermitianOperator &h, double beta) {
    if(!std::isfinite(beta) || beta <= 0.0) throw DomainError(fmt::format("boltzmann_weight: beta must be positive and finite, got {}", beta));
    return boltzmann_weight(eigendecompose(h), beta);
}

Complex trace_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if(a.rows() != b.cols() || a.cols() != b.rows())
        throw DimensionError(fmt::format("trace_product: shapes {}x{} and {}x{} do not pair", a.rows(), a.cols(), b.rows(), b.cols()));
    // Tr(AB) = sum_ij A_ij B_ji
    return (a.array() * b.transpose().array()).sum();
}

double mean_value(const ComplexMatrix &rho, const HermitianOperator &a) {
    if(rho.rows() != rho.cols()) throw DimensionError("mean_value: density matrix must be square");
    if(rho.rows() != a.dim())
        throw DimensionError(fmt::format("mean_value: density matrix dimension {} vs operator dimension {}", rho.rows(), a.dim()));
    const double asym = max_asymmetry(rho);
    if(asym > HermitianOperator::hermiticity_tolerance * (1.0 + max_abs_entry(rho)))
        throw DomainError(fmt::format("mean_value: density matrix is not Hermitian (asymmetry {:.3e})", asym));
    const Complex tr = rho.trace();
    if(std::abs(tr - 1.0) > 1e-8) throw DomainError(fmt::format("mean_value: density matrix trace {} is not 1", tr.real()));

    const Complex value = trace_product(rho, a.matrix());
    const double magnitude = (rho.cwiseAbs().array() * a.matrix().transpose().cwiseAbs().array()).sum();
    if(std::abs(value.imag()) > 1e-9 * (1.0 + magnitude))
        throw NumericalError(fmt::format("mean_value: imaginary residue {:.3e} in Tr(rho A)", value.imag()));
    return value.real();
}

} // namespace thermobound
