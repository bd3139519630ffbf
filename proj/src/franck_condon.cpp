#include "thermobound/franck_condon.hpp"

#include <cmath>

#include <fmt/format.h>

#include "thermobound/error.hpp"
#include "thermobound/thermal.hpp"

namespace thermobound::fc {

namespace {

constexpr double stochastic_tolerance = 1e-8;
constexpr double unitarity_tolerance = 1e-8;

void require_levels(const RealVector &levels, const char *context) {
    if(levels.size() < 1) throw DimensionError(fmt::format("{}: empty level set", context));
    if(levels.size() > max_levels)
        throw DimensionError(fmt::format("{}: {} levels exceeds the cap of {}", context, levels.size(), max_levels));
    if(!levels.allFinite()) throw DomainError(fmt::format("{}: levels must be finite", context));
}

void require_unitary(const ComplexMatrix &u, const char *context) {
    if(u.rows() != u.cols()) throw DimensionError(fmt::format("{}: basis must be square", context));
    const double defect = (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if(defect > unitarity_tolerance) throw DomainError(fmt::format("{}: basis is not unitary (defect {:.3e})", context, defect));
}

struct Populations {
    ProbabilityVector p1;
    ProbabilityVector p2;
    double mean_1 = 0.0; // sum p1_j e1_j
    double mean_2 = 0.0; // sum p2_l e2_l
    double mean_2_in_1 = 0.0;
    double mean_1_in_2 = 0.0;
};

Populations populate(const SpectralSystem &sys1, const SpectralSystem &sys2, double T1, double T2, const OverlapMatrix &k) {
    ProbabilityVector p1 = boltzmann_probs(sys1, T1);
    ProbabilityVector p2 = boltzmann_probs(sys2, T2);
    const auto [c21, c12] = cross_means_fc(p1, p2, sys1.levels, sys2.levels, k);
    const double e1 = p1.values().dot(sys1.levels);
    const double e2 = p2.values().dot(sys2.levels);
    return {std::move(p1), std::move(p2), e1, e2, c21, c12};
}

} // namespace

SpectralSystem::SpectralSystem(RealVector level_values, std::optional<ComplexMatrix> eigenbasis)
    : levels(std::move(level_values)), basis(std::move(eigenbasis)) {
    require_levels(levels, "SpectralSystem");
    if(basis) {
        if(basis->rows() != levels.size())
            throw DimensionError(fmt::format("SpectralSystem: basis dimension {} vs {} levels", basis->rows(), levels.size()));
        require_unitary(*basis, "SpectralSystem");
    }
}

SpectralSystem SpectralSystem::from_operator(const HermitianOperator &h) {
    SpectralDecomposition sd = eigendecompose(h);
    return SpectralSystem(std::move(sd.eigenvalues), std::move(sd.eigenvectors));
}

HermitianOperator SpectralSystem::to_operator() const {
    if(!basis) throw DomainError("SpectralSystem::to_operator: no basis available");
    return HermitianOperator(*basis * levels.cast<Complex>().asDiagonal() * basis->adjoint());
}

ProbabilityVector::ProbabilityVector(RealVector p) : p_(std::move(p)) {
    if(p_.size() < 1) throw DimensionError("ProbabilityVector: empty");
    if(!p_.allFinite() || (p_.array() < 0.0).any()) throw DomainError("ProbabilityVector: entries must be finite and >= 0");
    if(std::abs(p_.sum() - 1.0) > 1e-12)
        throw DomainError(fmt::format("ProbabilityVector: entries sum to {:.17g}, not 1", p_.sum()));
}

OverlapMatrix OverlapMatrix::from_bases(const ComplexMatrix &basis1, const ComplexMatrix &basis2) {
    require_unitary(basis1, "overlap_matrix");
    require_unitary(basis2, "overlap_matrix");
    if(basis1.rows() != basis2.rows())
        throw DimensionError(fmt::format("overlap_matrix: bases of dimension {} and {}", basis1.rows(), basis2.rows()));
    RealMatrix k = (basis1.adjoint() * basis2).cwiseAbs2();
    const double row_defect = (k.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double col_defect = (k.colwise().sum().array() - 1.0).abs().maxCoeff();
    if(std::max(row_defect, col_defect) > stochastic_tolerance)
        throw NumericalError(fmt::format("overlap_matrix: not doubly stochastic (defect {:.3e})", std::max(row_defect, col_defect)));
    return {std::move(k), true};
}

OverlapMatrix OverlapMatrix::from_data(RealMatrix k) {
    if(k.rows() < 1 || k.cols() < 1) throw DimensionError("OverlapMatrix: empty matrix");
    if(k.rows() > max_levels || k.cols() > max_levels) throw DimensionError("OverlapMatrix: exceeds the level cap");
    if(!k.allFinite() || (k.array() < 0.0).any() || (k.array() > 1.0 + stochastic_tolerance).any())
        throw DomainError("OverlapMatrix: entries must lie in [0, 1]");
    const double row_defect = (k.rowwise().sum().array() - 1.0).abs().maxCoeff();
    if(row_defect > stochastic_tolerance)
        throw DomainError(fmt::format("OverlapMatrix: rows must sum to 1 (worst defect {:.3e})", row_defect));
    return {std::move(k), false};
}

OverlapMatrix OverlapMatrix::identity(Eigen::Index n) {
    if(n < 1 || n > max_levels) throw DimensionError("OverlapMatrix::identity: bad dimension");
    return {RealMatrix::Identity(n, n), true};
}

double log_partition_function(const RealVector &levels, double T) {
    require_temperature(T, "log_partition_function");
    const double lowest = levels.minCoeff();
    return -lowest / T + std::log((-(levels.array() - lowest) / T).exp().sum());
}

ProbabilityVector boltzmann_probs(const SpectralSystem &sys, double T) {
    require_temperature(T, "boltzmann_probs");
    const double lowest = sys.levels.minCoeff();
    RealVector w = (-(sys.levels.array() - lowest) / T).exp().matrix();
    w /= w.sum();
    return ProbabilityVector(std::move(w));
}

OverlapMatrix overlap_matrix(const SpectralSystem &sys1, const SpectralSystem &sys2) {
    if(!sys1.basis || !sys2.basis) throw DomainError("overlap_matrix: both systems need an eigenbasis");
    return OverlapMatrix::from_bases(*sys1.basis, *sys2.basis);
}

std::pair<double, double> cross_means_fc(const ProbabilityVector &p1, const ProbabilityVector &p2, const RealVector &levels1,
                                         const RealVector &levels2, const OverlapMatrix &k) {
    if(p1.size() != levels1.size() || p2.size() != levels2.size())
        throw DimensionError("cross_means_fc: probability and level vectors differ in length");
    if(k.rows() != levels1.size() || k.cols() != levels2.size())
        throw DimensionError(fmt::format("cross_means_fc: overlap is {}x{}, systems have {} and {} levels", k.rows(), k.cols(),
                                         levels1.size(), levels2.size()));
    const RealMatrix &kv = k.values();
    const double mean_2_in_1 = p1.values().dot(kv * levels2);
    const double mean_1_in_2 = p2.values().dot(kv.transpose() * levels1);
    return {mean_2_in_1, mean_1_in_2};
}

BoundsResult delta_s_bounds_fc(const SpectralSystem &sys1, const SpectralSystem &sys2, double T1, double T2,
                               const OverlapMatrix &k) {
    const Populations pop = populate(sys1, sys2, T1, T2, k);
    BoundsResult r = BoundsResult::make((pop.mean_2 - pop.mean_2_in_1) / T2, (pop.mean_1_in_2 - pop.mean_1) / T1,
                                        shannon_entropy(pop.p2.values()) - shannon_entropy(pop.p1.values()));
    r.guaranteed = k.complete();
    return r;
}

BoundsResult helmholtz_bounds_fc(const SpectralSystem &sys1, const SpectralSystem &sys2, double T1, double T2,
                                 const OverlapMatrix &k) {
    const Populations pop = populate(sys1, sys2, T1, T2, k);
    BoundsResult r = BoundsResult::make(pop.mean_1 / T1 - pop.mean_2_in_1 / T2, pop.mean_1_in_2 / T1 - pop.mean_2 / T2,
                                        log_partition_function(sys2.levels, T2) - log_partition_function(sys1.levels, T1));
    r.guaranteed = k.complete();
    return r;
}

BoundsResult delta_s_bounds_same_basis(const RealVector &levels1, const RealVector &levels2, double T1, double T2) {
    if(levels1.size() != levels2.size()) throw DimensionError("delta_s_bounds_same_basis: level sets differ in length");
    const ProbabilityVector p1 = boltzmann_probs(SpectralSystem(levels1), T1);
    const ProbabilityVector p2 = boltzmann_probs(SpectralSystem(levels2), T2);
    const RealVector dp = p2.values() - p1.values();
    return BoundsResult::make(dp.dot(levels2) / T2, dp.dot(levels1) / T1,
                              shannon_entropy(p2.values()) - shannon_entropy(p1.values()));
}

BoundsResult helmholtz_bounds_same_basis(const RealVector &levels1, const RealVector &levels2, double T1, double T2) {
    if(levels1.size() != levels2.size()) throw DimensionError("helmholtz_bounds_same_basis: level sets differ in length");
    const ProbabilityVector p1 = boltzmann_probs(SpectralSystem(levels1), T1);
    const ProbabilityVector p2 = boltzmann_probs(SpectralSystem(levels2), T2);
    const RealVector scaled = levels1 / T1 - levels2 / T2;
    return BoundsResult::make(p1.values().dot(scaled), p2.values().dot(scaled),
                              log_partition_function(levels2, T2) - log_partition_function(levels1, T1));
}

} // namespace thermobound::fc
