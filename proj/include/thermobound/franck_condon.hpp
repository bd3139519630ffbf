#pragma once

#include <optional>
#include <utility>

#include "thermobound/bounds.hpp"
#include "thermobound/spectral.hpp"

namespace thermobound::fc {

inline constexpr Eigen::Index max_levels = 4096;

/// Energy levels with an optional eigenbasis (columns), used to generate overlaps.
struct SpectralSystem {
    RealVector levels;
    std::optional<ComplexMatrix> basis;

    explicit SpectralSystem(RealVector level_values, std::optional<ComplexMatrix> eigenbasis = std::nullopt);
    static SpectralSystem from_operator(const HermitianOperator &h);

    [[nodiscard]] Eigen::Index size() const { return levels.size(); }
    /// sum_j levels_j |basis_j><basis_j|; requires a basis.
    [[nodiscard]] HermitianOperator to_operator() const;
};

class ProbabilityVector {
  public:
    explicit ProbabilityVector(RealVector p);
    [[nodiscard]] const RealVector &values() const { return p_; }
    [[nodiscard]] Eigen::Index size() const { return p_.size(); }
    double operator[](Eigen::Index i) const { return p_[i]; }

  private:
    RealVector p_;
};

/// k[j][l] = |<e1_j|e2_l>|^2.
///
/// Overlaps generated from two complete orthonormal bases are doubly
/// stochastic (`complete`). Overlaps supplied as data only need unit row
/// sums; they run in truncated-overlap mode and the bounds they produce are
/// flagged as not guaranteed.
class OverlapMatrix {
  public:
    static OverlapMatrix from_bases(const ComplexMatrix &basis1, const ComplexMatrix &basis2);
    static OverlapMatrix from_data(RealMatrix k);
    static OverlapMatrix identity(Eigen::Index n);

    [[nodiscard]] const RealMatrix &values() const { return k_; }
    [[nodiscard]] bool complete() const { return complete_; }
    [[nodiscard]] Eigen::Index rows() const { return k_.rows(); }
    [[nodiscard]] Eigen::Index cols() const { return k_.cols(); }

  private:
    OverlapMatrix(RealMatrix k, bool complete) : k_(std::move(k)), complete_(complete) {}
    RealMatrix k_;
    bool complete_;
};

/// Boltzmann populations of the levels, computed with the lowest level shifted to zero.
ProbabilityVector boltzmann_probs(const SpectralSystem &sys, double T);

OverlapMatrix overlap_matrix(const SpectralSystem &sys1, const SpectralSystem &sys2);

/// (Tr(rho1 H2), Tr(rho2 H1)) = (sum_jl p1_j e2_l k_jl, sum_jl p2_l e1_j k_jl).
std::pair<double, double> cross_means_fc(const ProbabilityVector &p1, const ProbabilityVector &p2, const RealVector &levels1,
                                         const RealVector &levels2, const OverlapMatrix &k);

BoundsResult delta_s_bounds_fc(const SpectralSystem &sys1, const SpectralSystem &sys2, double T1, double T2,
                               const OverlapMatrix &k);

/// Bounds on F1/T1 - F2/T2.
BoundsResult helmholtz_bounds_fc(const SpectralSystem &sys1, const SpectralSystem &sys2, double T1, double T2,
                                 const OverlapMatrix &k);

/// Shared-eigenbasis case k = identity, level j of system 1 paired with level j of system 2.
BoundsResult delta_s_bounds_same_basis(const RealVector &levels1, const RealVector &levels2, double T1, double T2);
BoundsResult helmholtz_bounds_same_basis(const RealVector &levels1, const RealVector &levels2, double T1, double T2);

/// ln sum_j e^{-levels_j / T}.
double log_partition_function(const RealVector &levels, double T);

} // namespace thermobound::fc
