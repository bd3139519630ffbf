#pragma once

#include <optional>

#include "thermobound/bounds.hpp"
#include "thermobound/spectral.hpp"

namespace thermobound {

/// Lowest accepted temperature; below this the exponent conditioning is unusable.
inline constexpr double min_temperature = 1e-6;

/// Throws DomainError unless T is finite and >= min_temperature.
void require_temperature(double T, const char *context);

/// Canonical pair (H, T).
struct ThermalSpec {
    HermitianOperator H;
    double T;

    ThermalSpec(HermitianOperator h, double temperature);
    [[nodiscard]] double beta() const { return 1.0 / T; }
};

/// Grand-canonical quadruple (H, N, T, mu). H and N need not commute.
struct GrandThermalSpec {
    HermitianOperator H;
    HermitianOperator N;
    double T;
    double mu;

    GrandThermalSpec(HermitianOperator h, HermitianOperator n, double temperature, double chemical_potential);
    [[nodiscard]] double beta() const { return 1.0 / T; }
    /// mu N - H, the operator in the exponent of the grand state.
    [[nodiscard]] HermitianOperator exponent_operator() const;
};

/// Equilibrium density matrix with its thermodynamic scalars.
///
/// `probabilities` and `log_probabilities` are the eigenvalues of rho in the
/// columns of `basis`; log_probabilities stays finite where probabilities
/// underflow, which keeps relative entropies well defined at low T.
struct ThermalState {
    ComplexMatrix rho;
    double Z = 0.0;
    double log_Z = 0.0;
    double E = 0.0;
    double S = 0.0;
    double F = 0.0;
    double T = 0.0;
    RealVector probabilities;
    RealVector log_probabilities;
    ComplexMatrix basis;

    [[nodiscard]] Eigen::Index dim() const { return rho.rows(); }
};

ThermalState gibbs_state(const ThermalSpec &spec);

/// -Tr(rho ln rho) from the spectrum of rho; p ln p := 0 for p < 1e-300.
double von_neumann_entropy(const ComplexMatrix &rho);
double shannon_entropy(const RealVector &probabilities);

/// Tr(rho (ln rho - ln sigma)).
double relative_entropy(const ThermalState &rho, const ThermalState &sigma);

/// S2 - S1 evaluated two ways: directly from the entropies and through
/// E2/T2 - E1/T1 + ln(Z2/Z1).
struct EntropyDifference {
    double value = 0.0;
    double via_partition_functions = 0.0;
    [[nodiscard]] double discrepancy() const { return std::abs(value - via_partition_functions); }
};

EntropyDifference delta_s_exact(const ThermalSpec &s1, const ThermalSpec &s2);

/// (E2 - Tr(rho1 H2)) / T2 <= S2 - S1 <= (Tr(rho2 H1) - E1) / T1.
/// Throws NumericalError if the Delta E / Delta H rewriting of the same
/// bounds disagrees beyond 1e-10 (relative to the magnitudes involved).
BoundsResult delta_s_bounds(const ThermalSpec &s1, const ThermalSpec &s2);

/// The same bounds written as (Delta E - <Delta H>_k) / T_k.
BoundsResult delta_s_bounds_difference_form(const ThermalSpec &s1, const ThermalSpec &s2);

/// Tr(rho1 (H1/T1 - H2/T2)) <= ln(Z2/Z1) <= Tr(rho2 (H1/T1 - H2/T2)).
BoundsResult log_z_ratio_bounds(const ThermalSpec &s1, const ThermalSpec &s2);

/// Bounds on F1/T1 - F2/T2, which is ln(Z2/Z1) rearranged.
BoundsResult helmholtz_bounds(const ThermalSpec &s1, const ThermalSpec &s2);

/// Entropy bounds with H_j = K_j + V_j, written through the four split mean values.
BoundsResult kinetic_potential_bounds(const HermitianOperator &K1, const HermitianOperator &V1,
                                      const HermitianOperator &K2, const HermitianOperator &V2, double T1, double T2);

ThermalState grand_gibbs_state(const GrandThermalSpec &spec);

/// G = Tr(rho H) + T (ln Z - S) for the grand state of spec.
double gibbs_potential(const ThermalState &state);

/// ln Z - Tr(rho (mu N - H))/T - S(rho) >= 0, with equality only at the grand state.
double grand_entropy_gap(const ComplexMatrix &rho, const GrandThermalSpec &spec);

/// Grand-canonical bounds with the sudden-quench cross means exposed as diagnostics.
struct GrandBoundsResult {
    BoundsResult bounds;
    double n2_in_rho1 = 0.0; // Tr(rho1 N2)
    double n1_in_rho2 = 0.0; // Tr(rho2 N1)
};

GrandBoundsResult grand_delta_s_bounds(const GrandThermalSpec &g1, const GrandThermalSpec &g2);
BoundsResult grand_log_z_ratio_bounds(const GrandThermalSpec &g1, const GrandThermalSpec &g2);

} // namespace thermobound
