#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "thermobound/bounds.hpp"
#include "thermobound/spectral.hpp"

namespace thermobound::oscillator {

/// Time-dependent frequency omega(t) of H(t) = (p^2 + omega^2(t) q^2) / 2.
class FrequencyProfile {
  public:
    enum class Kind { constant, sqrt_linear, paul_trap, tabulated };

    /// omega(t) = omega0.
    static FrequencyProfile constant(double omega0);
    /// omega(t) = omega0 sqrt(offset + eta t). offset = 1 is the textbook
    /// form; offset = 0, eta = 1 gives omega(t) = omega0 sqrt(t).
    static FrequencyProfile sqrt_linear(double omega0, double eta, double offset = 1.0);
    /// omega(t) = omega0 sqrt(1 + eta cos(Omega t)), |eta| < 1.
    static FrequencyProfile paul_trap(double omega0, double eta, double big_omega);
    /// Monotone cubic interpolation of omega^2 through (t_i, omega_i^2).
    static FrequencyProfile tabulated(std::vector<double> times, std::vector<double> omegas);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double omega(double t) const;
    [[nodiscard]] double omega_squared(double t) const;

    /// Throws DomainError if omega^2 is negative anywhere on [0, t_max], or
    /// vanishes anywhere after t = 0 (checked on a fine grid).
    void validate_window(double t_max) const;

    [[nodiscard]] double omega0() const { return omega0_; }
    [[nodiscard]] double eta() const { return eta_; }
    [[nodiscard]] double big_omega() const { return big_omega_; }
    [[nodiscard]] double offset() const { return offset_; }

  private:
    struct Table;
    FrequencyProfile() = default;

    Kind kind_ = Kind::constant;
    double omega0_ = 1.0;
    double eta_ = 0.0;
    double big_omega_ = 0.0;
    double offset_ = 1.0;
    std::shared_ptr<const Table> table_;
};

/// Complex solution of eps'' + omega^2(t) eps = 0 with eps(0) = 1, eps'(0) = i.
class ClassicalSolution {
  public:
    struct Point {
        Complex eps;
        Complex deps;
    };

    [[nodiscard]] const std::vector<double> &grid() const { return grid_; }
    [[nodiscard]] const std::vector<Complex> &eps() const { return eps_; }
    [[nodiscard]] const std::vector<Complex> &deps() const { return deps_; }
    [[nodiscard]] const FrequencyProfile &profile() const { return profile_; }
    [[nodiscard]] double t_max() const { return grid_.back(); }
    [[nodiscard]] double tolerance() const { return tol_; }

    /// (eps(t), eps'(t)) anywhere in [0, t_max].
    [[nodiscard]] Point at(double t) const;
    /// eps'(t) conj(eps(t)) - eps(t) conj(eps'(t)); 2i for an exact solution.
    [[nodiscard]] Complex wronskian(double t) const;
    /// Largest |W - 2i| over the accepted steps.
    [[nodiscard]] double max_wronskian_drift() const;

  private:
    friend ClassicalSolution solve_classical(const FrequencyProfile &, double, double);
    ClassicalSolution(FrequencyProfile profile, double tol) : profile_(std::move(profile)), tol_(tol) {}

    FrequencyProfile profile_;
    double tol_;
    std::vector<double> grid_;
    std::vector<Complex> eps_;
    std::vector<Complex> deps_;
};

inline constexpr double default_tolerance = 1e-12;
inline constexpr double wronskian_budget = 1e-8;

/// Adaptive Runge-Kutta-Fehlberg 7(8) integration on [0, t_max].
ClassicalSolution solve_classical(const FrequencyProfile &profile, double t_max, double tol = default_tolerance);

/// H(t') = alpha K_-(t) + conj(alpha) K_+(t) + gamma K_0(t).
struct SU11Coefficients {
    Complex alpha;
    double gamma = 0.0;
};

SU11Coefficients su11_coefficients(const ClassicalSolution &sol, double t, double t_prime);

/// Disentangling coefficients of e^{-H(t')/T} = e^{A+ K+} e^{ln(A0) K0} e^{A- K-}.
struct DisentanglingCoefficients {
    double A0 = 0.0;
    Complex Aplus;
    Complex Aminus;
};

DisentanglingCoefficients disentangling_coefficients(const ClassicalSolution &sol, double t, double t_prime, double T);

/// 1 - 2 sqrt(A0) + A0 - |A+|^2, the common denominator of the resummed series.
double disentangling_denominator(const DisentanglingCoefficients &c);

/// A0^{1/4} / sqrt(1 - 2 sqrt(A0) + A0 - |A+|^2). Throws NumericalError if the radicand is <= 0.
double partition_function_disentangled(const DisentanglingCoefficients &c);

struct KOperatorMeans {
    double k0 = 0.0;
    Complex kplus;
    Complex kminus;
};

KOperatorMeans k_operator_means(const DisentanglingCoefficients &c);

/// 1 / (2 sinh(omega / 2T)).
double partition_function_closed(double omega, double T);

/// Partition function of H(t') through the disentangling coefficients at (t, t'),
/// falling back to the closed form (with a logged warning) when the
/// denominator drops below 1e-12.
double partition_function_via_disentangling(const ClassicalSolution &sol, double t, double t_prime, double T);

/// Tr(e^{-H(t')/T} H(t)) / Z from the K-operator means: the means are taken
/// in the t' state using A(t', t, T) and recombined with the coefficients
/// that decompose H(t) itself, alpha(t, t) and gamma(t, t). Falls back to the
/// direct closed form when the denominator degenerates.
double cross_mean_via_disentangling(const ClassicalSolution &sol, double t, double t_prime, double T);

/// Tr(e^{-H(t')/T} H(t)) / Z = (omega^2(t) + omega^2(t')) / (4 omega(t')) coth(omega(t') / 2T).
double cross_mean_physical(const FrequencyProfile &profile, double t, double t_prime, double T);
double cross_mean_physical(double omega_t, double omega_t_prime, double T);

/// Thermal entropy of an oscillator of frequency omega.
double entropy_oscillator(double omega, double T);

/// Mean occupation 1 / (e^{omega/T} - 1).
double mean_occupation(double omega, double T);

/// Bounds on S(T2, t') - S(T1, t) for H(t) = (p^2 + omega^2(t) q^2)/2.
BoundsResult delta_s_bounds_physical(const FrequencyProfile &profile, double t, double t_prime, double T1, double T2);

/// f(t, t') = |eps(t)|^2 |eps'(t')|^2 + |eps'(t)|^2 |eps(t')|^2 - 2 Re(eps(t) eps'*(t)) Re(eps(t') eps'*(t')).
double f_factor(const ClassicalSolution &sol, double t, double t_prime);

/// Cross mean for the invariant-built Hamiltonian omega(t)(A^dagger(t) A(t) + 1/2):
/// (omega(t)/4) coth(omega(t') / 2T) f(t, t').
double cross_mean_invariant(const ClassicalSolution &sol, double t, double t_prime, double T);

BoundsResult delta_s_bounds_invariant(const ClassicalSolution &sol, double t, double t_prime, double T1, double T2);

/// Partition function and cross mean from N x N truncated matrices in the
/// Fock basis of a unit-frequency oscillator.
struct FockOracleResult {
    double Z = 0.0;
    double cross_mean = 0.0;
    double tail_weight = 0.0;
};

inline constexpr int fock_min_dimension = 50;
inline constexpr double fock_tail_limit = 1e-8;

FockOracleResult fock_truncated_oracle(double omega_t, double omega_t_prime, double T, int N);
/// One diagonalization of H(t') shared by several omega(t).
std::vector<FockOracleResult> fock_truncated_oracle(std::span<const double> omegas_t, double omega_t_prime, double T, int N);
FockOracleResult fock_truncated_oracle(const FrequencyProfile &profile, double t, double t_prime, double T, int N);

} // namespace thermobound::oscillator
