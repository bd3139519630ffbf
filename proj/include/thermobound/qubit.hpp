#pragma once

#include <vector>

#include <Eigen/Dense>

#include "thermobound/bounds.hpp"
#include "thermobound/spectral.hpp"

namespace thermobound::qubit {

/// H = (h0 I + h . sigma) / 2.
struct BlochHamiltonian {
    double h0 = 0.0;
    Eigen::Vector3d h = Eigen::Vector3d::Zero();

    [[nodiscard]] double norm() const { return h.norm(); }
};

HermitianOperator to_matrix(const BlochHamiltonian &b);

/// Angle between the two Bloch vectors; the cosine is clamped to [-1, 1].
/// Zero vectors give theta = pi/2 (the cos(theta) terms vanish for them anyway).
double bloch_angle(const BlochHamiltonian &b1, const BlochHamiltonian &b2);

double entropy_closed(double norm_h, double T);
double mean_energy_closed(const BlochHamiltonian &b, double T);
/// Tr(rho1 H2) with rho1 the thermal state of b1 at T1.
double cross_mean_closed(const BlochHamiltonian &b1, const BlochHamiltonian &b2, double T1);

BoundsResult delta_s_bounds_qubit(const BlochHamiltonian &b1, const BlochHamiltonian &b2, double T1, double T2);

/// Same bounds parameterized by the two norms and the angle directly.
BoundsResult delta_s_bounds_qubit(double norm_h1, double norm_h2, double theta, double T1, double T2);

struct SweepRow {
    double variable = 0.0;
    BoundsResult bounds;
};

/// theta on [0, pi] at `points` evenly spaced samples.
std::vector<SweepRow> sweep_theta(double norm_h1, double norm_h2, double T1, double T2, int points = 200);

/// T1 on [t_lo, t_hi] at `points` evenly spaced samples, fixed theta.
std::vector<SweepRow> sweep_temperature(double norm_h1, double norm_h2, double theta, double T2, double t_lo = 1.0,
                                        double t_hi = 30.0, int points = 200);

} // namespace thermobound::qubit
