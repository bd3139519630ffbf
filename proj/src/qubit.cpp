#include "thermobound/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "thermobound/error.hpp"
#include "thermobound/thermal.hpp"

namespace thermobound::qubit {

namespace {

void require_norm(double norm, const char *context) {
    if(!std::isfinite(norm) || norm < 0.0) throw DomainError(fmt::format("{}: Bloch norm must be finite and >= 0", context));
}

void require_bloch(const BlochHamiltonian &b, const char *context) {
    if(!std::isfinite(b.h0) || !b.h.allFinite()) throw DomainError(fmt::format("{}: Bloch parameters must be finite", context));
}

std::vector<double> linspace(double lo, double hi, int points) {
    if(points < 2) throw DomainError("sweep: need at least two points");
    std::vector<double> out(static_cast<std::size_t>(points));
    for(int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return out;
}

} // namespace

HermitianOperator to_matrix(const BlochHamiltonian &b) {
    require_bloch(b, "to_matrix");
    ComplexMatrix m(2, 2);
    m(0, 0) = 0.5 * (b.h0 + b.h[2]);
    m(1, 1) = 0.5 * (b.h0 - b.h[2]);
    m(0, 1) = 0.5 * Complex(b.h[0], -b.h[1]);
    m(1, 0) = 0.5 * Complex(b.h[0], b.h[1]);
    return HermitianOperator(m);
}

double bloch_angle(const BlochHamiltonian &b1, const BlochHamiltonian &b2) {
    const double n1 = b1.norm();
    const double n2 = b2.norm();
    if(n1 == 0.0 || n2 == 0.0) return 0.5 * std::numbers::pi;
    return std::acos(std::clamp(b1.h.dot(b2.h) / (n1 * n2), -1.0, 1.0));
}

double entropy_closed(double norm_h, double T) {
    require_norm(norm_h, "entropy_closed");
    require_temperature(T, "entropy_closed");
    // (ln 2 + ln(1 + cosh x) - x tanh(x/2)) / 2 with x = |h|/T, rewritten with
    // ln(1 + cosh x) = x - ln 2 + 2 ln(1 + e^{-x}) so large x cannot overflow.
    const double x = norm_h / T;
    return 0.5 * (x * (1.0 - std::tanh(0.5 * x)) + 2.0 * std::log1p(std::exp(-x)));
}

double mean_energy_closed(const BlochHamiltonian &b, double T) {
    require_bloch(b, "mean_energy_closed");
    require_temperature(T, "mean_energy_closed");
    const double n = b.norm();
    return 0.5 * (b.h0 - n * std::tanh(n / (2.0 * T)));
}

double cross_mean_closed(const BlochHamiltonian &b1, const BlochHamiltonian &b2, double T1) {
    require_bloch(b1, "cross_mean_closed");
    require_bloch(b2, "cross_mean_closed");
    require_temperature(T1, "cross_mean_closed");
    const double n1 = b1.norm();
    // rho1 = I/2 when |h| = 0, so only the trace part of H2 survives.
    if(n1 == 0.0) return 0.5 * b2.h0;
    return (n1 * b2.h0 - b1.h.dot(b2.h) * std::tanh(n1 / (2.0 * T1))) / (2.0 * n1);
}

BoundsResult delta_s_bounds_qubit(double norm_h1, double norm_h2, double theta, double T1, double T2) {
    require_norm(norm_h1, "delta_s_bounds_qubit");
    require_norm(norm_h2, "delta_s_bounds_qubit");
    require_temperature(T1, "delta_s_bounds_qubit");
    require_temperature(T2, "delta_s_bounds_qubit");
    if(!std::isfinite(theta)) throw DomainError("delta_s_bounds_qubit: theta must be finite");
    const double c = std::cos(theta);
    const double t1 = std::tanh(norm_h1 / (2.0 * T1));
    const double t2 = std::tanh(norm_h2 / (2.0 * T2));
    const double lower = norm_h2 / (2.0 * T2) * (c * t1 - t2);
    const double upper = norm_h1 / (2.0 * T1) * (t1 - c * t2);
    return BoundsResult::make(lower, upper, entropy_closed(norm_h2, T2) - entropy_closed(norm_h1, T1));
}

BoundsResult delta_s_bounds_qubit(const BlochHamiltonian &b1, const BlochHamiltonian &b2, double T1, double T2) {
    require_bloch(b1, "delta_s_bounds_qubit");
    require_bloch(b2, "delta_s_bounds_qubit");
    return delta_s_bounds_qubit(b1.norm(), b2.norm(), bloch_angle(b1, b2), T1, T2);
}

std::vector<SweepRow> sweep_theta(double norm_h1, double norm_h2, double T1, double T2, int points) {
    std::vector<SweepRow> rows;
    for(double theta : linspace(0.0, std::numbers::pi, points))
        rows.push_back({theta, delta_s_bounds_qubit(norm_h1, norm_h2, theta, T1, T2)});
    return rows;
}

std::vector<SweepRow> sweep_temperature(double norm_h1, double norm_h2, double theta, double T2, double t_lo, double t_hi,
                                        int points) {
    std::vector<SweepRow> rows;
    for(double T1 : linspace(t_lo, t_hi, points)) rows.push_back({T1, delta_s_bounds_qubit(norm_h1, norm_h2, theta, T1, T2)});
    return rows;
}

} // namespace thermobound::qubit
