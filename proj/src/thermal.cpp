#include "thermobound/thermal.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "thermobound/error.hpp"

namespace thermobound {

namespace {

constexpr double tiny_probability = 1e-300;

void require_same_dim(Eigen::Index a, Eigen::Index b, const char *context) {
    if(a != b) throw DimensionError(fmt::format("{}: operators act on spaces of dimension {} and {}", context, a, b));
}

// Both states plus the cross means Tr(rho1 H2) and Tr(rho2 H1).
struct CanonicalPair {
    ThermalState first;
    ThermalState second;
    double mean_2_in_1 = 0.0;
    double mean_1_in_2 = 0.0;
};

CanonicalPair make_pair(const ThermalSpec &s1, const ThermalSpec &s2, const char *context) {
    require_same_dim(s1.H.dim(), s2.H.dim(), context);
    CanonicalPair p{gibbs_state(s1), gibbs_state(s2)};
    p.mean_2_in_1 = mean_value(p.first.rho, s2.H);
    p.mean_1_in_2 = mean_value(p.second.rho, s1.H);
    return p;
}

double magnitude_scale(std::initializer_list<double> values) {
    double m = 1.0;
    for(double v : values) m = std::max(m, std::abs(v));
    return m;
}

ThermalState state_from_spectrum(const SpectralDecomposition &sd, double T) {
    const double beta = 1.0 / T;
    const BoltzmannWeight weight = boltzmann_weight(sd, beta);

    ThermalState st;
    st.T = T;
    st.log_Z = weight.log_trace;
    st.Z = std::exp(st.log_Z);
    st.F = -T * st.log_Z;
    st.basis = sd.eigenvectors;
    st.log_probabilities = (-beta * sd.eigenvalues.array() - st.log_Z).matrix();
    st.probabilities = st.log_probabilities.array().exp().matrix();
    st.rho = weight.matrix / weight.trace;
    st.rho = 0.5 * (st.rho + st.rho.adjoint());
    st.S = shannon_entropy(st.probabilities);
    return st;
}

} // namespace

void require_temperature(double T, const char *context) {
    if(!std::isfinite(T) || T < min_temperature)
        throw DomainError(fmt::format("{}: temperature must be finite and >= {:g}, got {}", context, min_temperature, T));
}

ThermalSpec::ThermalSpec(HermitianOperator h, double temperature) : H(std::move(h)), T(temperature) {
    require_temperature(T, "ThermalSpec");
}

GrandThermalSpec::GrandThermalSpec(HermitianOperator h, HermitianOperator n, double temperature, double chemical_potential)
    : H(std::move(h)), N(std::move(n)), T(temperature), mu(chemical_potential) {
    require_same_dim(H.dim(), N.dim(), "GrandThermalSpec");
    require_temperature(T, "GrandThermalSpec");
    if(!std::isfinite(mu)) throw DomainError("GrandThermalSpec: chemical potential must be finite");
}

HermitianOperator GrandThermalSpec::exponent_operator() const { return mu * N - H; }

double shannon_entropy(const RealVector &probabilities) {
    double s = 0.0;
    for(double p : probabilities)
        if(p >= tiny_probability) s -= p * std::log(p);
    return s;
}

double von_neumann_entropy(const ComplexMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
    if(solver.info() != Eigen::Success) throw NumericalError("von_neumann_entropy: eigensolver failed");
    return shannon_entropy(solver.eigenvalues());
}

ThermalState gibbs_state(const ThermalSpec &spec) {
    const SpectralDecomposition sd = eigendecompose(spec.H);
    ThermalState st = state_from_spectrum(sd, spec.T);
    st.E = mean_value(st.rho, spec.H);

    const double identity_gap = std::abs(st.S - (st.E / st.T + st.log_Z));
    if(identity_gap > 1e-9 * magnitude_scale({st.E / st.T, st.log_Z}))
        throw NumericalError(fmt::format("gibbs_state: S = E/T + ln Z violated by {:.3e}", identity_gap));
    return st;
}

double relative_entropy(const ThermalState &rho, const ThermalState &sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "relative_entropy");
    // Tr(rho ln sigma) = sum_ij p_i |<u_i|v_j>|^2 ln q_j
    const RealMatrix overlap = (rho.basis.adjoint() * sigma.basis).cwiseAbs2();
    double cross = 0.0;
    double self = 0.0;
    for(Eigen::Index i = 0; i < rho.dim(); ++i) {
        const double p = rho.probabilities[i];
        if(p < tiny_probability) continue;
        self += p * rho.log_probabilities[i];
        cross += p * overlap.row(i).dot(sigma.log_probabilities);
    }
    return self - cross;
}

EntropyDifference delta_s_exact(const ThermalSpec &s1, const ThermalSpec &s2) {
    const ThermalState a = gibbs_state(s1);
    const ThermalState b = gibbs_state(s2);
    return {b.S - a.S, b.E / b.T - a.E / a.T + (b.log_Z - a.log_Z)};
}

BoundsResult delta_s_bounds_difference_form(const ThermalSpec &s1, const ThermalSpec &s2) {
    require_same_dim(s1.H.dim(), s2.H.dim(), "delta_s_bounds");
    const ThermalState a = gibbs_state(s1);
    const ThermalState b = gibbs_state(s2);
    const HermitianOperator delta_h = s2.H - s1.H;
    const double delta_e = b.E - a.E;
    return BoundsResult::make((delta_e - mean_value(a.rho, delta_h)) / s2.T, (delta_e - mean_value(b.rho, delta_h)) / s1.T,
                              b.S - a.S);
}

BoundsResult delta_s_bounds(const ThermalSpec &s1, const ThermalSpec &s2) {
    const CanonicalPair p = make_pair(s1, s2, "delta_s_bounds");
    BoundsResult r = BoundsResult::make((p.second.E - p.mean_2_in_1) / s2.T, (p.mean_1_in_2 - p.first.E) / s1.T,
                                        p.second.S - p.first.S);

    const BoundsResult alt = delta_s_bounds_difference_form(s1, s2);
    const double scale = magnitude_scale({p.first.E, p.second.E, p.mean_1_in_2, p.mean_2_in_1}) / std::min(s1.T, s2.T);
    const double disagreement = std::max(std::abs(alt.lower - r.lower), std::abs(alt.upper - r.upper));
    if(disagreement > 1e-10 * scale)
        throw NumericalError(fmt::format("delta_s_bounds: direct and Delta-H forms disagree by {:.3e}", disagreement));
    return r;
}

BoundsResult log_z_ratio_bounds(const ThermalSpec &s1, const ThermalSpec &s2) {
    const CanonicalPair p = make_pair(s1, s2, "log_z_ratio_bounds");
    const double lower = p.first.E / s1.T - p.mean_2_in_1 / s2.T;
    const double upper = p.mean_1_in_2 / s1.T - p.second.E / s2.T;
    return BoundsResult::make(lower, upper, p.second.log_Z - p.first.log_Z);
}

BoundsResult helmholtz_bounds(const ThermalSpec &s1, const ThermalSpec &s2) {
    const CanonicalPair p = make_pair(s1, s2, "helmholtz_bounds");
    const double lower = p.first.E / s1.T - p.mean_2_in_1 / s2.T;
    const double upper = p.mean_1_in_2 / s1.T - p.second.E / s2.T;
    return BoundsResult::make(lower, upper, p.first.F / s1.T - p.second.F / s2.T);
}

BoundsResult kinetic_potential_bounds(const HermitianOperator &K1, const HermitianOperator &V1,
                                      const HermitianOperator &K2, const HermitianOperator &V2, double T1, double T2) {
    require_same_dim(K1.dim(), V1.dim(), "kinetic_potential_bounds");
    require_same_dim(K1.dim(), K2.dim(), "kinetic_potential_bounds");
    require_same_dim(K1.dim(), V2.dim(), "kinetic_potential_bounds");
    const ThermalState a = gibbs_state(ThermalSpec(K1 + V1, T1));
    const ThermalState b = gibbs_state(ThermalSpec(K2 + V2, T2));

    // <O_j>_k = Tr(rho_k O_j)
    const double k2_2 = mean_value(b.rho, K2), v2_2 = mean_value(b.rho, V2);
    const double k2_1 = mean_value(a.rho, K2), v2_1 = mean_value(a.rho, V2);
    const double k1_2 = mean_value(b.rho, K1), v1_2 = mean_value(b.rho, V1);
    const double k1_1 = mean_value(a.rho, K1), v1_1 = mean_value(a.rho, V1);
    return BoundsResult::make((k2_2 + v2_2 - k2_1 - v2_1) / T2, (k1_2 + v1_2 - k1_1 - v1_1) / T1, b.S - a.S);
}

ThermalState grand_gibbs_state(const GrandThermalSpec &spec) {
    // e^{beta (mu N - H)} is the Boltzmann weight of H - mu N.
    const SpectralDecomposition sd = eigendecompose(spec.H - spec.mu * spec.N);
    ThermalState st = state_from_spectrum(sd, spec.T);
    st.E = mean_value(st.rho, spec.H);

    const double exponent_mean = mean_value(st.rho, spec.exponent_operator());
    const double identity_gap = std::abs(st.S - (st.log_Z - exponent_mean / spec.T));
    if(identity_gap > 1e-9 * magnitude_scale({exponent_mean / spec.T, st.log_Z}))
        throw NumericalError(fmt::format("grand_gibbs_state: S = ln Z - Tr(rho(mu N - H))/T violated by {:.3e}", identity_gap));
    return st;
}

double gibbs_potential(const ThermalState &state) { return state.E + state.T * (state.log_Z - state.S); }

double grand_entropy_gap(const ComplexMatrix &rho, const GrandThermalSpec &spec) {
    require_same_dim(rho.rows(), spec.H.dim(), "grand_entropy_gap");
    if(rho.rows() != rho.cols()) throw DimensionError("grand_entropy_gap: density matrix must be square");
    const ThermalState sigma = grand_gibbs_state(spec);
    const double rhs = sigma.log_Z - mean_value(rho, spec.exponent_operator()) / spec.T;
    return rhs - von_neumann_entropy(rho);
}

namespace {

struct GrandPair {
    ThermalState first;
    ThermalState second;
};

GrandPair make_grand_pair(const GrandThermalSpec &g1, const GrandThermalSpec &g2, const char *context) {
    require_same_dim(g1.H.dim(), g2.H.dim(), context);
    return {grand_gibbs_state(g1), grand_gibbs_state(g2)};
}

} // namespace

GrandBoundsResult grand_delta_s_bounds(const GrandThermalSpec &g1, const GrandThermalSpec &g2) {
    const GrandPair p = make_grand_pair(g1, g2, "grand_delta_s_bounds");
    const double G1 = gibbs_potential(p.first);
    const double G2 = gibbs_potential(p.second);
    const double x2_in_1 = mean_value(p.first.rho, g2.exponent_operator());  // Tr(rho1 (mu2 N2 - H2))
    const double x1_in_2 = mean_value(p.second.rho, g1.exponent_operator()); // Tr(rho2 (mu1 N1 - H1))

    GrandBoundsResult out;
    out.bounds = BoundsResult::make((x2_in_1 - G2 + p.second.E) / g2.T, (G1 - p.first.E - x1_in_2) / g1.T,
                                    p.second.S - p.first.S);
    out.n2_in_rho1 = mean_value(p.first.rho, g2.N);
    out.n1_in_rho2 = mean_value(p.second.rho, g1.N);
    return out;
}

BoundsResult grand_log_z_ratio_bounds(const GrandThermalSpec &g1, const GrandThermalSpec &g2) {
    const GrandPair p = make_grand_pair(g1, g2, "grand_log_z_ratio_bounds");
    const double G1 = gibbs_potential(p.first);
    const double G2 = gibbs_potential(p.second);
    const double x2_in_1 = mean_value(p.first.rho, g2.exponent_operator());
    const double x1_in_2 = mean_value(p.second.rho, g1.exponent_operator());
    const double lower = (p.first.E - G1) / g1.T + x2_in_1 / g2.T;
    const double upper = (G2 - p.second.E) / g2.T - x1_in_2 / g1.T;
    return BoundsResult::make(lower, upper, p.second.log_Z - p.first.log_Z);
}

} // namespace thermobound
