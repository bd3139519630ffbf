#include "thermobound/oscillator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>
#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "thermobound/error.hpp"
#include "thermobound/logging.hpp"
#include "thermobound/thermal.hpp"

namespace thermobound::oscillator {

namespace odeint = boost::numeric::odeint;

namespace {

// (Re eps, Im eps, Re eps', Im eps')
using OdeState = std::array<double, 4>;
using Stepper = odeint::runge_kutta_fehlberg78<OdeState>;

constexpr double degenerate_denominator = 1e-12;
constexpr int window_samples = 8192;

void require_positive(double value, const char *what, const char *context) {
    if(!std::isfinite(value) || value <= 0.0) throw DomainError(fmt::format("{}: {} must be positive and finite, got {}", context, what, value));
}

double coth(double x) { return 1.0 / std::tanh(x); }

// omega at an evaluation time; bounds need omega > 0 there.
double positive_omega(const FrequencyProfile &profile, double t, const char *context) {
    const double w = profile.omega(t);
    if(!(w > 0.0)) throw DomainError(fmt::format("{}: omega({}) = {} is not positive", context, t, w));
    return w;
}

} // namespace

struct FrequencyProfile::Table {
    boost::math::interpolators::pchip<std::vector<double>> omega_squared;
    double t_lo;
    double t_hi;
};

FrequencyProfile FrequencyProfile::constant(double omega0) {
    require_positive(omega0, "omega0", "FrequencyProfile::constant");
    FrequencyProfile p;
    p.kind_ = Kind::constant;
    p.omega0_ = omega0;
    return p;
}

FrequencyProfile FrequencyProfile::sqrt_linear(double omega0, double eta, double offset) {
    require_positive(omega0, "omega0", "FrequencyProfile::sqrt_linear");
    if(!std::isfinite(eta) || !std::isfinite(offset) || offset < 0.0)
        throw DomainError("FrequencyProfile::sqrt_linear: eta must be finite and offset finite and >= 0");
    FrequencyProfile p;
    p.kind_ = Kind::sqrt_linear;
    p.omega0_ = omega0;
    p.eta_ = eta;
    p.offset_ = offset;
    return p;
}

FrequencyProfile FrequencyProfile::paul_trap(double omega0, double eta, double big_omega) {
    require_positive(omega0, "omega0", "FrequencyProfile::paul_trap");
    if(!std::isfinite(eta) || std::abs(eta) >= 1.0) throw DomainError(fmt::format("FrequencyProfile::paul_trap: |eta| must be < 1, got {}", eta));
    if(!std::isfinite(big_omega)) throw DomainError("FrequencyProfile::paul_trap: Omega must be finite");
    FrequencyProfile p;
    p.kind_ = Kind::paul_trap;
    p.omega0_ = omega0;
    p.eta_ = eta;
    p.big_omega_ = big_omega;
    return p;
}

FrequencyProfile FrequencyProfile::tabulated(std::vector<double> times, std::vector<double> omegas) {
    if(times.size() != omegas.size()) throw DimensionError("FrequencyProfile::tabulated: times and omegas differ in length");
    if(times.size() < 4) throw DomainError("FrequencyProfile::tabulated: need at least four samples");
    for(std::size_t i = 0; i < times.size(); ++i) {
        if(!std::isfinite(times[i]) || !std::isfinite(omegas[i])) throw DomainError("FrequencyProfile::tabulated: non-finite sample");
        if(omegas[i] < 0.0) throw DomainError("FrequencyProfile::tabulated: omega samples must be >= 0");
        if(i > 0 && !(times[i] > times[i - 1])) throw DomainError("FrequencyProfile::tabulated: times must be strictly increasing");
    }
    std::vector<double> squares(omegas.size());
    std::transform(omegas.begin(), omegas.end(), squares.begin(), [](double w) { return w * w; });
    const double lo = times.front();
    const double hi = times.back();
    FrequencyProfile p;
    p.kind_ = Kind::tabulated;
    p.table_ = std::make_shared<const Table>(Table{{std::move(times), std::move(squares)}, lo, hi});
    return p;
}

double FrequencyProfile::omega_squared(double t) const {
    if(!std::isfinite(t)) throw DomainError("FrequencyProfile: time must be finite");
    switch(kind_) {
    case Kind::constant: return omega0_ * omega0_;
    case Kind::sqrt_linear: return omega0_ * omega0_ * (offset_ + eta_ * t);
    case Kind::paul_trap: return omega0_ * omega0_ * (1.0 + eta_ * std::cos(big_omega_ * t));
    case Kind::tabulated:
        if(t < table_->t_lo || t > table_->t_hi)
            throw DomainError(fmt::format("FrequencyProfile: t = {} outside table range [{}, {}]", t, table_->t_lo, table_->t_hi));
        return table_->omega_squared(t);
    }
    return 0.0;
}

double FrequencyProfile::omega(double t) const {
    const double w2 = omega_squared(t);
    if(w2 < 0.0) throw DomainError(fmt::format("FrequencyProfile: omega^2({}) = {} is negative", t, w2));
    return std::sqrt(w2);
}

void FrequencyProfile::validate_window(double t_max) const {
    require_positive(t_max, "t_max", "validate_window");
    for(int i = 0; i <= window_samples; ++i) {
        const double t = t_max * i / window_samples;
        const double w2 = omega_squared(t);
        if(w2 < 0.0 || (w2 == 0.0 && i > 0))
            throw DomainError(fmt::format("frequency profile: omega^2({}) = {} is not positive in [0, {}]", t, w2, t_max));
    }
}

ClassicalSolution solve_classical(const FrequencyProfile &profile, double t_max, double tol) {
    require_positive(t_max, "t_max", "solve_classical");
    require_positive(tol, "tol", "solve_classical");
    profile.validate_window(t_max);

    ClassicalSolution sol(profile, tol);
    const auto rhs = [&profile](const OdeState &y, OdeState &dy, double t) {
        const double w2 = profile.omega_squared(t);
        dy = {y[2], y[3], -w2 * y[0], -w2 * y[1]};
    };
    const auto record = [&sol](const OdeState &y, double t) {
        if(!sol.grid_.empty() && t <= sol.grid_.back()) return;
        sol.grid_.push_back(t);
        sol.eps_.emplace_back(y[0], y[1]);
        sol.deps_.emplace_back(y[2], y[3]);
    };

    OdeState y{1.0, 0.0, 0.0, 1.0};
    const double first_step = std::min(1e-3, t_max);
    try {
        using Checker = odeint::default_error_checker<double, odeint::array_algebra, odeint::default_operations>;
        odeint::controlled_runge_kutta<Stepper, Checker> stepper(Checker(tol, tol, 1.0, 0.0));
        odeint::integrate_adaptive(stepper, rhs, y, 0.0, t_max, first_step, record);
    } catch(const odeint::step_adjustment_error &e) {
        throw NumericalError(fmt::format("solve_classical: step size underflow ({})", e.what()));
    } catch(const odeint::no_progress_error &e) {
        throw NumericalError(fmt::format("solve_classical: integration stalled ({})", e.what()));
    }
    if(sol.grid_.size() < 2 || std::abs(sol.grid_.back() - t_max) > 1e-12 * (1.0 + t_max))
        throw NumericalError("solve_classical: integration did not reach t_max");
    sol.grid_.back() = t_max;

    const double drift = sol.max_wronskian_drift();
    if(drift > wronskian_budget)
        throw NumericalError(fmt::format("solve_classical: Wronskian drift {:.3e} exceeds {:.0e}", drift, wronskian_budget));
    logger()->debug("solve_classical: {} steps to t = {}, Wronskian drift {:.3e}", sol.grid_.size() - 1, t_max, drift);
    return sol;
}

ClassicalSolution::Point ClassicalSolution::at(double t) const {
    if(!std::isfinite(t) || t < 0.0 || t > t_max())
        throw DomainError(fmt::format("ClassicalSolution: t = {} outside solved range [0, {}]", t, t_max()));
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    const auto i = static_cast<std::size_t>(std::distance(grid_.begin(), it)) - 1;
    if(t == grid_[i]) return {eps_[i], deps_[i]};

    // One step from the nearest accepted point; it is shorter than the accepted
    // step there, so its local error stays within the integration tolerance.
    OdeState y{eps_[i].real(), eps_[i].imag(), deps_[i].real(), deps_[i].imag()};
    const FrequencyProfile &profile = profile_;
    const auto rhs = [&profile](const OdeState &s, OdeState &ds, double tt) {
        const double w2 = profile.omega_squared(tt);
        ds = {s[2], s[3], -w2 * s[0], -w2 * s[1]};
    };
    Stepper().do_step(rhs, y, grid_[i], t - grid_[i]);
    return {Complex(y[0], y[1]), Complex(y[2], y[3])};
}

Complex ClassicalSolution::wronskian(double t) const {
    const Point p = at(t);
    return p.deps * std::conj(p.eps) - p.eps * std::conj(p.deps);
}

double ClassicalSolution::max_wronskian_drift() const {
    double worst = 0.0;
    for(std::size_t i = 0; i < grid_.size(); ++i) {
        const Complex w = deps_[i] * std::conj(eps_[i]) - eps_[i] * std::conj(deps_[i]);
        worst = std::max(worst, std::abs(w - Complex(0.0, 2.0)));
    }
    return worst;
}

SU11Coefficients su11_coefficients(const ClassicalSolution &sol, double t, double t_prime) {
    const auto [eps, deps] = sol.at(t);
    if(t_prime < 0.0 || t_prime > sol.t_max())
        throw DomainError(fmt::format("su11_coefficients: t' = {} outside solved range [0, {}]", t_prime, sol.t_max()));
    const double w2 = sol.profile().omega_squared(t_prime);

    SU11Coefficients c;
    c.alpha = 0.5 * (std::conj(deps) * std::conj(deps) + w2 * std::conj(eps) * std::conj(eps));
    c.gamma = std::norm(deps) + w2 * std::norm(eps);

    const double residual = std::abs(4.0 * w2 - (c.gamma * c.gamma - 4.0 * std::norm(c.alpha)));
    if(residual > 1e-8 * std::max(1.0, c.gamma * c.gamma))
        throw NumericalError(fmt::format("su11_coefficients: 4 omega^2 = gamma^2 - 4|alpha|^2 violated by {:.3e}", residual));
    return c;
}

DisentanglingCoefficients disentangling_coefficients(const ClassicalSolution &sol, double t, double t_prime, double T) {
    require_temperature(T, "disentangling_coefficients");
    const SU11Coefficients su = su11_coefficients(sol, t, t_prime);
    const double w = positive_omega(sol.profile(), t_prime, "disentangling_coefficients");

    // Numerator and denominator divided by cosh(w/T) so low T cannot overflow.
    const double x = w / T;
    const double th = std::tanh(x);
    const double sech = 1.0 / std::cosh(x);
    const double q = 2.0 * w + su.gamma * th;

    DisentanglingCoefficients c;
    c.A0 = std::pow(2.0 * w * sech / q, 2);
    c.Aplus = -2.0 * std::conj(su.alpha) * th / q;
    c.Aminus = std::conj(c.Aplus);
    return c;
}

double disentangling_denominator(const DisentanglingCoefficients &c) { return 1.0 - 2.0 * std::sqrt(c.A0) + c.A0 - std::norm(c.Aplus); }

double partition_function_disentangled(const DisentanglingCoefficients &c) {
    if(!(c.A0 > 0.0)) throw NumericalError("partition_function_disentangled: A0 must be positive");
    const double den = disentangling_denominator(c);
    if(!(den > 0.0)) throw NumericalError(fmt::format("partition_function_disentangled: non-positive denominator {:.3e}", den));
    return std::pow(c.A0, 0.25) / std::sqrt(den);
}

KOperatorMeans k_operator_means(const DisentanglingCoefficients &c) {
    const double den = disentangling_denominator(c);
    if(!(den > 0.0)) throw NumericalError(fmt::format("k_operator_means: non-positive denominator {:.3e}", den));
    KOperatorMeans m;
    m.k0 = (1.0 - c.A0 + std::norm(c.Aplus)) / (4.0 * den);
    m.kplus = std::conj(c.Aplus) / (2.0 * den);
    m.kminus = c.Aplus / (2.0 * den);
    return m;
}

double partition_function_closed(double omega, double T) {
    require_positive(omega, "omega", "partition_function_closed");
    require_temperature(T, "partition_function_closed");
    return 1.0 / (2.0 * std::sinh(omega / (2.0 * T)));
}

double partition_function_via_disentangling(const ClassicalSolution &sol, double t, double t_prime, double T) {
    const DisentanglingCoefficients c = disentangling_coefficients(sol, t, t_prime, T);
    const double den = disentangling_denominator(c);
    if(den < degenerate_denominator) {
        logger()->warn("partition function at (t={}, t'={}, T={}): denominator {:.3e} is degenerate, using the closed form", t,
                       t_prime, T, den);
        return partition_function_closed(sol.profile().omega(t_prime), T);
    }
    return partition_function_disentangled(c);
}

double cross_mean_via_disentangling(const ClassicalSolution &sol, double t, double t_prime, double T) {
    const DisentanglingCoefficients c = disentangling_coefficients(sol, t, t_prime, T);
    const double den = disentangling_denominator(c);
    if(den < degenerate_denominator) {
        logger()->warn("cross mean at (t={}, t'={}, T={}): denominator {:.3e} is degenerate, using the closed form", t, t_prime,
                       T, den);
        return cross_mean_physical(sol.profile(), t, t_prime, T);
    }
    const KOperatorMeans m = k_operator_means(c);
    const SU11Coefficients own = su11_coefficients(sol, t, t);
    return (own.alpha * m.kminus + std::conj(own.alpha) * m.kplus).real() + own.gamma * m.k0;
}

double cross_mean_physical(double omega_t, double omega_t_prime, double T) {
    require_positive(omega_t, "omega(t)", "cross_mean_physical");
    require_positive(omega_t_prime, "omega(t')", "cross_mean_physical");
    require_temperature(T, "cross_mean_physical");
    return (omega_t * omega_t + omega_t_prime * omega_t_prime) / (4.0 * omega_t_prime) * coth(omega_t_prime / (2.0 * T));
}

double cross_mean_physical(const FrequencyProfile &profile, double t, double t_prime, double T) {
    return cross_mean_physical(positive_omega(profile, t, "cross_mean_physical"),
                               positive_omega(profile, t_prime, "cross_mean_physical"), T);
}

double mean_occupation(double omega, double T) {
    require_positive(omega, "omega", "mean_occupation");
    require_temperature(T, "mean_occupation");
    return 1.0 / std::expm1(omega / T);
}

double entropy_oscillator(double omega, double T) {
    // n ln((1+n)/n) + ln(1+n) with ln((1+n)/n) = omega/T and ln(1+n) = -ln(1 - e^{-omega/T}).
    const double n = mean_occupation(omega, T);
    const double x = omega / T;
    return n * x - std::log1p(-std::exp(-x));
}

BoundsResult delta_s_bounds_physical(const FrequencyProfile &profile, double t, double t_prime, double T1, double T2) {
    require_temperature(T1, "delta_s_bounds_physical");
    require_temperature(T2, "delta_s_bounds_physical");
    const double w = positive_omega(profile, t, "delta_s_bounds_physical");
    const double wp = positive_omega(profile, t_prime, "delta_s_bounds_physical");
    const double sum_sq = wp * wp + w * w;
    const double c1 = coth(w / (2.0 * T1));
    const double c2 = coth(wp / (2.0 * T2));
    const double lower = (wp * c2 - sum_sq / (2.0 * w) * c1) / (2.0 * T2);
    const double upper = (sum_sq / (2.0 * wp) * c2 - w * c1) / (2.0 * T1);
    return BoundsResult::make(lower, upper, entropy_oscillator(wp, T2) - entropy_oscillator(w, T1));
}

double f_factor(const ClassicalSolution &sol, double t, double t_prime) {
    const auto [a, b] = sol.at(t);
    const auto [c, d] = sol.at(t_prime);
    // Same quantity as the defining expression, written as
    // (|a d - b c|^2 + |a d* - b c*|^2) / 2 to avoid cancelling |eps|^4-sized terms.
    return 0.5 * (std::norm(a * d - b * c) + std::norm(a * std::conj(d) - b * std::conj(c)));
}

double cross_mean_invariant(const ClassicalSolution &sol, double t, double t_prime, double T) {
    require_temperature(T, "cross_mean_invariant");
    const double w = positive_omega(sol.profile(), t, "cross_mean_invariant");
    const double wp = positive_omega(sol.profile(), t_prime, "cross_mean_invariant");
    return 0.25 * w * coth(wp / (2.0 * T)) * f_factor(sol, t, t_prime);
}

BoundsResult delta_s_bounds_invariant(const ClassicalSolution &sol, double t, double t_prime, double T1, double T2) {
    require_temperature(T1, "delta_s_bounds_invariant");
    require_temperature(T2, "delta_s_bounds_invariant");
    const double w = positive_omega(sol.profile(), t, "delta_s_bounds_invariant");
    const double wp = positive_omega(sol.profile(), t_prime, "delta_s_bounds_invariant");
    const double f = f_factor(sol, t, t_prime);
    const double c1 = coth(w / (2.0 * T1));
    const double c2 = coth(wp / (2.0 * T2));
    const double lower = wp / (2.0 * T2) * (c2 - 0.5 * c1 * f);
    const double upper = w / (2.0 * T1) * (0.5 * c2 * f - c1);
    return BoundsResult::make(lower, upper, entropy_oscillator(wp, T2) - entropy_oscillator(w, T1));
}

std::vector<FockOracleResult> fock_truncated_oracle(std::span<const double> omegas_t, double omega_t_prime, double T, int N) {
    for(double w : omegas_t) require_positive(w, "omega(t)", "fock_truncated_oracle");
    require_positive(omega_t_prime, "omega(t')", "fock_truncated_oracle");
    require_temperature(T, "fock_truncated_oracle");
    if(N < fock_min_dimension) throw DomainError(fmt::format("fock_truncated_oracle: N = {} is below {}", N, fock_min_dimension));

    // a|n> = sqrt(n)|n-1>, q = (a + a^dagger)/sqrt 2, p = i(a^dagger - a)/sqrt 2.
    // Squares are taken one level up and then cut to N x N, so the corner
    // entries of q^2 and p^2 keep their exact values.
    const int M = N + 1;
    ComplexMatrix a = ComplexMatrix::Zero(M, M);
    for(int n = 1; n < M; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const ComplexMatrix ad = a.adjoint();
    const ComplexMatrix q = (a + ad) / std::sqrt(2.0);
    const ComplexMatrix p = Complex(0.0, 1.0) * (ad - a) / std::sqrt(2.0);
    const ComplexMatrix p2 = (p * p).topLeftCorner(N, N);
    const ComplexMatrix q2 = (q * q).topLeftCorner(N, N);

    const HermitianOperator h_tp(0.5 * (p2 + omega_t_prime * omega_t_prime * q2));
    const SpectralDecomposition sd = eigendecompose(h_tp);
    const BoltzmannWeight weight = boltzmann_weight(sd, 1.0 / T);
    ComplexMatrix rho = weight.matrix / weight.trace;
    rho = 0.5 * (rho + rho.adjoint());

    // Population that the thermal state puts on the top twentieth of the Fock basis.
    const int edge = N - std::max(1, N / 20);
    const RealVector probabilities = (-(sd.eigenvalues.array() - weight.shift) / T).exp().matrix() / weight.trace;
    const RealVector edge_weight = sd.eigenvectors.bottomRows(N - edge).cwiseAbs2().colwise().sum().transpose();
    const double tail = probabilities.dot(edge_weight);
    if(tail > fock_tail_limit)
        throw NumericalError(fmt::format("fock_truncated_oracle: tail weight {:.3e} at N = {} exceeds {:.0e}; increase N", tail, N,
                                         fock_tail_limit));

    std::vector<FockOracleResult> out;
    out.reserve(omegas_t.size());
    for(double w : omegas_t) {
        const HermitianOperator h_t(0.5 * (p2 + w * w * q2));
        out.push_back({std::exp(weight.log_trace), mean_value(rho, h_t), tail});
    }
    return out;
}

FockOracleResult fock_truncated_oracle(double omega_t, double omega_t_prime, double T, int N) {
    return fock_truncated_oracle(std::span<const double>(&omega_t, 1), omega_t_prime, T, N).front();
}

FockOracleResult fock_truncated_oracle(const FrequencyProfile &profile, double t, double t_prime, double T, int N) {
    return fock_truncated_oracle(positive_omega(profile, t, "fock_truncated_oracle"),
                                 positive_omega(profile, t_prime, "fock_truncated_oracle"), T, N);
}

} // namespace thermobound::oscillator
