#include <doctest.h>

#include <random>

#include "thermobound/error.hpp"
#include "thermobound/oscillator.hpp"

using namespace thermobound;
using namespace thermobound::oscillator;

namespace {

double coth(double x) { return 1.0 / std::tanh(x); }

// Classical fourth-order Runge-Kutta with a fixed step, as an independent integrator.
std::pair<Complex, Complex> rk4(const FrequencyProfile &profile, double t_end, double h) {
    Complex x(1.0, 0.0), v(0.0, 1.0);
    const int steps = static_cast<int>(std::ceil(t_end / h));
    const double dt = t_end / steps;
    for(int i = 0; i < steps; ++i) {
        const double t = i * dt;
        const double w0 = profile.omega_squared(t);
        const double wm = profile.omega_squared(t + 0.5 * dt);
        const double w1 = profile.omega_squared(t + dt);
        const Complex k1x = v, k1v = -w0 * x;
        const Complex k2x = v + 0.5 * dt * k1v, k2v = -wm * (x + 0.5 * dt * k1x);
        const Complex k3x = v + 0.5 * dt * k2v, k3v = -wm * (x + 0.5 * dt * k2x);
        const Complex k4x = v + dt * k3v, k4v = -w1 * (x + dt * k3x);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    return {x, v};
}

const FrequencyProfile root_t = FrequencyProfile::sqrt_linear(1.0, 1.0, 0.0);
const FrequencyProfile trap = FrequencyProfile::paul_trap(1.0, 0.5, 2.0);

} // namespace

TEST_SUITE("oscillator") {

TEST_CASE("constant frequency solution is a plane wave") {
    const ClassicalSolution sol = solve_classical(FrequencyProfile::constant(1.0), 6.0);
    for(double t : {1.0, M_PI, 5.0}) {
        const auto p = sol.at(t);
        CHECK(std::abs(p.eps - std::exp(Complex(0.0, t))) < 1e-9);
        CHECK(std::abs(p.deps - Complex(0.0, 1.0) * std::exp(Complex(0.0, t))) < 1e-9);
    }
    CHECK(sol.at(0.0).eps == Complex(1.0, 0.0));
    CHECK(sol.at(0.0).deps == Complex(0.0, 1.0));
}

TEST_CASE("square-root profile agrees with a fine fixed-step integrator") {
    const ClassicalSolution sol = solve_classical(root_t, 10.0);
    for(double t : {0.37, 2.0, 5.5, 10.0}) {
        const auto [x, v] = rk4(root_t, t, 2e-4);
        const auto p = sol.at(t);
        CHECK(std::abs(p.eps - x) < 1e-8);
        CHECK(std::abs(p.deps - v) < 1e-8);
    }
}

TEST_CASE("dense output between accepted steps") {
    const ClassicalSolution sol = solve_classical(trap, 10.0);
    for(int i = 0; i < 20; ++i) {
        const double t = 0.123 + 0.49 * i;
        const auto [x, v] = rk4(trap, t, 2e-4);
        CHECK(std::abs(sol.at(t).eps - x) < 1e-8);
        CHECK(std::abs(sol.wronskian(t) - Complex(0.0, 2.0)) < 1e-8);
    }
}

TEST_CASE("wronskian drift over fifty time units") {
    CHECK(solve_classical(trap, 50.0).max_wronskian_drift() < 1e-8);
    CHECK(solve_classical(root_t, 50.0).max_wronskian_drift() < 1e-8);
}

TEST_CASE("su11 coefficients of the stationary oscillator") {
    const ClassicalSolution sol = solve_classical(FrequencyProfile::constant(1.0), 5.0);
    for(double t : {0.0, 1.3, 4.0}) {
        const SU11Coefficients c = su11_coefficients(sol, t, t);
        CHECK(std::abs(c.alpha) < 1e-9);
        CHECK(c.gamma == doctest::Approx(2.0).epsilon(1e-9));
    }
}

TEST_CASE("su11 coefficients at the initial time") {
    const ClassicalSolution sol = solve_classical(root_t, 5.0);
    for(double tp : {0.5, 2.0, 4.5}) {
        const SU11Coefficients c = su11_coefficients(sol, 0.0, tp);
        const double w2 = root_t.omega_squared(tp);
        CHECK(std::abs(c.alpha - Complex(0.5 * (w2 - 1.0), 0.0)) < 1e-14);
        CHECK(c.gamma == doctest::Approx(1.0 + w2).epsilon(1e-14));
    }
}

TEST_CASE("su11 identity on the paul trap") {
    const ClassicalSolution sol = solve_classical(trap, 20.0);
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> time(0.0, 20.0);
    for(int trial = 0; trial < 100; ++trial) {
        const double tp = time(rng);
        const SU11Coefficients c = su11_coefficients(sol, time(rng), tp);
        CHECK(std::abs(4.0 * trap.omega_squared(tp) - (c.gamma * c.gamma - 4.0 * std::norm(c.alpha))) <
              1e-8 * std::max(1.0, c.gamma * c.gamma));
    }
}

TEST_CASE("cross mean closed form examples") {
    const FrequencyProfile one = FrequencyProfile::constant(1.0);
    CHECK(cross_mean_physical(one, 2.0, 2.0, 1.0) == doctest::Approx(0.5 * coth(0.5)).epsilon(1e-15));
    CHECK(cross_mean_physical(1.0, 2.0, 1.0) == doctest::Approx(0.625 * coth(1.0)).epsilon(1e-15));
    const double w = std::sqrt(3.0);
    CHECK(cross_mean_physical(w, w, 0.8) == doctest::Approx(0.5 * w * coth(w / 1.6)).epsilon(1e-15));
}

TEST_CASE("cross mean agrees with the truncated Fock oracle") {
    const FockOracleResult r = fock_truncated_oracle(std::sqrt(3.0), std::sqrt(2.0), 2.5, 400);
    CHECK(std::abs(r.cross_mean - cross_mean_physical(std::sqrt(3.0), std::sqrt(2.0), 2.5)) < 1e-6);
    CHECK(std::abs(r.Z - partition_function_closed(std::sqrt(2.0), 2.5)) < 1e-6);
    CHECK(r.tail_weight < fock_tail_limit);
}

TEST_CASE("fock oracle for a static oscillator") {
    const FockOracleResult r = fock_truncated_oracle(1.0, 1.0, 1.0, 200);
    CHECK(std::abs(r.Z - 1.0 / (2.0 * std::sinh(0.5))) < 1e-8);
    CHECK(std::abs(r.cross_mean - 0.5 * coth(0.5)) < 1e-8);
}

TEST_CASE("fock oracle converges in the truncation") {
    const FockOracleResult a = fock_truncated_oracle(1.0, 1.0, 5.0, 100);
    const FockOracleResult b = fock_truncated_oracle(1.0, 1.0, 5.0, 200);
    CHECK(std::abs(a.cross_mean - b.cross_mean) < 1e-6);
    CHECK(std::abs(a.Z - b.Z) < 1e-6);
}

TEST_CASE("fock oracle rejects unconverged truncations") {
    CHECK_THROWS_AS(fock_truncated_oracle(1.0, 1.0, 1.0, 10), DomainError);
    CHECK_THROWS_AS(fock_truncated_oracle(1.0, 1.0, 50.0, 60), NumericalError);
}

TEST_CASE("entropy of the oscillator") {
    CHECK(entropy_oscillator(10.0, 0.1) < 1e-40);
    CHECK(entropy_oscillator(10.0, 0.1) > 0.0);
    double s = 0.0;
    const double q = std::exp(-1.0);
    for(int n = 0; n < 2000; ++n) {
        const double p = (1.0 - q) * std::pow(q, n);
        if(p > 0.0) s -= p * std::log(p);
    }
    CHECK(std::abs(entropy_oscillator(1.0, 1.0) - s) < 1e-13);
    const double nbar = mean_occupation(1.0, 1.0);
    CHECK(nbar == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)));
    CHECK(entropy_oscillator(1.0, 1.0) == doctest::Approx(nbar * std::log((1 + nbar) / nbar) + std::log(1 + nbar)));
    CHECK(entropy_oscillator(1.0, 2.0) > entropy_oscillator(1.0, 1.0));
}

TEST_CASE("physical bounds collapse at equal time and temperature") {
    for(double t : {0.5, 3.0}) {
        const BoundsResult b = delta_s_bounds_physical(root_t, t, t, 4.0, 4.0);
        CHECK(std::abs(b.lower) < 1e-15);
        CHECK(std::abs(b.upper) < 1e-15);
        CHECK(std::abs(*b.exact) < 1e-15);
    }
}

TEST_CASE("physical bounds change sign at t = t'") {
    for(int i = 0; i < 200; ++i) {
        const double t = 0.1 + 9.9 * i / 199.0;
        if(std::abs(t - 1.0) < 1e-12) continue;
        const BoundsResult b = delta_s_bounds_physical(root_t, t, 1.0, 10.0, 10.0);
        CHECK(b.sandwiched());
        if(t < 1.0) {
            CHECK(b.upper < 0.0);
            CHECK(b.lower < 0.0);
        } else {
            CHECK(b.lower > 0.0);
            CHECK(b.upper > 0.0);
        }
    }
}

TEST_CASE("physical bounds sandwich on a grid") {
    for(double t = 0.2; t < 10.0; t += 0.7)
        for(double tp = 0.2; tp < 10.0; tp += 0.9)
            for(double T1 : {0.3, 2.0, 15.0})
                for(double T2 : {0.5, 7.0}) CHECK(delta_s_bounds_physical(root_t, t, tp, T1, T2).sandwiched());
}

TEST_CASE("entropy minima follow the paul trap frequency maxima") {
    const int points = 400;
    const double step = 4.0 * M_PI / (points - 1);
    std::vector<double> exact;
    for(int i = 0; i < points; ++i) exact.push_back(*delta_s_bounds_physical(trap, 0.1, i * step, 10.0, 10.0).exact);
    const auto lowest = std::min_element(exact.begin(), exact.end());
    const double tp = step * static_cast<double>(std::distance(exact.begin(), lowest));
    const double nearest_peak = std::round(tp / M_PI) * M_PI;
    CHECK(std::abs(tp - nearest_peak) <= step);
}

TEST_CASE("disentangling coefficients of the stationary oscillator") {
    const ClassicalSolution sol = solve_classical(FrequencyProfile::constant(1.0), 3.0);
    for(double T : {0.3, 1.0, 10.0}) {
        const DisentanglingCoefficients c = disentangling_coefficients(sol, 1.5, 1.5, T);
        CHECK(std::abs(c.Aplus) < 1e-9);
        CHECK(c.A0 == doctest::Approx(std::exp(-2.0 / T)).epsilon(1e-9));
        CHECK(c.Aminus == std::conj(c.Aplus));
    }
}

TEST_CASE("disentangling coefficients at high temperature") {
    const ClassicalSolution sol = solve_classical(trap, 5.0);
    const DisentanglingCoefficients c = disentangling_coefficients(sol, 1.0, 3.0, 1e7);
    CHECK(c.A0 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(c.Aplus) < 1e-6);
}

TEST_CASE("disentangling denominator is positive on the paul trap") {
    const ClassicalSolution sol = solve_classical(trap, 10.0);
    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> time(0.0, 10.0);
    std::uniform_real_distribution<double> temp(0.2, 10.0);
    for(int trial = 0; trial < 200; ++trial)
        CHECK(disentangling_denominator(disentangling_coefficients(sol, time(rng), time(rng), temp(rng))) > 0.0);
}

TEST_CASE("disentangled partition function of the stationary oscillator") {
    const ClassicalSolution sol = solve_classical(FrequencyProfile::constant(1.0), 3.0);
    CHECK(partition_function_disentangled(disentangling_coefficients(sol, 2.0, 2.0, 1.0)) ==
          doctest::Approx(1.0 / (2.0 * std::sinh(0.5))).epsilon(1e-9));
    CHECK(std::abs(partition_function_disentangled(disentangling_coefficients(sol, 0.0, 2.5, 10.0)) - partition_function_closed(1.0, 10.0)) <
          1e-10 * partition_function_closed(1.0, 10.0));
}

TEST_CASE("two-path partition function on both named profiles") {
    for(const FrequencyProfile &profile : {root_t, trap}) {
        const ClassicalSolution sol = solve_classical(profile, 10.0);
        std::mt19937_64 rng(63);
        std::uniform_real_distribution<double> time(0.5, 10.0);
        std::uniform_real_distribution<double> temp(0.5, 5.0);
        for(int trial = 0; trial < 100; ++trial) {
            const double t = time(rng), tp = time(rng), T = temp(rng);
            const double closed = partition_function_closed(profile.omega(tp), T);
            CHECK(std::abs(partition_function_via_disentangling(sol, t, tp, T) - closed) < 1e-9 * std::max(1.0, closed));
        }
    }
}

TEST_CASE("K operator means") {
    DisentanglingCoefficients c;
    const double w = 1.3, T = 0.7;
    c.A0 = std::exp(-2.0 * w / T);
    const KOperatorMeans m = k_operator_means(c);
    CHECK(m.k0 == doctest::Approx(0.25 * coth(w / (2.0 * T))).epsilon(1e-13));
    CHECK(std::abs(m.kplus) == 0.0);
    CHECK(std::abs(m.kminus) == 0.0);
    c.A0 = std::exp(-2.0 * w / 1e4);
    CHECK(k_operator_means(c).k0 / (1e4 / (2.0 * w)) == doctest::Approx(1.0).epsilon(1e-6));
    c.Aplus = Complex(0.3, -0.1);
    c.A0 = 0.2;
    c.Aminus = std::conj(c.Aplus);
    const KOperatorMeans n = k_operator_means(c);
    CHECK(n.kminus == std::conj(n.kplus));
    c.A0 = 1.0;
    CHECK_THROWS_AS(k_operator_means(c), NumericalError);
    CHECK_THROWS_AS(partition_function_disentangled(c), NumericalError);
}

TEST_CASE("recombined K means reproduce the cross mean") {
    for(const FrequencyProfile &profile : {root_t, trap}) {
        const ClassicalSolution sol = solve_classical(profile, 10.0);
        std::mt19937_64 rng(64);
        std::uniform_real_distribution<double> time(0.5, 10.0);
        std::uniform_real_distribution<double> temp(0.5, 5.0);
        for(int trial = 0; trial < 100; ++trial) {
            const double t = time(rng), tp = time(rng), T = temp(rng);
            const double expected = cross_mean_physical(profile, t, tp, T);
            CHECK(std::abs(cross_mean_via_disentangling(sol, t, tp, T) - expected) < 1e-8 * std::max(1.0, expected));
        }
    }
}

TEST_CASE("f factor identities") {
    const ClassicalSolution flat = solve_classical(FrequencyProfile::constant(1.0), 5.0);
    CHECK(f_factor(flat, 0.7, 4.1) == doctest::Approx(2.0).epsilon(1e-9));
    const ClassicalSolution sol = solve_classical(root_t, 10.0);
    CHECK(std::abs(f_factor(sol, 2.0, 5.0) - f_factor(sol, 5.0, 2.0)) < 1e-10);
    for(int i = 0; i <= 20; ++i) {
        const double t = 0.5 * i;
        CHECK(std::abs(f_factor(sol, t, t) - 2.0) < 1e-9);
    }
    CHECK(f_factor(sol, 1.0, 9.0) > 2.0);
}

TEST_CASE("invariant cross mean reductions") {
    const ClassicalSolution sol = solve_classical(root_t, 10.0);
    for(double t : {1.0, 4.0, 9.0}) {
        const double w = root_t.omega(t);
        CHECK(cross_mean_invariant(sol, t, t, 3.0) == doctest::Approx(0.5 * w * coth(w / 6.0)).epsilon(1e-9));
    }
    const ClassicalSolution flat = solve_classical(FrequencyProfile::constant(1.0), 5.0);
    CHECK(cross_mean_invariant(flat, 0.5, 3.5, 2.0) == doctest::Approx(0.5 * coth(0.25)).epsilon(1e-9));
    const double forward = cross_mean_invariant(sol, 5.0, 10.0, 10.0);
    const double swapped = cross_mean_invariant(sol, 10.0, 5.0, 10.0);
    const double f = f_factor(sol, 5.0, 10.0);
    CHECK(std::abs(forward - 0.25 * root_t.omega(5.0) * coth(root_t.omega(10.0) / 20.0) * f) < 1e-10);
    CHECK(std::abs(swapped - 0.25 * root_t.omega(10.0) * coth(root_t.omega(5.0) / 20.0) * f) < 1e-10);
}

TEST_CASE("invariant bounds") {
    const ClassicalSolution sol = solve_classical(root_t, 20.0);
    const BoundsResult same = delta_s_bounds_invariant(sol, 3.0, 3.0, 6.0, 6.0);
    CHECK(std::abs(same.lower) < 1e-9);
    CHECK(std::abs(same.upper) < 1e-9);
    CHECK(std::abs(*same.exact) < 1e-15);
    for(int i = 0; i <= 18; ++i)
        for(int j = 0; j <= 18; ++j) CHECK(delta_s_bounds_invariant(sol, 1.0 + 0.5 * i, 1.0 + 0.5 * j, 10.0, 10.0).sandwiched());
    for(int i = 0; i < 50; ++i)
        for(int j = 0; j < 50; ++j) {
            const double T1 = 5.0 + 15.0 * i / 49.0, T2 = 5.0 + 15.0 * j / 49.0;
            CHECK(delta_s_bounds_invariant(sol, 5.0, 10.0, T1, T2).sandwiched());
        }
}

TEST_CASE("profile shapes") {
    const FrequencyProfile lin = FrequencyProfile::sqrt_linear(2.0, 0.5);
    CHECK(lin.omega(2.0) == doctest::Approx(2.0 * std::sqrt(2.0)));
    CHECK(trap.omega(0.0) == doctest::Approx(std::sqrt(1.5)));
    CHECK(trap.omega(M_PI / 2) == doctest::Approx(std::sqrt(0.5)));
    const FrequencyProfile table = FrequencyProfile::tabulated({0.0, 1.0, 2.0, 3.0, 4.0}, {1.0, 1.2, 1.5, 1.4, 1.0});
    CHECK(table.omega(2.0) == doctest::Approx(1.5));
    CHECK(table.omega_squared(2.5) > 0.0);
    const ClassicalSolution sol = solve_classical(table, 4.0);
    CHECK(sol.max_wronskian_drift() < 1e-8);
}

TEST_CASE("profile domain errors") {
    CHECK_THROWS_AS(FrequencyProfile::paul_trap(1.0, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(FrequencyProfile::constant(0.0), DomainError);
    CHECK_THROWS_AS(FrequencyProfile::tabulated({0.0, 1.0}, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(FrequencyProfile::tabulated({0.0, 1.0, 1.0, 2.0}, {1.0, 1.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(solve_classical(FrequencyProfile::sqrt_linear(1.0, -1.0), 2.0), DomainError);
    CHECK_THROWS_AS(solve_classical(trap, -1.0), DomainError);
    const ClassicalSolution sol = solve_classical(trap, 2.0);
    CHECK_THROWS_AS(static_cast<void>(sol.at(2.5)), DomainError);
    CHECK_THROWS_AS(su11_coefficients(sol, 1.0, 3.0), DomainError);
    CHECK_THROWS_AS(delta_s_bounds_physical(root_t, 0.0, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(cross_mean_physical(1.0, 1.0, 0.0), DomainError);
}

}
