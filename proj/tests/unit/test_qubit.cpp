#include <doctest.h>

#include <random>

#include "thermobound/error.hpp"
#include "thermobound/qubit.hpp"
#include "thermobound/thermal.hpp"

using namespace thermobound;
using namespace thermobound::qubit;

namespace {

const double fig_norm1 = std::sqrt(61.0);
const double fig_norm2 = std::sqrt(17.0);

BlochHamiltonian random_bloch(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    return {u(rng), {u(rng), u(rng), u(rng)}};
}

BlochHamiltonian along(double norm, double theta, double h0 = 0.0) {
    return {h0, {norm * std::sin(theta), 0.0, norm * std::cos(theta)}};
}

} // namespace

TEST_SUITE("qubit") {

TEST_CASE("matrix forms") {
    const HermitianOperator z = to_matrix({0.0, {0.0, 0.0, 2.0}});
    CHECK(z.matrix()(0, 0).real() == 1.0);
    CHECK(z.matrix()(1, 1).real() == -1.0);
    CHECK(std::abs(z.matrix()(0, 1)) == 0.0);
    CHECK((to_matrix({2.0, Eigen::Vector3d::Zero()}).matrix() - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    const RealVector ev = eigendecompose(to_matrix({0.0, {1.0, 1.0, 1.0}})).eigenvalues;
    CHECK(ev[0] == doctest::Approx(-std::sqrt(3.0) / 2).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
}

TEST_CASE("entropy limits") {
    CHECK(entropy_closed(0.0, 3.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(entropy_closed(100.0, 0.1) < 1e-12);
    CHECK(entropy_closed(100.0, 0.1) >= 0.0);
}

TEST_CASE("entropy of the figure 1 qubit matches the matrix path") {
    const double closed = entropy_closed(fig_norm1, 10.0);
    CHECK(std::abs(closed - gibbs_state({to_matrix(along(fig_norm1, 0.4)), 10.0}).S) < 1e-12);
}

TEST_CASE("mean energy limits") {
    CHECK(mean_energy_closed({3.0, Eigen::Vector3d::Zero()}, 1.0) == doctest::Approx(1.5));
    CHECK(mean_energy_closed({0.0, {0.0, 2.0, 0.0}}, 0.01) == doctest::Approx(-1.0).epsilon(1e-12));
    const BlochHamiltonian b = along(fig_norm1, 1.0, 0.7);
    CHECK(std::abs(mean_energy_closed(b, 10.0) - gibbs_state({to_matrix(b), 10.0}).E) < 1e-12);
}

TEST_CASE("cross mean special cases") {
    const BlochHamiltonian b = along(fig_norm1, 0.3, 1.2);
    CHECK(std::abs(cross_mean_closed(b, b, 4.0) - mean_energy_closed(b, 4.0)) < 1e-13);
    const BlochHamiltonian perp{2.5, {std::cos(0.3) * fig_norm2, 0.0, -std::sin(0.3) * fig_norm2}};
    CHECK(cross_mean_closed(b, perp, 4.0) == doctest::Approx(1.25).epsilon(1e-13));
    CHECK(cross_mean_closed({0.0, Eigen::Vector3d::Zero()}, perp, 4.0) == doctest::Approx(1.25));
    const BlochHamiltonian b1 = along(fig_norm1, 0.0);
    const BlochHamiltonian b2 = along(fig_norm2, M_PI / 4, -0.4);
    const double matrix = mean_value(gibbs_state({to_matrix(b1), 10.0}).rho, to_matrix(b2));
    CHECK(std::abs(cross_mean_closed(b1, b2, 10.0) - matrix) < 1e-12);
}

TEST_CASE("closed forms equal the matrix path on random configurations") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> temp(0.1, 50.0);
    for(int trial = 0; trial < 1000; ++trial) {
        const BlochHamiltonian b1 = random_bloch(rng);
        const BlochHamiltonian b2 = random_bloch(rng);
        const double T1 = temp(rng);
        const double T2 = temp(rng);
        const ThermalState r1 = gibbs_state({to_matrix(b1), T1});
        CHECK(std::abs(entropy_closed(b1.norm(), T1) - r1.S) < 1e-12);
        CHECK(std::abs(mean_energy_closed(b1, T1) - r1.E) < 1e-12);
        CHECK(std::abs(cross_mean_closed(b1, b2, T1) - mean_value(r1.rho, to_matrix(b2))) < 1e-12);
        const BoundsResult q = delta_s_bounds_qubit(b1, b2, T1, T2);
        const BoundsResult m = delta_s_bounds({to_matrix(b1), T1}, {to_matrix(b2), T2});
        CHECK(std::abs(q.lower - m.lower) < 1e-10);
        CHECK(std::abs(q.upper - m.upper) < 1e-10);
        CHECK(std::abs(*q.exact - *m.exact) < 1e-10);
        CHECK(q.sandwiched());
    }
}

TEST_CASE("identical qubits collapse the bounds") {
    const BlochHamiltonian b = along(fig_norm1, 0.9, 0.2);
    const BoundsResult r = delta_s_bounds_qubit(b, b, 7.0, 7.0);
    CHECK(std::abs(r.lower) < 1e-15);
    CHECK(std::abs(r.upper) < 1e-15);
    CHECK(std::abs(*r.exact) < 1e-15);
}

TEST_CASE("figure 1(a) extrema in theta") {
    const std::vector<SweepRow> rows = sweep_theta(fig_norm1, fig_norm2, 10.0, 15.0);
    REQUIRE(rows.size() == 200);
    CHECK(rows.front().variable == 0.0);
    CHECK(rows.back().variable == doctest::Approx(M_PI));
    for(std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].bounds.lower < rows[0].bounds.lower);
        CHECK(rows[i - 1].bounds.lower > rows.back().bounds.lower);
        CHECK(rows[i].bounds.upper > rows[0].bounds.upper);
        CHECK(rows[i - 1].bounds.upper < rows.back().bounds.upper);
    }
}

TEST_CASE("lower decreases and upper increases strictly in theta") {
    for(int i = 1; i <= 100; ++i) {
        const double theta = M_PI * i / 101.0;
        const double h = 1e-4;
        const BoundsResult a = delta_s_bounds_qubit(fig_norm1, fig_norm2, theta - h, 10.0, 15.0);
        const BoundsResult b = delta_s_bounds_qubit(fig_norm1, fig_norm2, theta + h, 10.0, 15.0);
        CHECK(b.lower < a.lower);
        CHECK(b.upper > a.upper);
    }
}

TEST_CASE("bounds do not depend on the traces") {
    std::mt19937_64 rng(52);
    for(int trial = 0; trial < 100; ++trial) {
        BlochHamiltonian b1 = random_bloch(rng);
        BlochHamiltonian b2 = random_bloch(rng);
        const BoundsResult base = delta_s_bounds({to_matrix(b1), 2.0}, {to_matrix(b2), 5.0});
        b1.h0 += 3.3;
        b2.h0 -= 1.7;
        const BoundsResult shifted = delta_s_bounds({to_matrix(b1), 2.0}, {to_matrix(b2), 5.0});
        CHECK(std::abs(base.lower - shifted.lower) < 1e-12);
        CHECK(std::abs(base.upper - shifted.upper) < 1e-12);
        CHECK(std::abs(*base.exact - *shifted.exact) < 1e-12);
    }
}

TEST_CASE("slack shrinks at high temperature") {
    const BoundsResult cold = delta_s_bounds_qubit(fig_norm1, fig_norm2, M_PI / 4, 5.0, 15.0);
    const BoundsResult hot = delta_s_bounds_qubit(fig_norm1, fig_norm2, M_PI / 4, 50.0, 15.0);
    CHECK(hot.slack_lower + hot.slack_upper < cold.slack_lower + cold.slack_upper);
}

TEST_CASE("temperature sweep grid") {
    const std::vector<SweepRow> rows = sweep_temperature(fig_norm1, fig_norm2, M_PI / 4, 15.0);
    REQUIRE(rows.size() == 200);
    CHECK(rows.front().variable == 1.0);
    CHECK(rows.back().variable == doctest::Approx(30.0));
    for(const SweepRow &r : rows) CHECK(r.bounds.sandwiched());
}

TEST_CASE("bloch angle is clamped") {
    const BlochHamiltonian b{0.0, {1e-3, 1e-3, 1e-3}};
    CHECK(bloch_angle(b, b) == doctest::Approx(0.0));
    CHECK(bloch_angle(b, {0.0, -b.h}) == doctest::Approx(M_PI));
    CHECK(bloch_angle({0.0, Eigen::Vector3d::Zero()}, b) == doctest::Approx(M_PI / 2));
}

TEST_CASE("qubit domain errors") {
    CHECK_THROWS_AS(entropy_closed(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(entropy_closed(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(delta_s_bounds_qubit(1.0, 1.0, std::nan(""), 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(sweep_theta(1.0, 1.0, 1.0, 1.0, 1), DomainError);
}

}
