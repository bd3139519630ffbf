#include <optional>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thermobound/error.hpp"
#include "thermobound/franck_condon.hpp"
#include "thermobound/oscillator.hpp"
#include "thermobound/qubit.hpp"
#include "thermobound/thermal.hpp"

namespace py = pybind11;
using namespace thermobound;

namespace {

HermitianOperator op(const ComplexMatrix &m) { return HermitianOperator(m); }

py::dict state_dict(const ThermalState &s) {
    py::dict d;
    d["rho"] = s.rho;
    d["Z"] = s.Z;
    d["log_Z"] = s.log_Z;
    d["E"] = s.E;
    d["S"] = s.S;
    d["F"] = s.F;
    d["T"] = s.T;
    return d;
}

fc::OverlapMatrix overlap_from(const std::optional<RealMatrix> &k, Eigen::Index n) {
    return k ? fc::OverlapMatrix::from_data(*k) : fc::OverlapMatrix::identity(n);
}

} // namespace

PYBIND11_MODULE(_thermobound, m) {
    m.doc() = "Entropy and free-energy bounds between thermal equilibrium states";

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
    static py::exception<DimensionError> dimension_error(m, "DimensionError", PyExc_ValueError);
    static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if(p) std::rethrow_exception(p);
        } catch(const DomainError &e) {
            py::set_error(domain_error, e.what());
        } catch(const DimensionError &e) {
            py::set_error(dimension_error, e.what());
        } catch(const NumericalError &e) {
            py::set_error(numerical_error, e.what());
        } catch(const Error &e) {
            py::set_error(error, e.what());
        }
    });

    py::class_<BoundsResult>(m, "BoundsResult")
        .def_readonly("lower", &BoundsResult::lower)
        .def_readonly("upper", &BoundsResult::upper)
        .def_readonly("exact", &BoundsResult::exact)
        .def_readonly("slack_lower", &BoundsResult::slack_lower)
        .def_readonly("slack_upper", &BoundsResult::slack_upper)
        .def_readonly("guaranteed", &BoundsResult::guaranteed)
        .def("sandwiched", &BoundsResult::sandwiched, py::arg("tol") = sandwich_tolerance)
        .def("__repr__", [](const BoundsResult &b) {
            return "BoundsResult(lower=" + std::to_string(b.lower) + ", exact=" + (b.exact ? std::to_string(*b.exact) : "None") +
                   ", upper=" + std::to_string(b.upper) + ")";
        });

    m.def("eigendecompose", [](const ComplexMatrix &h) {
        const SpectralDecomposition sd = eigendecompose(op(h));
        return py::make_tuple(sd.eigenvalues, sd.eigenvectors);
    }, py::arg("H"), "Ascending eigenvalues and phase-fixed eigenvectors (columns).");

    m.def("gibbs_state", [](const ComplexMatrix &h, double T) { return state_dict(gibbs_state({op(h), T})); }, py::arg("H"), py::arg("T"));
    m.def("grand_gibbs_state", [](const ComplexMatrix &h, const ComplexMatrix &n, double T, double mu) {
        return state_dict(grand_gibbs_state({op(h), op(n), T, mu}));
    }, py::arg("H"), py::arg("N"), py::arg("T"), py::arg("mu"));
    m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));

    m.def("delta_s_bounds", [](const ComplexMatrix &h1, double T1, const ComplexMatrix &h2, double T2) {
        return delta_s_bounds({op(h1), T1}, {op(h2), T2});
    }, py::arg("H1"), py::arg("T1"), py::arg("H2"), py::arg("T2"), "Bounds on S2 - S1.");
    m.def("helmholtz_bounds", [](const ComplexMatrix &h1, double T1, const ComplexMatrix &h2, double T2) {
        return helmholtz_bounds({op(h1), T1}, {op(h2), T2});
    }, py::arg("H1"), py::arg("T1"), py::arg("H2"), py::arg("T2"), "Bounds on F1/T1 - F2/T2.");
    m.def("log_z_ratio_bounds", [](const ComplexMatrix &h1, double T1, const ComplexMatrix &h2, double T2) {
        return log_z_ratio_bounds({op(h1), T1}, {op(h2), T2});
    }, py::arg("H1"), py::arg("T1"), py::arg("H2"), py::arg("T2"), "Bounds on ln(Z2/Z1).");

    m.def("grand_entropy_gap", [](const ComplexMatrix &rho, const ComplexMatrix &h, const ComplexMatrix &n, double T, double mu) {
        return grand_entropy_gap(rho, {op(h), op(n), T, mu});
    }, py::arg("rho"), py::arg("H"), py::arg("N"), py::arg("T"), py::arg("mu"));
    m.def("grand_delta_s_bounds", [](const ComplexMatrix &h1, const ComplexMatrix &n1, double T1, double mu1, const ComplexMatrix &h2,
                                     const ComplexMatrix &n2, double T2, double mu2) {
        return grand_delta_s_bounds({op(h1), op(n1), T1, mu1}, {op(h2), op(n2), T2, mu2}).bounds;
    }, py::arg("H1"), py::arg("N1"), py::arg("T1"), py::arg("mu1"), py::arg("H2"), py::arg("N2"), py::arg("T2"), py::arg("mu2"));
    m.def("grand_log_z_ratio_bounds", [](const ComplexMatrix &h1, const ComplexMatrix &n1, double T1, double mu1, const ComplexMatrix &h2,
                                         const ComplexMatrix &n2, double T2, double mu2) {
        return grand_log_z_ratio_bounds({op(h1), op(n1), T1, mu1}, {op(h2), op(n2), T2, mu2});
    }, py::arg("H1"), py::arg("N1"), py::arg("T1"), py::arg("mu1"), py::arg("H2"), py::arg("N2"), py::arg("T2"), py::arg("mu2"));

    py::module_ q = m.def_submodule("qubit", "Closed forms for two-level systems");
    q.def("entropy", &qubit::entropy_closed, py::arg("norm_h"), py::arg("T"));
    q.def("delta_s_bounds", py::overload_cast<double, double, double, double, double>(&qubit::delta_s_bounds_qubit), py::arg("norm_h1"),
          py::arg("norm_h2"), py::arg("theta"), py::arg("T1"), py::arg("T2"));
    q.def("sweep_theta", [](double n1, double n2, double T1, double T2, int points) {
        const std::vector<qubit::SweepRow> rows = qubit::sweep_theta(n1, n2, T1, T2, points);
        RealMatrix out(static_cast<Eigen::Index>(rows.size()), 4);
        for(std::size_t i = 0; i < rows.size(); ++i)
            out.row(static_cast<Eigen::Index>(i)) << rows[i].variable, rows[i].bounds.lower, *rows[i].bounds.exact, rows[i].bounds.upper;
        return out;
    }, py::arg("norm_h1"), py::arg("norm_h2"), py::arg("T1"), py::arg("T2"), py::arg("points") = 200, "Rows of theta, lower, exact, upper.");

    py::module_ f = m.def_submodule("fc", "Bounds from spectra and Franck-Condon overlaps");
    f.def("overlap_matrix", [](const ComplexMatrix &b1, const ComplexMatrix &b2) { return fc::OverlapMatrix::from_bases(b1, b2).values(); },
          py::arg("basis1"), py::arg("basis2"));
    f.def("delta_s_bounds", [](const RealVector &l1, const RealVector &l2, double T1, double T2, const std::optional<RealMatrix> &k) {
        return fc::delta_s_bounds_fc(fc::SpectralSystem(l1), fc::SpectralSystem(l2), T1, T2, overlap_from(k, l1.size()));
    }, py::arg("levels1"), py::arg("levels2"), py::arg("T1"), py::arg("T2"), py::arg("overlap") = py::none(),
          "Supplied overlaps run in truncated mode (guaranteed is False); no overlap means a shared basis.");
    f.def("helmholtz_bounds", [](const RealVector &l1, const RealVector &l2, double T1, double T2, const std::optional<RealMatrix> &k) {
        return fc::helmholtz_bounds_fc(fc::SpectralSystem(l1), fc::SpectralSystem(l2), T1, T2, overlap_from(k, l1.size()));
    }, py::arg("levels1"), py::arg("levels2"), py::arg("T1"), py::arg("T2"), py::arg("overlap") = py::none());

    py::module_ o = m.def_submodule("oscillator", "Harmonic oscillator with a time-dependent frequency");
    using oscillator::ClassicalSolution;
    using oscillator::FrequencyProfile;
    py::class_<FrequencyProfile>(o, "FrequencyProfile")
        .def_static("constant", &FrequencyProfile::constant, py::arg("omega0"))
        .def_static("sqrt_linear", &FrequencyProfile::sqrt_linear, py::arg("omega0"), py::arg("eta"), py::arg("offset") = 1.0)
        .def_static("paul_trap", &FrequencyProfile::paul_trap, py::arg("omega0"), py::arg("eta"), py::arg("Omega"))
        .def_static("tabulated", &FrequencyProfile::tabulated, py::arg("times"), py::arg("omegas"))
        .def("omega", &FrequencyProfile::omega, py::arg("t"));
    py::class_<ClassicalSolution>(o, "ClassicalSolution")
        .def("at", [](const ClassicalSolution &s, double t) {
            const ClassicalSolution::Point p = s.at(t);
            return py::make_tuple(p.eps, p.deps);
        }, py::arg("t"))
        .def("wronskian", &ClassicalSolution::wronskian, py::arg("t"))
        .def("max_wronskian_drift", &ClassicalSolution::max_wronskian_drift)
        .def_property_readonly("t_max", &ClassicalSolution::t_max);
    o.def("solve_classical", &oscillator::solve_classical, py::arg("profile"), py::arg("t_max"),
          py::arg("tol") = oscillator::default_tolerance, py::call_guard<py::gil_scoped_release>());
    o.def("f_factor", &oscillator::f_factor, py::arg("solution"), py::arg("t"), py::arg("t_prime"));
    o.def("partition_function_closed", &oscillator::partition_function_closed, py::arg("omega"), py::arg("T"));
    o.def("partition_function_via_disentangling", &oscillator::partition_function_via_disentangling, py::arg("solution"), py::arg("t"),
          py::arg("t_prime"), py::arg("T"));
    o.def("cross_mean_physical", py::overload_cast<double, double, double>(&oscillator::cross_mean_physical), py::arg("omega_t"),
          py::arg("omega_t_prime"), py::arg("T"));
    o.def("cross_mean_via_disentangling", &oscillator::cross_mean_via_disentangling, py::arg("solution"), py::arg("t"), py::arg("t_prime"),
          py::arg("T"));
    o.def("cross_mean_invariant", &oscillator::cross_mean_invariant, py::arg("solution"), py::arg("t"), py::arg("t_prime"), py::arg("T"));
    o.def("entropy", &oscillator::entropy_oscillator, py::arg("omega"), py::arg("T"));
    o.def("delta_s_bounds_physical", &oscillator::delta_s_bounds_physical, py::arg("profile"), py::arg("t"), py::arg("t_prime"),
          py::arg("T1"), py::arg("T2"));
    o.def("delta_s_bounds_invariant", &oscillator::delta_s_bounds_invariant, py::arg("solution"), py::arg("t"), py::arg("t_prime"),
          py::arg("T1"), py::arg("T2"));
    o.def("fock_truncated_oracle", [](double w, double wp, double T, int N) {
        const oscillator::FockOracleResult r = oscillator::fock_truncated_oracle(w, wp, T, N);
        py::dict d;
        d["Z"] = r.Z;
        d["cross_mean"] = r.cross_mean;
        d["tail_weight"] = r.tail_weight;
        return d;
    }, py::arg("omega_t"), py::arg("omega_t_prime"), py::arg("T"), py::arg("N") = 400);
}
