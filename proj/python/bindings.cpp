// SPDX-License-Identifier: Apache-2.0
//
// losmimo: capacity and outage analysis for line-of-sight MIMO satellite links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "losmimo/channel.hpp"
#include "losmimo/errors.hpp"
#include "losmimo/moments.hpp"
#include "losmimo/montecarlo.hpp"
#include "losmimo/outage.hpp"
#include "losmimo/specfun.hpp"
#include "losmimo/spectrum_tools.hpp"
#include "losmimo/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>

namespace py = pybind11;
using namespace losmimo;

namespace
{
    MomentConfig moment_config(int n_t, int n_r, double kd, const std::string &axis)
    {
        MomentConfig c{n_t, n_r, kd, parse_axis(axis)};
        c.validate();
        return c;
    }

    ExperimentConfig experiment(int n_t, int n_r, double kd, const std::string &axis, double snr_db, std::uint64_t trials,
                                std::uint64_t seed, unsigned workers, const std::string &theta_law)
    {
        ExperimentConfig c;
        c.n_T = n_t;
        c.n_R = n_r;
        c.kd = kd;
        c.axis = parse_axis(axis);
        c.law.theta = parse_theta_law(theta_law);
        c.snr_db = snr_db;
        c.trials = trials;
        c.master_seed = seed;
        c.workers = workers;
        c.validate();
        return c;
    }

    Statistic parse_statistic(const std::string &name)
    {
        for (Statistic s : {Statistic::Capacity, Statistic::TraceW2, Statistic::TraceW3, Statistic::F1, Statistic::F2, Statistic::Omega})
            if (name == to_string(s))
                return s;
        throw ArgumentError("unknown statistic '" + name + "'");
    }

    py::array_t<double> to_array(std::vector<double> &&values)
    {
        auto *heap = new std::vector<double>(std::move(values));
        py::capsule owner(heap, [](void *p) { delete static_cast<std::vector<double> *>(p); });
        return py::array_t<double>(static_cast<py::ssize_t>(heap->size()), heap->data(), owner);
    }

    py::array_t<double> p_out(const std::vector<OutagePoint> &curve)
    {
        std::vector<double> p;
        p.reserve(curve.size());
        for (const auto &pt : curve)
            p.push_back(pt.p_out);
        return to_array(std::move(p));
    }

    // keyword arguments shared by every moment function
#define MOMENT_ARGS py::arg("n_t"), py::arg("n_r"), py::arg("kd") = std::numbers::pi, py::arg("axis") = "y"
#define EXPERIMENT_ARGS                                                                                                     \
    py::arg("n_t"), py::arg("n_r"), py::arg("kd") = std::numbers::pi, py::arg("axis") = "y", py::arg("snr_db") = 10.0,      \
        py::arg("trials") = 100000, py::arg("seed") = 42, py::arg("workers") = 1, py::arg("theta_law") = "pi"

    template <double (*F)(const MomentConfig &)>
    double moment(int n_t, int n_r, double kd, const std::string &axis)
    {
        return F(moment_config(n_t, n_r, kd, axis));
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Capacity and outage analysis for line-of-sight MIMO satellite links.";
    m.attr("__version__") = LOSMIMO_VERSION;

    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<TaylorValidityError>(m, "TaylorValidityError", PyExc_ArithmeticError);
    py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ArithmeticError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    m.def("bessel_j0", &bessel_j0, py::arg("x"));
    m.def("gauss_q", &gauss_q, py::arg("x"));
    m.def("log_gauss_q", &log_gauss_q, py::arg("x"));

    m.def("ef11", &moment<ef11>, MOMENT_ARGS);
    m.def("ef12", &moment<ef12>, MOMENT_ARGS);
    m.def("mu_omega", &moment<mu_omega>, MOMENT_ARGS);
    m.def("expected_trace2", &moment<expected_trace2>, MOMENT_ARGS);
    m.def(
        "expected_trace3",
        [](int n_t, int n_r, double kd, const std::string &axis) { return expected_trace3(moment_config(n_t, n_r, kd, axis)); },
        MOMENT_ARGS, "E Tr W^3, or None where no closed form exists.");
    m.def("var_f1nT", &moment<var_f1nT>, MOMENT_ARGS);
    m.def("var_f1", &moment<var_f1>, MOMENT_ARGS);
    m.def(
        "cov_f_cross", [](int n_t, int n_r, double kd, const std::string &axis) { return cov_f_cross(moment_config(n_t, n_r, kd, axis)); },
        MOMENT_ARGS);
    m.def("correlation_cf", &moment<correlation_cf>, MOMENT_ARGS);

    m.def(
        "capacity_stats_taylor",
        [](double trace2, double trace3, double snr) {
            const CapacityStats s = capacity_stats(TraceMoments{1.0, trace2, trace3}, snr);
            return py::make_tuple(s.mean, s.variance);
        },
        py::arg("trace2"), py::arg("trace3"), py::arg("snr"), "(mean, variance) from third-order Taylor moments.");
    m.def(
        "mean_capacity_taylor", [](double t2, double t3, double snr) { return mean_capacity_taylor({1.0, t2, t3}, snr); },
        py::arg("trace2"), py::arg("trace3"), py::arg("snr"));
    m.def(
        "second_moment_capacity_taylor",
        [](double t2, double t3, double snr) { return second_moment_capacity_taylor({1.0, t2, t3}, snr); }, py::arg("trace2"),
        py::arg("trace3"), py::arg("snr"));
    m.def(
        "outage_gaussian",
        [](double mean, double variance, const std::vector<double> &r_grid) {
            return p_out(outage_curve(CapacityStats{mean, variance, 1.0, MomentSource::MonteCarloEstimated}, r_grid));
        },
        py::arg("mean"), py::arg("variance"), py::arg("r_grid"));

    m.def(
        "gram_matrix",
        [](const std::vector<double> &theta, const std::vector<double> &phi, int n_r, double kd, const std::string &axis) {
            if (theta.size() != phi.size())
                throw ArgumentError("theta and phi must have the same length");
            AngleDraw draw;
            for (std::size_t i = 0; i < theta.size(); ++i)
                draw.directions.push_back({theta[i], phi[i]});
            return Eigen::MatrixXcd(gram_normalized(build_channel(ArrayGeometry(n_r, kd, parse_axis(axis)), draw)));
        },
        py::arg("theta"), py::arg("phi"), py::arg("n_r"), py::arg("kd") = std::numbers::pi, py::arg("axis") = "y");
    m.def(
        "eigenvalues", [](const Eigen::MatrixXcd &W) { return spectrum(W).eigenvalues; }, py::arg("w"));
    m.def(
        "capacity", [](const std::vector<double> &eigenvalues, double snr) { return capacity(Spectrum{eigenvalues}, snr); },
        py::arg("eigenvalues"), py::arg("snr"));

    m.def(
        "char_poly_from_traces", [](const std::vector<double> &traces) { return char_poly_from_traces(traces).coefficients; },
        py::arg("traces"));
    m.def(
        "trace_sequence", [](const Eigen::MatrixXcd &A) { return trace_sequence(A); }, py::arg("a"));
    m.def(
        "real_roots", [](const std::vector<double> &coefficients) { return real_roots(CharPoly{coefficients}); },
        py::arg("coefficients"));

    m.def(
        "run_statistic_mc",
        [](const std::string &statistic, int n_t, int n_r, double kd, const std::string &axis, double snr_db, std::uint64_t trials,
           std::uint64_t seed, unsigned workers, const std::string &theta_law) {
            const ExperimentConfig c = experiment(n_t, n_r, kd, axis, snr_db, trials, seed, workers, theta_law);
            const Statistic st = parse_statistic(statistic);
            SampleSet s;
            {
                py::gil_scoped_release release;
                s = run_statistic_mc(c, st);
            }
            return to_array(std::move(s.values));
        },
        py::arg("statistic"), EXPERIMENT_ARGS,
        "Per-trial samples of capacity, trace-w2, trace-w3, f1, f2 or omega as a NumPy array.");
    m.def(
        "empirical_outage",
        [](const std::vector<double> &capacities, const std::vector<double> &r_grid) {
            SampleSet s{capacities, "", Statistic::Capacity};
            return p_out(empirical_outage(s, r_grid));
        },
        py::arg("capacities"), py::arg("r_grid"));
    m.def(
        "anderson_darling_normal", [](const std::vector<double> &values) { return anderson_darling_normal(values); },
        py::arg("values"));

    m.def(
        "verify_json",
        [](int n_t, int n_r, std::uint64_t trials, std::uint64_t seed) {
            VerifyOptions o;
            o.n_T = n_t;
            o.n_R = n_r;
            o.trials = trials;
            o.master_seed = seed;
            py::gil_scoped_release release;
            return run_verification(o).to_json().dump();
        },
        py::arg("n_t") = 8, py::arg("n_r") = 8, py::arg("trials") = 100000, py::arg("seed") = 42);
}
