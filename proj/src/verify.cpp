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

#include "losmimo/verify.hpp"

#include "losmimo/errors.hpp"
#include "losmimo/moments.hpp"
#include "losmimo/montecarlo.hpp"
#include "losmimo/outage.hpp"
#include "losmimo/rng.hpp"
#include "losmimo/specfun.hpp"
#include "losmimo/spectrum_tools.hpp"

#include <algorithm>
#include <cmath>

namespace losmimo
{
    namespace
    {
        constexpr double kSigmas = 3.0;

        double flipped_type_b(int s1, int s2, const MomentConfig &cfg) { return -type_b_expectation(s1, s2, cfg); }

        CheckResult within_sigmas(std::string name, double measured, double std_error, double expected)
        {
            CheckResult r;
            r.name = std::move(name);
            r.statistical = true;
            r.measured = measured;
            r.expected = expected;
            r.tolerance = kSigmas;
            if (std_error > 0.0)
                r.deviation = std::fabs(measured - expected) / std_error;
            else
                r.deviation = measured == expected ? 0.0 : INFINITY;
            r.passed = r.deviation <= kSigmas;
            return r;
        }

        CheckResult within_abs(std::string name, double measured, double expected, double tolerance, bool statistical)
        {
            CheckResult r;
            r.name = std::move(name);
            r.statistical = statistical;
            r.measured = measured;
            r.expected = expected;
            r.deviation = std::fabs(measured - expected);
            r.tolerance = tolerance;
            r.passed = r.deviation <= tolerance;
            return r;
        }

        CheckResult skipped(std::string name, std::string why)
        {
            CheckResult r;
            r.name = std::move(name);
            r.passed = true;
            r.note = "skipped: " + why;
            return r;
        }

        double j0_series(double x)
        {
            const double q = -0.25 * x * x;
            double term = 1.0;
            double sum = 1.0;
            for (int k = 1; k < 60; ++k)
            {
                term *= q / (static_cast<double>(k) * k);
                sum += term;
            }
            return sum;
        }

        CheckResult char_poly_round_trip(std::uint64_t seed)
        {
            double worst = 0.0;
            for (int m = 0; m < 100; ++m)
            {
                const int n = 1 + m % 8;
                RandomStream rng(seed, static_cast<std::uint64_t>(m), 5);
                Eigen::MatrixXcd B(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        B(i, j) = Complex(rng.normal(), rng.normal());
                const Eigen::MatrixXcd A = B * B.adjoint() / static_cast<double>(n);
                const Spectrum spec = spectrum(A);
                const std::vector<double> roots = real_roots(char_poly_from_traces(trace_sequence(A)));
                for (std::size_t i = 0; i < roots.size(); ++i)
                    worst = std::max(worst, std::fabs(roots[i] - spec.eigenvalues[i]));
            }
            CheckResult r = within_abs("char-poly-round-trip", worst, 0.0, 1e-6, false);
            r.note = "max |root - eigenvalue| over 100 random PSD matrices, n <= 8";
            return r;
        }
    }

    Fault parse_fault(std::string_view text)
    {
        if (text.empty() || text == "none")
            return Fault::None;
        if (text == "type-b-sign")
            return Fault::TypeBSign;
        throw ArgumentError("unknown fault '" + std::string(text) + "'");
    }

    bool VerifyReport::all_passed() const noexcept
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
    }

    nlohmann::json VerifyReport::to_json() const
    {
        nlohmann::json list = nlohmann::json::array();
        for (const auto &c : checks)
        {
            nlohmann::json j{{"name", c.name},
                             {"passed", c.passed},
                             {"measured", c.measured},
                             {"expected", c.expected},
                             {"deviation", std::isfinite(c.deviation) ? nlohmann::json(c.deviation) : nlohmann::json(nullptr)},
                             {"tolerance", c.tolerance},
                             {"kind", c.statistical ? (low_power ? "statistical LOW-POWER" : "statistical") : "exact"}};
            if (!c.note.empty())
                j["note"] = c.note;
            list.push_back(std::move(j));
        }
        return nlohmann::json{{"checks", std::move(list)}, {"low_power", low_power}, {"passed", all_passed()}};
    }

    VerifyReport run_verification(const VerifyOptions &options)
    {
        VerifyReport report;
        report.low_power = options.trials < kLowPowerTrials;

        ExperimentConfig cfg;
        cfg.n_T = options.n_T;
        cfg.n_R = options.n_R;
        cfg.kd = options.kd;
        cfg.axis = Axis::Y;
        cfg.snr_db = options.snr_db;
        cfg.trials = std::max<std::uint64_t>(options.trials, 2);
        cfg.master_seed = options.master_seed;
        cfg.workers = options.workers;
        cfg.validate();
        const MomentConfig mc = cfg.moment_config();
        const double nt = cfg.n_T;

        // y axis: trace, Omega and the row statistics share one run
        std::vector<Statistic> wanted{Statistic::Capacity, Statistic::TraceW2, Statistic::Omega};
        const bool rows = cfg.n_T >= 2 && cfg.n_R >= 2;
        if (rows)
        {
            wanted.push_back(Statistic::F1);
            wanted.push_back(Statistic::F2);
        }
        const std::vector<SampleSet> y = run_statistics_mc(cfg, wanted);

        const SampleSummary t2 = summarize(y[1].values);
        report.checks.push_back(within_sigmas("expected-trace2-y", t2.mean, t2.std_error, expected_trace2(mc)));

        const SampleSummary om = summarize(y[2].values);
        report.checks.push_back(within_sigmas("mu-omega", om.mean, om.std_error, mu_omega(mc)));

        if (rows)
        {
            const SampleSummary f1 = summarize(y[3].values);
            report.checks.push_back(within_sigmas("var-f1nT", f1.variance / nt, f1.var_std_error / nt, var_f1nT(mc)));

            const TypeBExpectation type_b = options.fault == Fault::TypeBSign ? &flipped_type_b : &type_b_expectation;
            const CovarianceEstimate cov = covariance(y[3].values, y[4].values);
            CheckResult c = within_sigmas("cov-f-cross", cov.covariance, cov.std_error, cov_f_cross(mc, type_b));
            if (options.fault != Fault::None)
                c.note = "fault injected: type-b-sign";
            report.checks.push_back(std::move(c));

            report.checks.push_back(within_abs("correlation-cf", cov.correlation, correlation_cf(mc), 0.02, true));
        }
        else
        {
            for (const char *name : {"var-f1nT", "cov-f-cross", "correlation-cf"})
                report.checks.push_back(skipped(name, "needs n_T >= 2 and n_R >= 2"));
        }

        // z axis: both trace moments have closed forms
        {
            ExperimentConfig z = cfg;
            z.axis = Axis::Z;
            const Statistic zs[] = {Statistic::TraceW2, Statistic::TraceW3};
            const std::vector<SampleSet> zr = run_statistics_mc(z, zs);
            const MomentConfig zm = z.moment_config();
            const SampleSummary z2 = summarize(zr[0].values);
            const SampleSummary z3 = summarize(zr[1].values);
            report.checks.push_back(within_sigmas("expected-trace2-z", z2.mean, z2.std_error, expected_trace2(zm)));
            report.checks.push_back(within_sigmas("expected-trace3-z", z3.mean, z3.std_error, *expected_trace3(zm)));
        }

        report.checks.push_back(char_poly_round_trip(options.master_seed));

        {
            double worst = 0.0;
            for (double x = -8.0; x <= 8.0; x += 0.25)
                worst = std::max(worst, std::fabs(bessel_j0(x) - j0_series(x)));
            CheckResult r = within_abs("bessel-j0-series", worst, 0.0, 1e-12, false);
            r.note = "max error on [-8, 8] against the power series";
            report.checks.push_back(std::move(r));
            report.checks.push_back(within_abs("gauss-q-symmetry", gauss_q(1.5) + gauss_q(-1.5), 1.0, 1e-15, false));
        }

        {
            const std::uint64_t n = std::max<std::uint64_t>(cfg.trials, 2);
            std::vector<double> normals(n);
            RandomStream rng(options.master_seed, 0, 7);
            for (double &v : normals)
                v = rng.normal();
            CheckResult r = within_abs("normality-calibration", anderson_darling_normal(normals), 0.0, kAndersonDarling1Percent, true);
            r.note = "Anderson-Darling A*^2 of harness normal variates";
            report.checks.push_back(std::move(r));
        }

        {
            const SampleSet &cap = y[0];
            const CapacityStats stats = capacity_stats(cap.values, cfg.snr_linear());
            if (stats.variance > 0.0)
            {
                const std::vector<double> grid = central_grid(cap.values, 200);
                const double gap = sup_gap(outage_curve(stats, grid), empirical_outage(cap, grid));
                CheckResult r = within_abs("gaussian-outage-gap", gap, 0.0, 0.05, true);
                r.note = "sup |gaussian - empirical| over the central 99.9% of capacities";
                report.checks.push_back(std::move(r));
            }
            else
            {
                report.checks.push_back(skipped("gaussian-outage-gap", "capacity is deterministic"));
            }
        }

        return report;
    }
}
