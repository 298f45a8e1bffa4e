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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "losmimo/errors.hpp"
#include "losmimo/moments.hpp"
#include "losmimo/montecarlo.hpp"

#include "../common/oracles.hpp"

#include <cmath>
#include <functional>
#include <numbers>

using namespace losmimo;
using std::numbers::pi;

namespace
{
    MomentConfig cfg(int n_T, int n_R, double kd = pi, Axis axis = Axis::Y) { return MomentConfig{n_T, n_R, kd, axis}; }

    struct Estimate
    {
        double mean;
        double se;
    };

    // Mean of g over n independent draws of k direction cosines.
    Estimate mc_mean(int k, Axis axis, std::uint64_t seed, int n, const std::function<double(const double *)> &g)
    {
        const ArrayGeometry geom(2, pi, axis);
        double s = 0.0, s2 = 0.0;
        std::vector<double> psi(static_cast<std::size_t>(k));
        for (int t = 0; t < n; ++t)
        {
            RandomStream rng(seed, static_cast<std::uint64_t>(t));
            const AngleDraw d = sample_angles(rng, k);
            for (int i = 0; i < k; ++i)
                psi[static_cast<std::size_t>(i)] = direction_cosine(geom, d.directions[static_cast<std::size_t>(i)]);
            const double v = g(psi.data());
            s += v;
            s2 += v * v;
        }
        const double mean = s / n;
        return {mean, std::sqrt((s2 / n - mean * mean) / n)};
    }

    double j4(double x)
    {
        const double j = oracle::j0(x);
        return j * j * j * j;
    }
}

TEST_CASE("characteristic function of the direction cosine")
{
    for (double x : {0.0, 0.7, 3.0, 11.0})
    {
        CHECK(direction_cf(x, Axis::Y) == doctest::Approx(oracle::j0(x / 2) * oracle::j0(x / 2)).epsilon(1e-13));
        CHECK(direction_cf(x, Axis::Z) == doctest::Approx(oracle::j0(x)).epsilon(1e-13));
    }
    CHECK(pair_kernel(0, cfg(2, 4)) == 1.0);
    CHECK(pair_kernel(1, cfg(2, 4)) == doctest::Approx(j4(pi / 2)).epsilon(1e-13));
}

TEST_CASE("ef11 and ef12")
{
    CHECK(ef11(cfg(3, 1)) == 0.0);
    CHECK(ef11(cfg(3, 2)) == 1.0);
    CHECK(ef11(cfg(3, 8)) == 28.0);
    CHECK(ef12(cfg(3, 1)) == 0.0);
    // J0(pi/2)^4 = 0.04963322202978103786
    CHECK(ef12(cfg(2, 2)) == doctest::Approx(0.049633222029781038).epsilon(1e-13));

    const auto e = mc_mean(2, Axis::Y, 21, 1000000, [](const double *p) { return std::cos(pi * (p[0] - p[1])); });
    CHECK(std::fabs(e.mean - ef12(cfg(2, 2))) < 3.0 * e.se);
}

TEST_CASE("mu_omega and expected_trace2")
{
    CHECK(mu_omega(cfg(1, 6)) == ef11(cfg(1, 6)));
    CHECK(mu_omega(cfg(2, 1)) == 0.0);
    // 2 + 2 J0(pi/2)^4 = 2.09926644405956207573
    CHECK(mu_omega(cfg(2, 2)) == doctest::Approx(2.0992664440595621).epsilon(1e-13));
    // (8 + 4 + 4 J0(pi/2)^4) / 16 = 0.76240830550744525947
    CHECK(expected_trace2(cfg(2, 2)) == doctest::Approx(0.76240830550744526).epsilon(1e-13));
    CHECK(expected_trace2(cfg(1, 9)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(expected_trace2(cfg(7, 1)) == doctest::Approx(1.0).epsilon(1e-15));

    for (int nt : {2, 4, 8})
        for (int nr : {2, 4, 8})
            for (double kd : {pi / 2, pi})
                for (Axis ax : {Axis::Y, Axis::Z})
                {
                    const double t2 = expected_trace2(cfg(nt, nr, kd, ax));
                    CHECK(t2 >= 1.0 / nt);
                    CHECK(t2 <= 1.0);
                }
}

TEST_CASE("trace moments against Monte Carlo")
{
    ExperimentConfig ec;
    ec.trials = 200000;
    ec.master_seed = 5;
    for (auto [nt, nr] : {std::pair{2, 2}, std::pair{4, 4}})
        for (Axis ax : {Axis::Y, Axis::Z})
        {
            ec.n_T = nt;
            ec.n_R = nr;
            ec.axis = ax;
            const Statistic st[] = {Statistic::TraceW2, Statistic::TraceW3};
            const auto sets = run_statistics_mc(ec, st);
            const auto t2 = summarize(sets[0].values);
            CAPTURE(nt);
            CHECK(std::fabs(t2.mean - expected_trace2(ec.moment_config())) < 3.0 * t2.std_error);
            if (ax == Axis::Z)
            {
                const auto t3 = summarize(sets[1].values);
                CHECK(std::fabs(t3.mean - *expected_trace3(ec.moment_config())) < 3.0 * t3.std_error);
            }
        }
}

TEST_CASE("third moment availability")
{
    CHECK_FALSE(expected_trace3(cfg(2, 2, pi, Axis::Y)).has_value());
    CHECK_FALSE(trace3_unavailable_reason(cfg(2, 2, pi, Axis::Y)).empty());
    CHECK(*expected_trace3(cfg(1, 5, pi, Axis::Z)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(*expected_trace3(cfg(4, 1, pi, Axis::Z)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(trace3_decomposition(cfg(2, 2, pi, Axis::Y)), ArgumentError);

    const auto d = trace3_decomposition(cfg(3, 4, pi, Axis::Z));
    CHECK(d.all_equal == 3.0 * 64.0);
    CHECK(d.scale == 12.0 * 12.0 * 12.0);
}

TEST_CASE("seven-term half-argument series stays a diagnostic")
{
    // The literal series differs from the exact decomposition; it is kept
    // for reporting and must at least reduce to 1 when n_T = 1.
    const auto s = half_argument_series(cfg(1, 4, pi, Axis::Z));
    CHECK(std::isfinite(s.trace3()));
    CHECK(s.trace2 == doctest::Approx(expected_trace2(cfg(1, 4, pi, Axis::Z))));
}

TEST_CASE("type A and type B expectations")
{
    // 1/2 J0(pi/2)^4 (1 + J0(pi)^2) = 0.02711371849119826541
    CHECK(type_a_expectation(1, cfg(2, 2)) == doctest::Approx(0.027113718491198265).epsilon(1e-13));
    // 1/2 J0(pi/2)^2 J0(pi)^2 (J0(3pi/2)^2 + J0(pi/2)^2) = 0.00302588017863993541
    CHECK(type_b_expectation(1, 2, cfg(2, 3)) == doctest::Approx(0.0030258801786399354).epsilon(1e-12));
    CHECK(type_b_expectation(1, 2, cfg(2, 5)) == type_b_expectation(2, 1, cfg(2, 5)));
    CHECK(type_a_expectation(1, cfg(2, 2, 1e-12)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(type_b_expectation(1, 2, cfg(2, 3, 1e-12)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(type_b_expectation(2, 2, cfg(2, 4)), ArgumentError);
    CHECK_THROWS_AS(type_a_expectation(0, cfg(2, 4)), ArgumentError);
    CHECK_THROWS_AS(type_a_expectation(4, cfg(2, 4)), ArgumentError);

    // Monte Carlo: two pair terms sharing satellite 0
    for (int s : {1, 2})
        for (double kd : {pi / 2, pi})
        {
            const MomentConfig c = cfg(2, 3, kd);
            const auto a = mc_mean(3, Axis::Y, 31 + static_cast<std::uint64_t>(s), 1000000, [&](const double *p) {
                return std::cos(s * kd * (p[0] - p[1])) * std::cos(s * kd * (p[0] - p[2]));
            });
            CAPTURE(s);
            CAPTURE(kd);
            CHECK(std::fabs(a.mean - type_a_expectation(s, c)) < 3.0 * a.se);
        }
    const auto b = mc_mean(3, Axis::Y, 41, 1000000,
                           [](const double *p) { return std::cos(pi * (p[0] - p[1])) * std::cos(2 * pi * (p[0] - p[2])); });
    CHECK(std::fabs(b.mean - type_b_expectation(1, 2, cfg(2, 3))) < 3.0 * b.se);
}

TEST_CASE("row covariance and variances")
{
    CHECK(cov_f_cross(cfg(3, 1)) == 0.0);
    CHECK_THROWS_AS(cov_f_cross(cfg(1, 4)), ArgumentError);
    // 2 (type_a(1) - ef12^2) = 0.04930052352428144736
    CHECK(cov_f_cross(cfg(2, 2)) == doctest::Approx(0.049300523524281447).epsilon(1e-12));
    // 1/2 (1 + J0(pi)^4) - J0(pi/2)^8 = 0.50182052577038557324
    CHECK(var_f1nT(cfg(2, 2)) == doctest::Approx(0.50182052577038557).epsilon(1e-13));
    CHECK(var_f1nT(cfg(2, 1)) == 0.0);
    CHECK(var_f1(cfg(2, 1)) == 0.0);

    double prev = 0.0;
    for (int nr : {2, 4, 8, 16})
    {
        const double v = var_f1(cfg(2, nr));
        CHECK(v > prev);
        prev = v;
    }
    const MomentConfig c = cfg(4, 4);
    CHECK(var_f1(c) == doctest::Approx(4 * var_f1nT(c) + 6 * cov_f_cross(c) / 4).epsilon(1e-14));
}

TEST_CASE("row correlation")
{
    for (int nt : {2, 4, 8})
        for (int nr : {2, 4, 8})
            for (double kd : {pi / 2, pi})
            {
                const double r = correlation_cf(cfg(nt, nr, kd));
                CHECK(r >= -1.0);
                CHECK(r <= 1.0);
            }
    CHECK_THROWS_AS(correlation_cf(cfg(1, 4)), ArgumentError);

    // As kd -> 0 every pair term is the same constant, so the shared-pair
    // covariance vanishes and with it the ratio.
    CHECK(std::fabs(correlation_cf(cfg(4, 4, 1e-9))) < 1e-6);

    ExperimentConfig ec;
    ec.n_T = 4;
    ec.n_R = 4;
    ec.trials = 300000;
    const Statistic rows[] = {Statistic::F1, Statistic::F2};
    const auto sets = run_statistics_mc(ec, rows);
    const auto cov = covariance(sets[0].values, sets[1].values);
    CHECK(std::fabs(cov.correlation - correlation_cf(ec.moment_config())) < 0.02);
    CHECK(std::fabs(cov.covariance - cov_f_cross(ec.moment_config())) < 3.0 * cov.std_error);
    const auto f1 = summarize(sets[0].values);
    CHECK(std::fabs(f1.variance / 4 - var_f1nT(ec.moment_config())) < 3.0 * f1.var_std_error / 4);
}
