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

#include "losmimo/moments.hpp"

#include "losmimo/errors.hpp"
#include "losmimo/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace losmimo
{
    namespace
    {
        // cf(s kd) for s = 0..max_harmonic, cached once per call.
        std::vector<double> cf_table(const MomentConfig &cfg, int max_harmonic)
        {
            std::vector<double> table(static_cast<std::size_t>(max_harmonic) + 1);
            for (int s = 0; s <= max_harmonic; ++s)
                table[static_cast<std::size_t>(s)] = direction_cf(s * cfg.kd, cfg.axis);
            return table;
        }

        double weight(int s, const MomentConfig &cfg)
        {
            return static_cast<double>(cfg.n_R - s);
        }

        void require_harmonic(int s, const MomentConfig &cfg, const char *what)
        {
            if (s < 1 || s > cfg.n_R - 1)
                throw ArgumentError(std::string(what) + ": harmonic index must lie in [1, n_R - 1]");
        }

        double j0_pow(double x, int p)
        {
            return std::pow(bessel_j0(x), p);
        }
    }

    void MomentConfig::validate() const
    {
        if (n_T < 1)
            throw ArgumentError("MomentConfig: n_T must be >= 1");
        if (n_R < 1)
            throw ArgumentError("MomentConfig: n_R must be >= 1");
        if (!std::isfinite(kd) || kd <= 0.0)
            throw ArgumentError("MomentConfig: kd must be finite and > 0");
    }

    double direction_cf(double x, Axis axis)
    {
        if (axis == Axis::Y)
        {
            const double j = bessel_j0(0.5 * x);
            return j * j;
        }
        return bessel_j0(x);
    }

    double pair_kernel(int s, const MomentConfig &cfg)
    {
        const double c = direction_cf(s * cfg.kd, cfg.axis);
        return c * c;
    }

    double ef11(const MomentConfig &cfg)
    {
        cfg.validate();
        return 0.5 * static_cast<double>(cfg.n_R) * static_cast<double>(cfg.n_R - 1);
    }

    double ef12(const MomentConfig &cfg)
    {
        cfg.validate();
        double sum = 0.0;
        for (int s = 1; s < cfg.n_R; ++s)
            sum += weight(s, cfg) * pair_kernel(s, cfg);
        return sum;
    }

    double mu_omega(const MomentConfig &cfg)
    {
        const double nt = cfg.n_T;
        return nt * ef11(cfg) + (nt * nt - nt) * ef12(cfg);
    }

    double expected_trace2(const MomentConfig &cfg)
    {
        const double nt = cfg.n_T;
        const double nr = cfg.n_R;
        const double numerator = nr * nr * nt + nr * nt * (nt - 1.0) + 2.0 * nt * (nt - 1.0) * ef12(cfg);
        return numerator / ((nr * nt) * (nr * nt));
    }

    Trace3Decomposition trace3_decomposition(const MomentConfig &cfg)
    {
        cfg.validate();
        if (cfg.axis != Axis::Z)
            throw ArgumentError("trace3_decomposition: closed form is provided for z-axis arrays only");

        const int n_R = cfg.n_R;
        const double nt = cfg.n_T;
        const double nr = n_R;
        const auto cf = cf_table(cfg, 2 * n_R);

        Trace3Decomposition d;
        d.scale = std::pow(nr * nt, 3);
        d.all_equal = nt * nr * nr * nr;
        d.two_equal_constant = 3.0 * nr * nr * nt * (nt - 1.0);
        d.two_equal_cosine = 6.0 * nr * nt * (nt - 1.0) * ef12(cfg);
        d.distinct_aligned = nr * nt * (nt - 1.0) * (nt - 2.0);

        // Three distinct satellites: E[G_ij G_jl G_li] = sum over element
        // triples (a, b, c) of cf(u) cf(v) cf(u + v) with u = a - b and
        // v = b - c. The number of triples with given lags is n_R minus the
        // span of the offsets {0, v, u + v}.
        double lagged = 0.0;
        for (int u = -(n_R - 1); u <= n_R - 1; ++u)
        {
            for (int v = -(n_R - 1); v <= n_R - 1; ++v)
            {
                if (u == 0 && v == 0)
                    continue;
                const int hi = std::max({0, v, u + v});
                const int lo = std::min({0, v, u + v});
                const int count = n_R - (hi - lo);
                if (count <= 0)
                    continue;
                lagged += count * cf[static_cast<std::size_t>(std::abs(u))] * cf[static_cast<std::size_t>(std::abs(v))] *
                          cf[static_cast<std::size_t>(std::abs(u + v))];
            }
        }
        d.distinct_lagged = nt * (nt - 1.0) * (nt - 2.0) * lagged;
        return d;
    }

    std::optional<double> expected_trace3(const MomentConfig &cfg)
    {
        cfg.validate();
        if (cfg.axis != Axis::Z)
            return std::nullopt;
        return trace3_decomposition(cfg).normalized();
    }

    std::string_view trace3_unavailable_reason(const MomentConfig &cfg)
    {
        if (cfg.axis == Axis::Z)
            return {};
        return "no closed form for y-axis arrays; use the Monte Carlo estimate of Tr W^3";
    }

    HalfArgumentSeries half_argument_series(const MomentConfig &cfg)
    {
        cfg.validate();
        const int n_R = cfg.n_R;
        const double nt = cfg.n_T;
        const double nr = n_R;
        const double kd = cfg.kd;

        HalfArgumentSeries out;

        double kernel_sum = 0.0;
        for (int s = 1; s < n_R; ++s)
            kernel_sum += (nr - s) * j0_pow(s * kd / 2.0, 2);
        out.trace2 = (nr * nr * nt + nr * nt * (nt - 1.0) + 2.0 * nt * (nt - 1.0) * kernel_sum) / std::pow(nr * nt, 2);

        auto rising3 = [](double base) { return base * (base + 1.0) * (base + 2.0); };

        auto &t = out.trace3_terms;
        t[0] = nr * nr * nr * nt;
        t[1] = 3.0 * nr * nr * nt * (nt - 1.0);
        t[2] = nr * nt * (nt - 1.0) * (nt - 2.0);
        for (int s = 1; s < n_R; ++s)
        {
            t[3] += 6.0 * nr * (nr - s) * nt * (nt - 1.0) * j0_pow(s * kd / 2.0, 4);
            t[4] += 6.0 * (nt - 2.0) * rising3(s) * j0_pow((nr - s) * kd / 2.0, 2);
        }
        for (int s = 1; s <= (n_R - 1) / 2; ++s)
            t[5] += 6.0 * (nt - 2.0) * rising3(nr - 2.0 * s) * j0_pow(s * kd / 2.0, 4) * bessel_j0(s * kd);
        for (int s = 1; s < n_R; ++s)
        {
            const double positive_part = std::max(0.0, nr - 2.0 * s);
            for (int u = 1; u <= n_R - 2 * s; ++u)
            {
                t[6] += 6.0 * positive_part * (nt - 2.0) * rising3(2.0 * nr - 2.0 * u - 2.0 * s + 2.0) *
                        bessel_j0(s * kd / 2.0) * bessel_j0((s + u) * kd / 2.0) * bessel_j0((2.0 * s + u) * kd / 2.0);
            }
        }
        out.trace3_scale = std::pow(nr * nt, 3);
        return out;
    }

    double type_a_expectation(int s, const MomentConfig &cfg)
    {
        cfg.validate();
        require_harmonic(s, cfg, "type_a_expectation");
        const double c1 = direction_cf(s * cfg.kd, cfg.axis);
        const double c2 = direction_cf(2.0 * s * cfg.kd, cfg.axis);
        return 0.5 * c1 * c1 * (1.0 + c2);
    }

    double type_b_expectation(int s1, int s2, const MomentConfig &cfg)
    {
        cfg.validate();
        require_harmonic(s1, cfg, "type_b_expectation");
        require_harmonic(s2, cfg, "type_b_expectation");
        if (s1 == s2)
            throw ArgumentError("type_b_expectation: s1 == s2 is the type A case");
        const double kd = cfg.kd;
        return 0.5 * direction_cf(s1 * kd, cfg.axis) * direction_cf(s2 * kd, cfg.axis) *
               (direction_cf((s1 + s2) * kd, cfg.axis) + direction_cf(std::abs(s1 - s2) * kd, cfg.axis));
    }

    double red_sum(const MomentConfig &cfg)
    {
        cfg.validate();
        double sum = 0.0;
        for (int s = 1; s < cfg.n_R; ++s)
            sum += weight(s, cfg) * weight(s, cfg) * type_a_expectation(s, cfg);
        return sum;
    }

    double blue_sum(const MomentConfig &cfg, TypeBExpectation type_b)
    {
        cfg.validate();
        double sum = 0.0;
        for (int s2 = 1; s2 < cfg.n_R; ++s2)
            for (int s1 = 1; s1 < cfg.n_R; ++s1)
                if (s1 != s2)
                    sum += weight(s1, cfg) * weight(s2, cfg) * type_b(s1, s2, cfg);
        return sum;
    }

    double shared_pair_covariance(const MomentConfig &cfg, TypeBExpectation type_b)
    {
        const double mean = ef12(cfg);
        return red_sum(cfg) + blue_sum(cfg, type_b) - mean * mean;
    }

    double cov_f_cross(const MomentConfig &cfg, TypeBExpectation type_b)
    {
        cfg.validate();
        if (cfg.n_T < 2)
            throw ArgumentError("cov_f_cross: n_T must be >= 2");
        if (cfg.n_R < 2)
            return 0.0;
        return cfg.n_T * shared_pair_covariance(cfg, type_b);
    }

    double second_moment_f(const MomentConfig &cfg)
    {
        cfg.validate();
        const auto cf = cf_table(cfg, 2 * cfg.n_R);
        auto kernel = [&](int s) { return cf[static_cast<std::size_t>(s)] * cf[static_cast<std::size_t>(s)]; };

        // E cos(a x) cos(b x) = (kernel(a + b) + kernel(|a - b|)) / 2
        double sum = 0.0;
        for (int s2 = 1; s2 < cfg.n_R; ++s2)
            for (int s1 = 1; s1 < cfg.n_R; ++s1)
                sum += weight(s1, cfg) * weight(s2, cfg) * 0.5 * (kernel(s1 + s2) + kernel(std::abs(s1 - s2)));
        return sum;
    }

    double var_f1nT(const MomentConfig &cfg)
    {
        cfg.validate();
        if (cfg.n_R < 2)
            return 0.0;
        const double mean = ef12(cfg);
        return second_moment_f(cfg) - mean * mean;
    }

    double var_f1(const MomentConfig &cfg)
    {
        cfg.validate();
        if (cfg.n_T < 2)
            throw ArgumentError("var_f1: n_T must be >= 2");
        if (cfg.n_R < 2)
            return 0.0;
        const double nt = cfg.n_T;
        return nt * var_f1nT(cfg) + 0.5 * nt * (nt - 1.0) * shared_pair_covariance(cfg);
    }

    double correlation_cf(const MomentConfig &cfg)
    {
        cfg.validate();
        if (cfg.n_T < 2 || cfg.n_R < 2)
            throw ArgumentError("correlation_cf: n_T and n_R must both be >= 2");
        const double denominator = second_moment_f(cfg);
        if (!(denominator > 0.0))
            throw DegenerateError("correlation_cf: zero denominator");
        return shared_pair_covariance(cfg) / denominator;
    }
}
