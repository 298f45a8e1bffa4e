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

#ifndef LOSMIMO_MOMENTS_HPP
#define LOSMIMO_MOMENTS_HPP

#include "losmimo/array_geometry.hpp"

#include <array>
#include <numbers>
#include <optional>
#include <string_view>

/// Closed-form expectations over random satellite directions.
///
/// Everything here is a finite sum of Bessel J0 products built from one
/// primitive, the characteristic function of the direction cosine psi:
///
///     cf(x) = E cos(x psi) = J0(x/2)^2   (y axis, theta ~ U[0,pi], phi ~ U[0,2pi])
///                          = J0(x)       (z axis, same law)
///
/// For two independent satellites the pair kernel is
/// E cos(s kd (psi_i - psi_j)) = cf(s kd)^2, which is J0(s kd / 2)^4 on the
/// y axis. The per-pair cosine sum
///
///     f(gamma) = sum_{s=1}^{n_R-1} (n_R - s) cos(s kd gamma)
///
/// is the building block of Tr (H^H H)^2 = n_T^2 n_R + 2 Omega with
/// Omega = sum_{i,j} f(psi_i - psi_j).
namespace losmimo
{
    struct MomentConfig
    {
        int n_T = 1;
        int n_R = 1;
        double kd = std::numbers::pi;
        Axis axis = Axis::Y;

        /// Throws ArgumentError unless n_T >= 1, n_R >= 1 and kd is finite and positive.
        void validate() const;
    };

    /// E cos(x psi) for one satellite direction.
    double direction_cf(double x, Axis axis);

    /// E cos(s kd (psi_i - psi_j)) for two distinct satellites; 1 at s = 0.
    double pair_kernel(int s, const MomentConfig &cfg);

    /// E f(gamma_ii) = n_R (n_R - 1) / 2.
    double ef11(const MomentConfig &cfg);

    /// E f(gamma_ij), i != j.
    double ef12(const MomentConfig &cfg);

    /// E Omega = n_T ef11 + (n_T^2 - n_T) ef12.
    double mu_omega(const MomentConfig &cfg);

    /// E Tr W^2, W = H^H H / (n_R n_T).
    double expected_trace2(const MomentConfig &cfg);

    /// E Tr (H^H H)^3 split by how many of the three satellite indices in
    /// sum_{i,j,l} G_ij G_jl G_li coincide.
    struct Trace3Decomposition
    {
        double all_equal = 0.0;          // i = j = l: n_T n_R^3
        double two_equal_constant = 0.0; // two indices equal: 3 n_R^2 n_T (n_T-1)
        double two_equal_cosine = 0.0;   // 6 n_R n_T (n_T-1) sum_s (n_R-s) kernel(s)
        double distinct_aligned = 0.0;   // all distinct, zero phase lags: n_R n_T (n_T-1)(n_T-2)
        double distinct_lagged = 0.0;    // all distinct, remaining lag pairs (u, v)
        double scale = 1.0;              // (n_R n_T)^3

        double total() const noexcept
        {
            return all_equal + two_equal_constant + two_equal_cosine + distinct_aligned + distinct_lagged;
        }
        double normalized() const noexcept { return total() / scale; }
    };

    /// Exact third-moment decomposition. Provided for z-axis arrays only;
    /// throws ArgumentError for the y axis.
    Trace3Decomposition trace3_decomposition(const MomentConfig &cfg);

    /// E Tr W^3 for z-axis arrays. Returns nullopt for the y axis, where the
    /// third moment comes from the Monte Carlo estimator instead.
    std::optional<double> expected_trace3(const MomentConfig &cfg);

    /// Why expected_trace3 has no value for this configuration (empty if it has one).
    std::string_view trace3_unavailable_reason(const MomentConfig &cfg);

    /// Seven-term z-axis third-moment series in the half-argument J0
    /// convention, term by term (unnormalised), together with the matching
    /// half-argument second moment. The undefined factor (n_R - 2m)^+ in the
    /// last term is read as (n_R - 2s)^+. Kept as a comparison target for
    /// trace3_decomposition; see the verification report.
    struct HalfArgumentSeries
    {
        std::array<double, 7> trace3_terms{};
        double trace3_scale = 1.0;
        double trace2 = 0.0; // already normalised

        double trace3() const noexcept
        {
            double sum = 0.0;
            for (double t : trace3_terms)
                sum += t;
            return sum / trace3_scale;
        }
    };

    HalfArgumentSeries half_argument_series(const MomentConfig &cfg);

    /// E[cos(s kd gamma_ac) cos(s kd gamma_bc)] for distinct satellites a, b, c.
    double type_a_expectation(int s, const MomentConfig &cfg);

    /// E[cos(s1 kd gamma_ac) cos(s2 kd gamma_bc)], s1 != s2.
    double type_b_expectation(int s1, int s2, const MomentConfig &cfg);

    using TypeBExpectation = double (*)(int, int, const MomentConfig &);

    /// sum_s (n_R - s)^2 type_a(s): same-harmonic products.
    double red_sum(const MomentConfig &cfg);

    /// sum_{s1 != s2} (n_R - s1)(n_R - s2) type_b(s1, s2): cross-harmonic products.
    double blue_sum(const MomentConfig &cfg, TypeBExpectation type_b = &type_b_expectation);

    /// Cov(f(gamma_ac), f(gamma_bc)) for two pairs sharing exactly one satellite.
    double shared_pair_covariance(const MomentConfig &cfg, TypeBExpectation type_b = &type_b_expectation);

    /// Cov(F1, F2) = n_T * shared_pair_covariance. Requires n_T >= 2; zero for n_R < 2.
    double cov_f_cross(const MomentConfig &cfg, TypeBExpectation type_b = &type_b_expectation);

    /// E f(gamma)^2 for one pair of distinct satellites.
    double second_moment_f(const MomentConfig &cfg);

    /// Var f(gamma) for one pair of distinct satellites; zero for n_R < 2.
    double var_f1nT(const MomentConfig &cfg);

    /// n_T Var f + n_T (n_T - 1) / 2 * shared_pair_covariance. Requires n_T >= 2.
    double var_f1(const MomentConfig &cfg);

    /// shared_pair_covariance / second_moment_f. Requires n_T >= 2 and n_R >= 2;
    /// throws DegenerateError on a zero denominator.
    double correlation_cf(const MomentConfig &cfg);
}

#endif
