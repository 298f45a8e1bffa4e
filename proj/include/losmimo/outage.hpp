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

#ifndef LOSMIMO_OUTAGE_HPP
#define LOSMIMO_OUTAGE_HPP

#include <span>
#include <string_view>
#include <vector>

namespace losmimo
{
    /// Spectral power sums of W (or their expectations). Tr W is 1 for every
    /// normalised Gram matrix.
    struct TraceMoments
    {
        double trace1 = 1.0;
        double trace2 = 1.0;
        double trace3 = 1.0;
    };

    enum class MomentSource
    {
        AnalyticTaylor,
        MonteCarloEstimated
    };

    std::string_view to_string(MomentSource source);

    struct CapacityStats
    {
        double mean = 0.0;     // bits/s/Hz
        double variance = 0.0; // (bits/s/Hz)^2
        double snr = 0.0;      // linear
        MomentSource source = MomentSource::AnalyticTaylor;
    };

    enum class OutageMethod
    {
        GaussianAnalytic,
        GaussianMC,
        Empirical
    };

    std::string_view to_string(OutageMethod method);
    OutageMethod parse_outage_method(std::string_view text);

    struct OutagePoint
    {
        double r_th = 0.0;
        double p_out = 0.0;
        OutageMethod method = OutageMethod::Empirical;

        /// Complementary capacity distribution at r_th.
        double p_ccdf() const noexcept { return 1.0 - p_out; }
    };

    /// Third-order expansion of E sum_i log2(1 + snr lambda_i):
    /// (snr Tr W - snr^2 E Tr W^2 / 2 + snr^3 E Tr W^3 / 3) / ln 2.
    /// Only meaningful while snr * lambda_max stays well below one.
    double mean_capacity_taylor(const TraceMoments &moments, double snr);

    /// E C^2 to third order, using Tr W = 1: (snr^2 - snr^3 E Tr W^2) / ln^2 2.
    double second_moment_capacity_taylor(const TraceMoments &moments, double snr);

    /// Mean and variance from the Taylor moments. Throws TaylorValidityError
    /// when E C^2 - (E C)^2 comes out negative; with Tr W = 1 the truncation
    /// error is -snr^4 [(snr t3/3 - t2/2)^2 + 2 t3/3] / ln^2 2, so in practice
    /// this happens for every snr > 0 and callers should use sample moments.
    CapacityStats capacity_stats(const TraceMoments &moments, double snr);

    /// Sample mean and (population) variance of simulated capacities.
    CapacityStats capacity_stats(std::span<const double> capacity_samples, double snr);

    /// Q((mean - r_th) / sqrt(variance)). A zero-variance input gives the step
    /// 0 / 0.5 / 1 below / at / above the mean.
    OutagePoint outage_gaussian(const CapacityStats &stats, double r_th);

    /// outage_gaussian over an ascending grid; throws ArgumentError otherwise.
    std::vector<OutagePoint> outage_curve(const CapacityStats &stats, std::span<const double> r_grid);
}

#endif
