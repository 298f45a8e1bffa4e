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

#include "losmimo/outage.hpp"

#include "losmimo/errors.hpp"
#include "losmimo/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace losmimo
{
    namespace
    {
        void require_snr(double snr, const char *what)
        {
            if (!std::isfinite(snr) || snr < 0.0)
                throw ArgumentError(std::string(what) + ": snr must be finite and >= 0");
        }
    }

    std::string_view to_string(MomentSource source)
    {
        return source == MomentSource::AnalyticTaylor ? "analytic-taylor" : "monte-carlo";
    }

    std::string_view to_string(OutageMethod method)
    {
        switch (method)
        {
        case OutageMethod::GaussianAnalytic:
            return "gaussian-analytic";
        case OutageMethod::GaussianMC:
            return "gaussian-mc";
        case OutageMethod::Empirical:
            return "empirical";
        }
        return "unknown";
    }

    OutageMethod parse_outage_method(std::string_view text)
    {
        if (text == "gaussian-analytic")
            return OutageMethod::GaussianAnalytic;
        if (text == "gaussian-mc")
            return OutageMethod::GaussianMC;
        if (text == "empirical")
            return OutageMethod::Empirical;
        throw ArgumentError("unknown outage method '" + std::string(text) + "'");
    }

    double mean_capacity_taylor(const TraceMoments &moments, double snr)
    {
        require_snr(snr, "mean_capacity_taylor");
        const double r2 = snr * snr;
        const double nats = snr * moments.trace1 - r2 * moments.trace2 / 2.0 + r2 * snr * moments.trace3 / 3.0;
        return nats / std::numbers::ln2;
    }

    double second_moment_capacity_taylor(const TraceMoments &moments, double snr)
    {
        require_snr(snr, "second_moment_capacity_taylor");
        const double r2 = snr * snr;
        const double nats2 = r2 - r2 * snr * moments.trace2;
        return nats2 / (std::numbers::ln2 * std::numbers::ln2);
    }

    CapacityStats capacity_stats(const TraceMoments &moments, double snr)
    {
        const double mean = mean_capacity_taylor(moments, snr);
        const double second = second_moment_capacity_taylor(moments, snr);
        const double variance = second - mean * mean;
        if (variance < 0.0)
            throw TaylorValidityError("capacity_stats: third-order Taylor moments give a negative variance (" +
                                      std::to_string(variance) +
                                      "); SNR outside Taylor validity, use Monte Carlo moments instead");
        return {mean, variance, snr, MomentSource::AnalyticTaylor};
    }

    CapacityStats capacity_stats(std::span<const double> capacity_samples, double snr)
    {
        require_snr(snr, "capacity_stats");
        if (capacity_samples.empty())
            throw ArgumentError("capacity_stats: no samples");

        // shifted by the first sample so that identical samples give exactly zero variance
        const double n = static_cast<double>(capacity_samples.size());
        const double shift = capacity_samples.front();
        double offset = 0.0;
        for (double c : capacity_samples)
            offset += c - shift;
        offset /= n;
        double ss = 0.0;
        for (double c : capacity_samples)
            ss += (c - shift - offset) * (c - shift - offset);
        const double mean = shift + offset;
        return {mean, ss / n, snr, MomentSource::MonteCarloEstimated};
    }

    OutagePoint outage_gaussian(const CapacityStats &stats, double r_th)
    {
        if (!(stats.variance >= 0.0))
            throw ArgumentError("outage_gaussian: variance must be >= 0");
        if (!std::isfinite(r_th))
            throw ArgumentError("outage_gaussian: r_th must be finite");

        const OutageMethod method =
            stats.source == MomentSource::AnalyticTaylor ? OutageMethod::GaussianAnalytic : OutageMethod::GaussianMC;

        double p;
        if (stats.variance == 0.0)
            p = r_th < stats.mean ? 0.0 : (r_th > stats.mean ? 1.0 : 0.5);
        else
            p = gauss_q((stats.mean - r_th) / std::sqrt(stats.variance));
        return {r_th, p, method};
    }

    std::vector<OutagePoint> outage_curve(const CapacityStats &stats, std::span<const double> r_grid)
    {
        if (!std::is_sorted(r_grid.begin(), r_grid.end()))
            throw ArgumentError("outage_curve: r_grid must be sorted ascending");
        std::vector<OutagePoint> curve;
        curve.reserve(r_grid.size());
        for (double r : r_grid)
            curve.push_back(outage_gaussian(stats, r));
        return curve;
    }
}
