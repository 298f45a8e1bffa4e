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

#ifndef LOSMIMO_MONTECARLO_HPP
#define LOSMIMO_MONTECARLO_HPP

#include "losmimo/array_geometry.hpp"
#include "losmimo/channel.hpp"
#include "losmimo/moments.hpp"
#include "losmimo/outage.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace losmimo
{
    struct ExperimentConfig
    {
        int n_T = 1;
        int n_R = 1;
        double kd = std::numbers::pi;
        Axis axis = Axis::Y;
        AngleDistribution law{};
        double snr_db = 10.0;
        std::uint64_t trials = 100000;
        std::uint64_t master_seed = 42;
        unsigned workers = 1; // advisory; never changes results

        void validate() const;
        double snr_linear() const;
        ArrayGeometry geometry() const;
        MomentConfig moment_config() const;

        /// Canonical description of everything that determines the samples
        /// (workers excluded).
        nlohmann::json to_json() const;

        /// 64-bit FNV-1a of to_json().dump(), as 16 hex digits.
        std::string digest() const;
    };

    enum class Statistic
    {
        Capacity,
        TraceW2,
        TraceW3,
        F1,
        F2,
        Omega
    };

    std::string_view to_string(Statistic statistic);

    struct SampleSet
    {
        std::vector<double> values;
        std::string config_hash;
        Statistic statistic = Statistic::Capacity;

        /// FNV-1a over the raw bytes of the values, as 16 hex digits.
        std::string digest() const;
    };

    /// A run that could not finish; completed_trials counts trials done before the failure.
    class MonteCarloError : public std::runtime_error
    {
    public:
        MonteCarloError(const std::string &what, std::uint64_t completed_trials)
            : std::runtime_error(what), completed_trials(completed_trials)
        {
        }

        std::uint64_t completed_trials;
    };

    std::string fnv1a_hex(std::string_view bytes);

    /// Instantaneous capacities log2 det(I + rho W), one per trial.
    SampleSet run_capacity_mc(const ExperimentConfig &cfg);

    /// Capacities at several SNRs from the same channel draws; element k
    /// equals run_capacity_mc with snr_db = snr_db_values[k].
    std::vector<SampleSet> run_capacity_mc(const ExperimentConfig &cfg, std::span<const double> snr_db_values);

    /// Per-trial statistic of a fresh draw.
    ///
    /// Capacity, TraceW2, TraceW3 and Omega are evaluated on the n_T
    /// satellites of the channel. F1 and F2 are two rows of pair terms
    ///
    ///     F1 = sum_r f(psi_a[r] - psi_c[r]),   F2 = sum_r f(psi_b[r] - psi_c[r]),
    ///
    /// over 3 n_T directions drawn from a separate substream: the r-th terms
    /// of the two rows share satellite c[r] and every other pair of terms is
    /// independent. F statistics need n_T >= 2.
    SampleSet run_statistic_mc(const ExperimentConfig &cfg, Statistic statistic);

    /// Several statistics from the same trials; equal to separate run_statistic_mc calls.
    std::vector<SampleSet> run_statistics_mc(const ExperimentConfig &cfg, std::span<const Statistic> statistics);

    /// Fraction of capacity samples strictly below each threshold.
    std::vector<OutagePoint> empirical_outage(const SampleSet &samples, std::span<const double> r_grid);

    /// Anderson-Darling A*^2 of the standardised samples against N(0, 1),
    /// with Stephens' small-sample factor for estimated mean and variance.
    /// The 1% critical value is 1.092. Throws DegenerateError for constant input.
    double anderson_darling_normal(std::span<const double> values);

    /// anderson_darling_normal on a SampleSet; requires at least 10^4 samples.
    double normality_check(const SampleSet &samples);

    inline constexpr double kAndersonDarling1Percent = 1.092;

    struct SampleSummary
    {
        double mean = 0.0;
        double variance = 0.0;   // unbiased
        double std_error = 0.0;  // of the mean
        double var_std_error = 0.0; // of the variance, sqrt((m4 - s^4) / n)
    };

    SampleSummary summarize(std::span<const double> values);

    struct CovarianceEstimate
    {
        double covariance = 0.0;
        double std_error = 0.0;
        double correlation = 0.0;
    };

    CovarianceEstimate covariance(std::span<const double> a, std::span<const double> b);

    /// Evenly spaced grid between the 0.05% and 99.95% sample quantiles.
    std::vector<double> central_grid(std::span<const double> values, int steps, double coverage = 0.999);

    /// max |a_k - b_k| over two curves sampled on the same grid.
    double sup_gap(std::span<const OutagePoint> a, std::span<const OutagePoint> b);
}

#endif
