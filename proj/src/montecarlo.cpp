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

#include "losmimo/montecarlo.hpp"

#include "losmimo/errors.hpp"
#include "losmimo/rng.hpp"
#include "losmimo/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <mutex>
#include <new>
#include <thread>

namespace losmimo
{
    namespace
    {
        constexpr std::uint32_t kChannelSubstream = 0;
        constexpr std::uint32_t kRowSubstream = 1;

        // f(gamma) = sum_{s=1}^{n_R-1} (n_R - s) cos(s kd gamma), Chebyshev recurrence for cos(s x)
        double pair_sum(double x, int n_R) noexcept
        {
            const double c1 = std::cos(x);
            double prev = 1.0;
            double cur = c1;
            double sum = 0.0;
            for (int s = 1; s < n_R; ++s)
            {
                sum += static_cast<double>(n_R - s) * cur;
                const double next = 2.0 * c1 * cur - prev;
                prev = cur;
                cur = next;
            }
            return sum;
        }

        std::vector<double> cosines(RandomStream &rng, const ExperimentConfig &cfg, const ArrayGeometry &geom, int count)
        {
            const AngleDraw draw = sample_angles(rng, count, cfg.law);
            std::vector<double> psi(draw.size());
            for (std::size_t i = 0; i < draw.size(); ++i)
                psi[i] = direction_cosine(geom, draw.directions[i]);
            return psi;
        }

        // Runs body(trial, row) for every trial, where row points at the
        // n_out output slots of that trial. Trials are split into contiguous
        // chunks, one per worker, so each slot is written by exactly one thread.
        template <class Body>
        void for_each_trial(const ExperimentConfig &cfg, std::vector<std::vector<double>> &outputs, Body body)
        {
            const std::uint64_t trials = cfg.trials;
            try
            {
                for (auto &out : outputs)
                    out.assign(trials, 0.0);
            }
            catch (const std::bad_alloc &)
            {
                throw MonteCarloError("monte carlo: cannot allocate sample storage", 0);
            }

            const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(cfg.workers, trials));
            std::atomic<std::uint64_t> completed{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;

            auto run_chunk = [&](std::uint64_t begin, std::uint64_t end) {
                std::vector<double> row(outputs.size());
                std::uint64_t done = 0;
                try
                {
                    for (std::uint64_t t = begin; t < end; ++t)
                    {
                        body(t, row.data());
                        for (std::size_t k = 0; k < outputs.size(); ++k)
                            outputs[k][t] = row[k];
                        ++done;
                    }
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
                completed += done;
            };

            if (workers == 1)
            {
                run_chunk(0, trials);
            }
            else
            {
                std::vector<std::thread> pool;
                pool.reserve(workers);
                try
                {
                    for (std::uint64_t w = 0; w < workers; ++w)
                        pool.emplace_back(run_chunk, trials * w / workers, trials * (w + 1) / workers);
                }
                catch (const std::system_error &)
                {
                    for (auto &th : pool)
                        th.join();
                    throw MonteCarloError("monte carlo: cannot start worker threads", completed.load());
                }
                for (auto &th : pool)
                    th.join();
            }

            if (failure)
            {
                try
                {
                    std::rethrow_exception(failure);
                }
                catch (const std::bad_alloc &)
                {
                    throw MonteCarloError("monte carlo: out of memory after " + std::to_string(completed.load()) + " of " +
                                              std::to_string(trials) + " trials",
                                          completed.load());
                }
            }
        }

        bool needs_gram(Statistic s)
        {
            return s == Statistic::Capacity || s == Statistic::TraceW2 || s == Statistic::TraceW3;
        }

        bool is_row(Statistic s) { return s == Statistic::F1 || s == Statistic::F2; }
    }

    void ExperimentConfig::validate() const
    {
        if (n_T < 1 || n_R < 1)
            throw ArgumentError("experiment: n_T and n_R must be >= 1");
        if (!std::isfinite(kd) || kd <= 0.0)
            throw ArgumentError("experiment: kd must be finite and positive");
        if (!std::isfinite(snr_db))
            throw ArgumentError("experiment: snr_db must be finite");
        if (trials < 1)
            throw ArgumentError("experiment: trials must be >= 1");
        if (workers < 1)
            throw ArgumentError("experiment: workers must be >= 1");
    }

    double ExperimentConfig::snr_linear() const { return std::pow(10.0, snr_db / 10.0); }

    ArrayGeometry ExperimentConfig::geometry() const { return ArrayGeometry(n_R, kd, axis); }

    MomentConfig ExperimentConfig::moment_config() const { return MomentConfig{n_T, n_R, kd, axis}; }

    nlohmann::json ExperimentConfig::to_json() const
    {
        return nlohmann::json{{"n_t", n_T},
                              {"n_r", n_R},
                              {"kd", kd},
                              {"axis", std::string(to_string(axis))},
                              {"theta_law", std::string(to_string(law.theta))},
                              {"snr_db", snr_db},
                              {"trials", trials},
                              {"master_seed", master_seed}};
    }

    std::string ExperimentConfig::digest() const { return fnv1a_hex(to_json().dump()); }

    std::string_view to_string(Statistic statistic)
    {
        switch (statistic)
        {
        case Statistic::Capacity:
            return "capacity";
        case Statistic::TraceW2:
            return "trace-w2";
        case Statistic::TraceW3:
            return "trace-w3";
        case Statistic::F1:
            return "f1";
        case Statistic::F2:
            return "f2";
        case Statistic::Omega:
            return "omega";
        }
        return "unknown";
    }

    std::string fnv1a_hex(std::string_view bytes)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : bytes)
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    std::string SampleSet::digest() const
    {
        std::string raw(values.size() * sizeof(double), '\0');
        if (!values.empty())
            std::memcpy(raw.data(), values.data(), raw.size());
        return fnv1a_hex(raw);
    }

    std::vector<SampleSet> run_capacity_mc(const ExperimentConfig &cfg, std::span<const double> snr_db_values)
    {
        cfg.validate();
        if (snr_db_values.empty())
            throw ArgumentError("run_capacity_mc: SNR list is empty");
        std::vector<double> rho;
        for (double db : snr_db_values)
        {
            if (!std::isfinite(db))
                throw ArgumentError("run_capacity_mc: snr_db must be finite");
            rho.push_back(std::pow(10.0, db / 10.0));
        }

        const ArrayGeometry geom = cfg.geometry();
        std::vector<std::vector<double>> outputs(rho.size());
        for_each_trial(cfg, outputs, [&](std::uint64_t t, double *row) {
            RandomStream rng(cfg.master_seed, t, kChannelSubstream);
            const AngleDraw draw = sample_angles(rng, cfg.n_T, cfg.law);
            const Spectrum spec = spectrum(gram_normalized(build_channel(geom, draw)));
            for (std::size_t k = 0; k < rho.size(); ++k)
                row[k] = capacity(spec, rho[k]);
        });

        std::vector<SampleSet> sets;
        for (std::size_t k = 0; k < rho.size(); ++k)
        {
            ExperimentConfig c = cfg;
            c.snr_db = snr_db_values[k];
            sets.push_back(SampleSet{std::move(outputs[k]), c.digest(), Statistic::Capacity});
        }
        return sets;
    }

    SampleSet run_capacity_mc(const ExperimentConfig &cfg)
    {
        const double snr[] = {cfg.snr_db};
        return std::move(run_capacity_mc(cfg, snr).front());
    }

    std::vector<SampleSet> run_statistics_mc(const ExperimentConfig &cfg, std::span<const Statistic> statistics)
    {
        cfg.validate();
        if (statistics.empty())
            throw ArgumentError("run_statistics_mc: no statistic requested");
        bool gram = false;
        bool rows = false;
        bool omega = false;
        for (Statistic s : statistics)
        {
            gram = gram || needs_gram(s);
            rows = rows || is_row(s);
            omega = omega || s == Statistic::Omega;
        }
        if (rows && cfg.n_T < 2)
            throw ArgumentError("run_statistic_mc: F statistics need n_T >= 2");

        const ArrayGeometry geom = cfg.geometry();
        const double rho = cfg.snr_linear();
        const int n_T = cfg.n_T;
        const int n_R = cfg.n_R;
        const double kd = cfg.kd;

        std::vector<std::vector<double>> outputs(statistics.size());
        for_each_trial(cfg, outputs, [&](std::uint64_t t, double *row) {
            GramMatrix W;
            std::vector<double> psi;
            if (gram || omega)
            {
                RandomStream rng(cfg.master_seed, t, kChannelSubstream);
                const AngleDraw draw = sample_angles(rng, n_T, cfg.law);
                if (gram)
                    W = gram_normalized(build_channel(geom, draw));
                if (omega)
                {
                    psi.resize(draw.size());
                    for (std::size_t i = 0; i < draw.size(); ++i)
                        psi[i] = direction_cosine(geom, draw.directions[i]);
                }
            }
            double f1 = 0.0;
            double f2 = 0.0;
            if (rows)
            {
                // directions a[r] = psi[r], b[r] = psi[n_T + r], c[r] = psi[2 n_T + r]
                RandomStream rng(cfg.master_seed, t, kRowSubstream);
                const std::vector<double> p = cosines(rng, cfg, geom, 3 * n_T);
                for (int r = 0; r < n_T; ++r)
                {
                    const double c = p[static_cast<std::size_t>(2 * n_T + r)];
                    f1 += pair_sum(kd * (p[static_cast<std::size_t>(r)] - c), n_R);
                    f2 += pair_sum(kd * (p[static_cast<std::size_t>(n_T + r)] - c), n_R);
                }
            }

            for (std::size_t k = 0; k < statistics.size(); ++k)
            {
                switch (statistics[k])
                {
                case Statistic::Capacity:
                    row[k] = capacity(spectrum(W), rho);
                    break;
                case Statistic::TraceW2:
                    row[k] = trace_power(W, 2);
                    break;
                case Statistic::TraceW3:
                    row[k] = trace_power(W, 3);
                    break;
                case Statistic::F1:
                    row[k] = f1;
                    break;
                case Statistic::F2:
                    row[k] = f2;
                    break;
                case Statistic::Omega:
                {
                    double sum = 0.0;
                    for (int i = 0; i < n_T; ++i)
                    {
                        sum += 0.5 * n_R * (n_R - 1.0);
                        for (int j = i + 1; j < n_T; ++j)
                            sum += 2.0 * pair_sum(kd * (psi[static_cast<std::size_t>(i)] - psi[static_cast<std::size_t>(j)]), n_R);
                    }
                    row[k] = sum;
                    break;
                }
                }
            }
        });

        const std::string hash = cfg.digest();
        std::vector<SampleSet> sets;
        for (std::size_t k = 0; k < statistics.size(); ++k)
            sets.push_back(SampleSet{std::move(outputs[k]), hash, statistics[k]});
        return sets;
    }

    SampleSet run_statistic_mc(const ExperimentConfig &cfg, Statistic statistic)
    {
        const Statistic one[] = {statistic};
        return std::move(run_statistics_mc(cfg, one).front());
    }

    std::vector<OutagePoint> empirical_outage(const SampleSet &samples, std::span<const double> r_grid)
    {
        if (samples.statistic != Statistic::Capacity)
            throw ArgumentError("empirical_outage: samples must be capacities");
        if (samples.values.empty())
            throw ArgumentError("empirical_outage: no samples");
        if (!std::is_sorted(r_grid.begin(), r_grid.end()))
            throw ArgumentError("empirical_outage: threshold grid must be ascending");

        std::vector<double> sorted = samples.values;
        std::sort(sorted.begin(), sorted.end());
        const double n = static_cast<double>(sorted.size());
        std::vector<OutagePoint> curve;
        curve.reserve(r_grid.size());
        for (double r : r_grid)
        {
            const auto below = std::lower_bound(sorted.begin(), sorted.end(), r) - sorted.begin();
            curve.push_back(OutagePoint{r, static_cast<double>(below) / n, OutageMethod::Empirical});
        }
        return curve;
    }

    double anderson_darling_normal(std::span<const double> values)
    {
        const std::size_t n = values.size();
        if (n < 2)
            throw ArgumentError("anderson_darling_normal: need at least two samples");
        const SampleSummary s = summarize(values);
        if (!(s.variance > 0.0))
            throw DegenerateError("anderson_darling_normal: samples have zero variance");

        const double sd = std::sqrt(s.variance);
        std::vector<double> z(values.begin(), values.end());
        for (double &v : z)
            v = (v - s.mean) / sd;
        std::sort(z.begin(), z.end());

        // log Phi(z) = log Q(-z), log(1 - Phi(z)) = log Q(z)
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const double lower = log_gauss_q(-z[i]);
            const double upper = log_gauss_q(z[n - 1 - i]);
            acc += (2.0 * static_cast<double>(i) + 1.0) * (lower + upper);
        }
        const double nd = static_cast<double>(n);
        const double a2 = -nd - acc / nd;
        return a2 * (1.0 + 0.75 / nd + 2.25 / (nd * nd));
    }

    double normality_check(const SampleSet &samples)
    {
        if (samples.values.size() < 10000)
            throw ArgumentError("normality_check: need at least 10^4 samples");
        return anderson_darling_normal(samples.values);
    }

    SampleSummary summarize(std::span<const double> values)
    {
        const std::size_t n = values.size();
        if (n < 2)
            throw ArgumentError("summarize: need at least two samples");
        double mean = 0.0;
        for (double v : values)
            mean += v;
        mean /= static_cast<double>(n);
        double m2 = 0.0;
        double m4 = 0.0;
        for (double v : values)
        {
            const double d2 = (v - mean) * (v - mean);
            m2 += d2;
            m4 += d2 * d2;
        }
        const double nd = static_cast<double>(n);
        SampleSummary s;
        s.mean = mean;
        s.variance = m2 / (nd - 1.0);
        s.std_error = std::sqrt(s.variance / nd);
        const double pop2 = m2 / nd;
        s.var_std_error = std::sqrt(std::max(0.0, m4 / nd - pop2 * pop2) / nd);
        return s;
    }

    CovarianceEstimate covariance(std::span<const double> a, std::span<const double> b)
    {
        if (a.size() != b.size() || a.size() < 2)
            throw ArgumentError("covariance: need two equal-length series of at least two samples");
        const SampleSummary sa = summarize(a);
        const SampleSummary sb = summarize(b);
        const double nd = static_cast<double>(a.size());
        double sum = 0.0;
        double sum_sq = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            const double p = (a[i] - sa.mean) * (b[i] - sb.mean);
            sum += p;
            sum_sq += p * p;
        }
        CovarianceEstimate c;
        c.covariance = sum / (nd - 1.0);
        const double mean_p = sum / nd;
        c.std_error = std::sqrt(std::max(0.0, sum_sq / nd - mean_p * mean_p) / nd);
        const double denom = std::sqrt(sa.variance * sb.variance);
        c.correlation = denom > 0.0 ? c.covariance / denom : 0.0;
        return c;
    }

    std::vector<double> central_grid(std::span<const double> values, int steps, double coverage)
    {
        if (values.empty())
            throw ArgumentError("central_grid: no samples");
        if (steps < 2)
            throw ArgumentError("central_grid: need at least two grid points");
        if (!(coverage > 0.0 && coverage <= 1.0))
            throw ArgumentError("central_grid: coverage must lie in (0, 1]");

        std::vector<double> sorted(values.begin(), values.end());
        std::sort(sorted.begin(), sorted.end());
        const double tail = 0.5 * (1.0 - coverage);
        const auto last = static_cast<double>(sorted.size() - 1);
        const double lo = sorted[static_cast<std::size_t>(std::floor(tail * last))];
        const double hi = sorted[static_cast<std::size_t>(std::ceil((1.0 - tail) * last))];

        std::vector<double> grid(static_cast<std::size_t>(steps));
        for (int k = 0; k < steps; ++k)
            grid[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (steps - 1.0);
        return grid;
    }

    double sup_gap(std::span<const OutagePoint> a, std::span<const OutagePoint> b)
    {
        if (a.size() != b.size())
            throw ArgumentError("sup_gap: curves have different lengths");
        double gap = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k)
        {
            if (a[k].r_th != b[k].r_th)
                throw ArgumentError("sup_gap: curves are sampled on different grids");
            gap = std::max(gap, std::fabs(a[k].p_out - b[k].p_out));
        }
        return gap;
    }
}
