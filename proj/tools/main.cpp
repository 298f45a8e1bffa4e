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

// losmimo command-line tool.
//
//   losmimo moments     closed-form moments for one array/constellation size
//   losmimo outage      outage curves (CSV: r_th,method,p_out)
//   losmimo sweep       outage curves over SNRs and sizes (long CSV)
//   losmimo capacity-mc raw per-trial samples of one statistic (CSV)
//   losmimo cf          row-correlation statistics, closed form next to Monte Carlo
//   losmimo verify      oracle suite; exit 2 when a check fails
//
// Settings resolve as flag > --config JSON file > built-in default. Every
// command that is given --out writes <out>.manifest.json next to it.

#include "losmimo/errors.hpp"
#include "losmimo/moments.hpp"
#include "losmimo/montecarlo.hpp"
#include "losmimo/outage.hpp"
#include "losmimo/rng.hpp"
#include "losmimo/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace
{
    enum Exit
    {
        kOk = 0,
        kUsage = 1,
        kCheckFailed = 2,
        kRuntime = 3
    };

    struct UsageError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // ---------------------------------------------------------------- settings

    struct Flags
    {
        int ntx = 0;
        int nrx = 0;
        double kd = 0.0;
        std::string axis;
        std::string theta_law;
        double snr_db = 0.0;
        std::uint64_t trials = 0;
        std::uint64_t seed = 0;
        unsigned workers = 1;
        std::string out;
        std::string config;

        // command specific
        double r_min = 0.0;
        double r_max = 0.0;
        int steps = 0;
        std::string methods;
        std::string snr_list;
        std::string sizes;
        std::string statistic;
        std::string fault;

        CLI::App *command = nullptr;

        // key is the config-file spelling; the flag is the same with dashes
        bool has(std::string key) const
        {
            std::replace(key.begin(), key.end(), '_', '-');
            const std::string flag = "--" + key;
            return command != nullptr && command->get_option_no_throw(flag) != nullptr && command->count(flag) > 0;
        }
    };

    void add_common(CLI::App *cmd, Flags &f)
    {
        cmd->add_option("--ntx", f.ntx, "number of satellites (transmitters)");
        cmd->add_option("--nrx", f.nrx, "number of receive array elements");
        cmd->add_option("--kd", f.kd, "wavenumber times element spacing (default pi)");
        cmd->add_option("--axis", f.axis, "array axis, y or z (default y)");
        cmd->add_option("--theta-law", f.theta_law, "elevation law, pi or half-pi (default pi)");
        cmd->add_option("--snr-db", f.snr_db, "SNR in dB (default 10)");
        cmd->add_option("--trials", f.trials, "Monte Carlo trials (default 100000)");
        cmd->add_option("--seed", f.seed, "master seed (default 42)");
        cmd->add_option("--workers", f.workers, "worker threads; never changes results");
        cmd->add_option("--out", f.out, "output path; a manifest is written to <out>.manifest.json");
        cmd->add_option("--config", f.config, "JSON file with default settings");
    }

    json load_config(const std::string &path)
    {
        if (path.empty())
            return json::object();
        std::ifstream in(path);
        if (!in)
            throw UsageError("cannot read config file '" + path + "'");
        try
        {
            json j = json::parse(in);
            if (!j.is_object())
                throw UsageError("config file must hold a JSON object");
            return j;
        }
        catch (const json::parse_error &e)
        {
            throw UsageError("config file '" + path + "': " + e.what());
        }
    }

    class Resolver
    {
    public:
        Resolver(const Flags &flags, json file) : flags_(flags), file_(std::move(file)) {}

        template <class T>
        T get(const std::string &key, const T &flag_value, const T &fallback)
        {
            if (flags_.has(key))
            {
                source_[key] = "flag";
                return flag_value;
            }
            if (file_.contains(key))
            {
                source_[key] = "config";
                try
                {
                    return file_.at(key).get<T>();
                }
                catch (const json::exception &)
                {
                    throw UsageError("config key '" + key + "' has the wrong type");
                }
            }
            source_[key] = "default";
            return fallback;
        }

        const json &sources() const { return source_; }

    private:
        const Flags &flags_;
        json file_;
        json source_ = json::object();
    };

    struct Settings
    {
        losmimo::ExperimentConfig exp;
        json sources;
        json file;
    };

    Settings resolve(const Flags &f, bool sizes_required)
    {
        Settings s;
        s.file = load_config(f.config);
        Resolver r(f, s.file);
        auto &e = s.exp;
        e.n_T = r.get<int>("ntx", f.ntx, 0);
        e.n_R = r.get<int>("nrx", f.nrx, 0);
        e.kd = r.get<double>("kd", f.kd, std::numbers::pi);
        e.axis = losmimo::parse_axis(r.get<std::string>("axis", f.axis, "y"));
        e.law.theta = losmimo::parse_theta_law(r.get<std::string>("theta_law", f.theta_law, "pi"));
        e.snr_db = r.get<double>("snr_db", f.snr_db, 10.0);
        e.trials = r.get<std::uint64_t>("trials", f.trials, 100000);
        e.master_seed = r.get<std::uint64_t>("seed", f.seed, 42);
        e.workers = r.get<unsigned>("workers", f.workers, 1);
        if (sizes_required && (e.n_T == 0 || e.n_R == 0))
            throw UsageError("--ntx and --nrx are required");
        if (!sizes_required)
        {
            e.n_T = e.n_T == 0 ? 1 : e.n_T;
            e.n_R = e.n_R == 0 ? 1 : e.n_R;
        }
        e.validate();
        s.sources = r.sources();
        return s;
    }

    // ----------------------------------------------------------------- output

    std::string num(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }

    // RFC 4180 field: quoted only when it contains a separator, quote or line break.
    std::string csv_field(const std::string &text)
    {
        if (text.find_first_of(",\"\r\n") == std::string::npos)
            return text;
        std::string quoted = "\"";
        for (char c : text)
        {
            if (c == '"')
                quoted += '"';
            quoted += c;
        }
        return quoted + '"';
    }

    void write_text(const std::string &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        out << text;
        if (!out)
            throw std::runtime_error("failed writing '" + path + "'");
    }

    class Run
    {
    public:
        Run(std::string command, const Flags &flags) : command_(std::move(command)), flags_(flags), start_(clock::now()) {}

        // Writes the payload to --out (plus manifest) or to stdout.
        void emit(const std::string &payload, const json &config, json results = json::object())
        {
            if (flags_.out.empty())
            {
                std::cout << payload;
                return;
            }
            write_text(flags_.out, payload);
            const std::string manifest_path = flags_.out + ".manifest.json";
            const double wall = std::chrono::duration<double>(clock::now() - start_).count();
            json manifest{{"tool", "losmimo"},
                          {"version", LOSMIMO_VERSION},
                          {"command", command_},
                          {"rng", std::string(losmimo::rng_identifier)},
                          {"config", config},
                          {"config_digest", losmimo::fnv1a_hex(config.dump())},
                          {"outputs", json::array({flags_.out, manifest_path})},
                          {"results", std::move(results)},
                          {"runtime", {{"wall_time_s", wall}, {"workers", flags_.workers}}}};
            write_text(manifest_path, manifest.dump(2) + "\n");
        }

    private:
        using clock = std::chrono::steady_clock;
        std::string command_;
        const Flags &flags_;
        clock::time_point start_;
    };

    // ------------------------------------------------------------------ parsing helpers

    std::vector<std::string> split(const std::string &text, char sep)
    {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, sep))
        {
            const auto b = item.find_first_not_of(' ');
            const auto e = item.find_last_not_of(' ');
            if (b != std::string::npos)
                parts.push_back(item.substr(b, e - b + 1));
        }
        return parts;
    }

    double parse_double(const std::string &text)
    {
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(text, &used);
        }
        catch (const std::exception &)
        {
            used = 0;
        }
        if (used != text.size())
            throw UsageError("not a number: '" + text + "'");
        return v;
    }

    std::vector<losmimo::OutageMethod> parse_methods(const std::string &text)
    {
        std::vector<losmimo::OutageMethod> methods;
        for (const auto &m : split(text, ','))
        {
            try
            {
                methods.push_back(losmimo::parse_outage_method(m == "gaussian" ? "gaussian-mc" : m));
            }
            catch (const losmimo::ArgumentError &e)
            {
                throw UsageError(e.what());
            }
        }
        if (methods.empty())
            throw UsageError("method set is empty");
        return methods;
    }

    std::vector<double> parse_snr_list(const std::string &text)
    {
        std::vector<double> list;
        for (const auto &item : split(text, ','))
            list.push_back(parse_double(item));
        return list;
    }

    std::vector<std::pair<int, int>> parse_sizes(const std::string &text)
    {
        std::vector<std::pair<int, int>> sizes;
        for (const auto &item : split(text, ','))
        {
            const auto x = item.find('x');
            if (x == std::string::npos)
                throw UsageError("size '" + item + "' is not of the form NTxNR");
            try
            {
                sizes.emplace_back(std::stoi(item.substr(0, x)), std::stoi(item.substr(x + 1)));
            }
            catch (const std::exception &)
            {
                throw UsageError("size '" + item + "' is not of the form NTxNR");
            }
        }
        return sizes;
    }

    struct GridSpec
    {
        bool explicit_range = false;
        double r_min = 0.0;
        double r_max = 0.0;
        int steps = 101;
    };

    GridSpec resolve_grid(const Flags &f, const json &file)
    {
        Resolver r(f, file);
        GridSpec g;
        g.steps = r.get<int>("steps", f.steps, 101);
        const bool has_min = f.has("r_min") || file.contains("r_min");
        const bool has_max = f.has("r_max") || file.contains("r_max");
        if (has_min != has_max)
            throw UsageError("--r-min and --r-max must be given together");
        if (g.steps < 2)
            throw UsageError("--steps must be >= 2");
        if (has_min)
        {
            g.explicit_range = true;
            g.r_min = r.get<double>("r_min", f.r_min, 0.0);
            g.r_max = r.get<double>("r_max", f.r_max, 0.0);
            if (!(g.r_max > g.r_min))
                throw UsageError("--r-max must exceed --r-min");
        }
        return g;
    }

    std::vector<double> make_grid(const GridSpec &g, const std::vector<double> &samples)
    {
        if (!g.explicit_range)
        {
            // constant samples (n_T = 1) have no spread; centre a unit window on them
            const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
            if (*lo == *hi)
            {
                std::vector<double> grid(static_cast<std::size_t>(g.steps));
                for (int k = 0; k < g.steps; ++k)
                    grid[static_cast<std::size_t>(k)] = *lo - 0.5 + k / (g.steps - 1.0);
                return grid;
            }
            return losmimo::central_grid(samples, g.steps);
        }
        std::vector<double> grid(static_cast<std::size_t>(g.steps));
        for (int k = 0; k < g.steps; ++k)
            grid[static_cast<std::size_t>(k)] = g.r_min + (g.r_max - g.r_min) * k / (g.steps - 1.0);
        return grid;
    }

    json grid_json(const GridSpec &g)
    {
        if (!g.explicit_range)
            return json{{"range", "central-99.9%"}, {"steps", g.steps}};
        return json{{"r_min", g.r_min}, {"r_max", g.r_max}, {"steps", g.steps}};
    }

    json methods_json(const std::vector<losmimo::OutageMethod> &methods)
    {
        json a = json::array();
        for (auto m : methods)
            a.push_back(std::string(losmimo::to_string(m)));
        return a;
    }

    // Outage curves of one cell; fills notes with per-method diagnostics.
    std::vector<std::vector<losmimo::OutagePoint>> outage_cell(const losmimo::ExperimentConfig &cfg,
                                                               const losmimo::SampleSet &samples,
                                                               const std::vector<double> &grid,
                                                               const std::vector<losmimo::OutageMethod> &methods, json &notes)
    {
        using namespace losmimo;
        std::vector<std::vector<OutagePoint>> curves;
        for (auto m : methods)
        {
            switch (m)
            {
            case OutageMethod::Empirical:
                curves.push_back(empirical_outage(samples, grid));
                break;
            case OutageMethod::GaussianMC:
                curves.push_back(outage_curve(capacity_stats(samples.values, cfg.snr_linear()), grid));
                break;
            case OutageMethod::GaussianAnalytic:
            {
                TraceMoments tm;
                const MomentConfig mc = cfg.moment_config();
                tm.trace2 = expected_trace2(mc);
                if (const auto t3 = expected_trace3(mc))
                {
                    tm.trace3 = *t3;
                    notes["trace3_source"] = "closed form";
                }
                else
                {
                    tm.trace3 = summarize(run_statistic_mc(cfg, Statistic::TraceW3).values).mean;
                    notes["trace3_source"] = "monte carlo";
                }
                curves.push_back(outage_curve(capacity_stats(tm, cfg.snr_linear()), grid));
                break;
            }
            }
        }

        const auto find = [&](OutageMethod m) -> const std::vector<OutagePoint> * {
            for (std::size_t k = 0; k < methods.size(); ++k)
                if (methods[k] == m)
                    return &curves[k];
            return nullptr;
        };
        const auto *emp = find(OutageMethod::Empirical);
        const auto *gmc = find(OutageMethod::GaussianMC);
        if (emp != nullptr && gmc != nullptr)
            notes["sup_gap_gaussian_mc_vs_empirical"] = sup_gap(*gmc, *emp);
        return curves;
    }

    json experiment_echo(const losmimo::ExperimentConfig &cfg)
    {
        json j = cfg.to_json();
        j["experiment_digest"] = cfg.digest();
        return j;
    }

    // ------------------------------------------------------------------ commands

    int cmd_moments(const Flags &f)
    {
        using namespace losmimo;
        Run run("moments", f);
        const Settings s = resolve(f, true);
        const MomentConfig mc = s.exp.moment_config();

        json out{{"n_t", mc.n_T},
                 {"n_r", mc.n_R},
                 {"kd", mc.kd},
                 {"axis", std::string(to_string(mc.axis))},
                 {"ef11", ef11(mc)},
                 {"ef12", ef12(mc)},
                 {"mu_omega", mu_omega(mc)},
                 {"expected_trace2", expected_trace2(mc)}};
        if (s.sources.value("kd", "") == "default")
            out["kd_note"] = "kd not given; default pi (half-wavelength spacing)";
        json reasons = json::object();

        if (const auto t3 = expected_trace3(mc))
            out["expected_trace3"] = *t3;
        else
        {
            out["expected_trace3"] = nullptr;
            reasons["expected_trace3"] = std::string(trace3_unavailable_reason(mc));
        }
        if (mc.n_T >= 2)
        {
            out["var_f1nT"] = var_f1nT(mc);
            out["cov_f_cross"] = cov_f_cross(mc);
        }
        else
        {
            out["var_f1nT"] = nullptr;
            out["cov_f_cross"] = nullptr;
            reasons["var_f1nT"] = "row statistics need n_T >= 2";
            reasons["cov_f_cross"] = "row statistics need n_T >= 2";
        }
        if (mc.n_T >= 2 && mc.n_R >= 2)
            out["correlation_cf"] = correlation_cf(mc);
        else
        {
            out["correlation_cf"] = nullptr;
            reasons["correlation_cf"] = "row correlation needs n_T >= 2 and n_R >= 2";
        }
        if (!reasons.empty())
            out["unavailable"] = reasons;

        json config{{"n_t", mc.n_T}, {"n_r", mc.n_R}, {"kd", mc.kd}, {"axis", std::string(to_string(mc.axis))}};
        run.emit(out.dump(2) + "\n", config);
        return kOk;
    }

    int cmd_outage(const Flags &f)
    {
        using namespace losmimo;
        Run run("outage", f);
        const Settings s = resolve(f, true);
        Resolver r(f, s.file);
        const auto methods = parse_methods(r.get<std::string>("methods", f.methods, "gaussian-mc,empirical"));
        const GridSpec gs = resolve_grid(f, s.file);

        const SampleSet samples = run_capacity_mc(s.exp);
        const std::vector<double> grid = make_grid(gs, samples.values);
        json notes = json::object();
        const auto curves = outage_cell(s.exp, samples, grid, methods, notes);

        std::string csv = "r_th,method,p_out\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t k = 0; k < methods.size(); ++k)
                csv += num(grid[i]) + "," + csv_field(std::string(to_string(methods[k]))) + "," + num(curves[k][i].p_out) + "\n";

        json config = experiment_echo(s.exp);
        config["grid"] = grid_json(gs);
        config["methods"] = methods_json(methods);
        notes["samples_digest"] = samples.digest();
        run.emit(csv, config, notes);
        return kOk;
    }

    int cmd_sweep(const Flags &f)
    {
        using namespace losmimo;
        Run run("sweep", f);
        const Settings s = resolve(f, false);
        Resolver r(f, s.file);
        const auto methods = parse_methods(r.get<std::string>("methods", f.methods, "gaussian-mc,empirical"));
        const GridSpec gs = resolve_grid(f, s.file);

        std::vector<double> snrs{s.exp.snr_db};
        const std::string snr_text = r.get<std::string>("snr_list", f.snr_list, "");
        if (!snr_text.empty())
            snrs = parse_snr_list(snr_text);
        std::vector<std::pair<int, int>> sizes;
        const std::string size_text = r.get<std::string>("sizes", f.sizes, "");
        if (!size_text.empty())
            sizes = parse_sizes(size_text);
        else if (f.has("ntx") || f.has("nrx") || s.file.contains("ntx"))
            sizes.emplace_back(s.exp.n_T, s.exp.n_R);
        if (snrs.empty() || sizes.empty())
            throw UsageError("sweep set is empty: give --snr-list and/or --sizes (or --ntx/--nrx)");

        std::string csv = "n_t,n_r,snr_db,r_th,method,p_out\n";
        json cells = json::array();
        for (const auto &[nt, nr] : sizes)
        {
            ExperimentConfig cfg = s.exp;
            cfg.n_T = nt;
            cfg.n_R = nr;
            cfg.validate();
            // one set of channel draws serves every SNR of this size
            std::vector<SampleSet> sets = run_capacity_mc(cfg, snrs);
            for (std::size_t k = 0; k < snrs.size(); ++k)
            {
                ExperimentConfig cell = cfg;
                cell.snr_db = snrs[k];
                const std::vector<double> grid = make_grid(gs, sets[k].values);
                json notes{{"n_t", nt}, {"n_r", nr}, {"snr_db", snrs[k]}, {"experiment_digest", cell.digest()}};
                const auto curves = outage_cell(cell, sets[k], grid, methods, notes);
                for (std::size_t i = 0; i < grid.size(); ++i)
                    for (std::size_t m = 0; m < methods.size(); ++m)
                        csv += std::to_string(nt) + "," + std::to_string(nr) + "," + num(snrs[k]) + "," + num(grid[i]) + "," +
                               csv_field(std::string(to_string(methods[m]))) + "," + num(curves[m][i].p_out) + "\n";
                cells.push_back(std::move(notes));
            }
        }

        json config = s.exp.to_json();
        config.erase("n_t");
        config.erase("n_r");
        config.erase("snr_db");
        json size_list = json::array();
        for (const auto &[nt, nr] : sizes)
            size_list.push_back(json::array({nt, nr}));
        config["sizes"] = size_list;
        config["snr_db"] = snrs;
        config["grid"] = grid_json(gs);
        config["methods"] = methods_json(methods);
        run.emit(csv, config, json{{"cells", cells}});
        return kOk;
    }

    losmimo::Statistic parse_statistic(const std::string &text)
    {
        using losmimo::Statistic;
        for (Statistic st : {Statistic::Capacity, Statistic::TraceW2, Statistic::TraceW3, Statistic::F1, Statistic::F2, Statistic::Omega})
            if (text == losmimo::to_string(st))
                return st;
        throw UsageError("unknown statistic '" + text + "'");
    }

    int cmd_capacity_mc(const Flags &f)
    {
        using namespace losmimo;
        Run run("capacity-mc", f);
        const Settings s = resolve(f, true);
        Resolver r(f, s.file);
        const Statistic st = parse_statistic(r.get<std::string>("statistic", f.statistic, "capacity"));
        const SampleSet samples = run_statistic_mc(s.exp, st);

        std::string csv = "trial," + std::string(to_string(st)) + "\n";
        csv.reserve(csv.size() + samples.values.size() * 24);
        for (std::size_t t = 0; t < samples.values.size(); ++t)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%zu,%.17g\n", t, samples.values[t]);
            csv += buf;
        }

        json results{{"statistic", std::string(to_string(st))}, {"samples_digest", samples.digest()}};
        if (samples.values.size() >= 2)
        {
            const SampleSummary sum = summarize(samples.values);
            results["mean"] = sum.mean;
            results["variance"] = sum.variance;
            results["std_error"] = sum.std_error;
        }
        json config = experiment_echo(s.exp);
        config["statistic"] = std::string(to_string(st));
        run.emit(csv, config, results);
        return kOk;
    }

    int cmd_cf(const Flags &f)
    {
        using namespace losmimo;
        Run run("cf", f);
        const Settings s = resolve(f, true);
        const MomentConfig mc = s.exp.moment_config();
        if (mc.n_T < 2 || mc.n_R < 2)
            throw UsageError("cf needs --ntx >= 2 and --nrx >= 2");

        const Statistic rows[] = {Statistic::F1, Statistic::F2};
        const std::vector<SampleSet> sets = run_statistics_mc(s.exp, rows);
        const SampleSummary f1 = summarize(sets[0].values);
        const CovarianceEstimate cov = covariance(sets[0].values, sets[1].values);

        json out{{"n_t", mc.n_T},
                 {"n_r", mc.n_R},
                 {"kd", mc.kd},
                 {"axis", std::string(to_string(mc.axis))},
                 {"trials", s.exp.trials},
                 {"closed_form",
                  {{"ef12", ef12(mc)},
                   {"var_f1nT", var_f1nT(mc)},
                   {"var_f1", var_f1(mc)},
                   {"cov_f_cross", cov_f_cross(mc)},
                   {"correlation_cf", correlation_cf(mc)}}},
                 {"monte_carlo",
                  {{"mean_f1_per_row", f1.mean / mc.n_T},
                   {"var_f1nT", f1.variance / mc.n_T},
                   {"var_f1nT_std_error", f1.var_std_error / mc.n_T},
                   {"var_f1", f1.variance},
                   {"cov_f_cross", cov.covariance},
                   {"cov_f_cross_std_error", cov.std_error},
                   {"correlation", cov.correlation}}}};
        run.emit(out.dump(2) + "\n", experiment_echo(s.exp));
        return kOk;
    }

    int cmd_verify(const Flags &f)
    {
        using namespace losmimo;
        Run run("verify", f);
        const json file = load_config(f.config);
        Resolver r(f, file);
        VerifyOptions opt;
        opt.n_T = r.get<int>("ntx", f.ntx, opt.n_T);
        opt.n_R = r.get<int>("nrx", f.nrx, opt.n_R);
        opt.kd = r.get<double>("kd", f.kd, opt.kd);
        opt.snr_db = r.get<double>("snr_db", f.snr_db, opt.snr_db);
        opt.trials = r.get<std::uint64_t>("trials", f.trials, opt.trials);
        opt.master_seed = r.get<std::uint64_t>("seed", f.seed, opt.master_seed);
        opt.workers = r.get<unsigned>("workers", f.workers, 1);
        try
        {
            opt.fault = parse_fault(f.fault);
        }
        catch (const ArgumentError &e)
        {
            throw UsageError(e.what());
        }

        const VerifyReport report = run_verification(opt);
        json config{{"n_t", opt.n_T},     {"n_r", opt.n_R},     {"kd", opt.kd},
                    {"snr_db", opt.snr_db}, {"trials", opt.trials}, {"master_seed", opt.master_seed},
                    {"fault", f.fault.empty() ? "none" : f.fault}};
        json doc = report.to_json();
        doc["config"] = config;
        run.emit(doc.dump(2) + "\n", config, json{{"passed", report.all_passed()}});
        for (const auto &c : report.checks)
            std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
        return report.all_passed() ? kOk : kCheckFailed;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"losmimo: capacity and outage of line-of-sight MIMO satellite links"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(LOSMIMO_VERSION));

    Flags f;
    auto *moments = app.add_subcommand("moments", "closed-form trace and row moments (JSON)");
    auto *outage = app.add_subcommand("outage", "outage probability curves (CSV r_th,method,p_out)");
    auto *sweep = app.add_subcommand("sweep", "outage curves over SNRs and sizes (long CSV)");
    auto *capmc = app.add_subcommand("capacity-mc", "per-trial Monte Carlo samples (CSV trial,value)");
    auto *cf = app.add_subcommand("cf", "row correlation: closed form and Monte Carlo (JSON)");
    auto *verify = app.add_subcommand("verify", "oracle suite (JSON report; exit 2 on failure)");
    for (auto *cmd : {moments, outage, sweep, capmc, cf, verify})
        add_common(cmd, f);

    for (auto *cmd : {outage, sweep})
    {
        cmd->add_option("--r-min", f.r_min, "smallest rate threshold (bits/s/Hz)");
        cmd->add_option("--r-max", f.r_max, "largest rate threshold (bits/s/Hz)");
        cmd->add_option("--steps", f.steps, "number of thresholds (default 101)");
        cmd->add_option("--methods", f.methods, "comma list of gaussian-mc, gaussian-analytic, empirical");
    }
    sweep->add_option("--snr-list", f.snr_list, "comma list of SNRs in dB");
    sweep->add_option("--sizes", f.sizes, "comma list of NTxNR sizes, e.g. 16x16,64x64");
    capmc->add_option("--statistic", f.statistic,
                                             "capacity, trace-w2, trace-w3, f1, f2 or omega (default capacity)");
    verify->add_option("--inject-fault", f.fault, "deliberately break a formula: type-b-sign");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    CLI::App *chosen = app.get_subcommands().front();
    f.command = chosen;

    try
    {
        if (chosen == moments)
            return cmd_moments(f);
        if (chosen == outage)
            return cmd_outage(f);
        if (chosen == sweep)
            return cmd_sweep(f);
        if (chosen == capmc)
            return cmd_capacity_mc(f);
        if (chosen == cf)
            return cmd_cf(f);
        return cmd_verify(f);
    }
    catch (const UsageError &e)
    {
        std::cerr << "losmimo: " << e.what() << "\n";
        return kUsage;
    }
    catch (const losmimo::ArgumentError &e)
    {
        std::cerr << "losmimo: " << e.what() << "\n";
        return kUsage;
    }
    catch (const losmimo::TaylorValidityError &e)
    {
        std::cerr << "losmimo: " << e.what() << "\n";
        return kRuntime;
    }
    catch (const losmimo::MonteCarloError &e)
    {
        std::cerr << "losmimo: " << e.what() << " (completed trials: " << e.completed_trials << ")\n";
        return kRuntime;
    }
    catch (const std::exception &e)
    {
        std::cerr << "losmimo: " << e.what() << "\n";
        return kRuntime;
    }
}
