// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The mgfcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mgfcap command-line front end. Talks to the library only through mgfcap.h.
#include "mgfcap/mgfcap.h"
#include "sweep_config.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

namespace {

using namespace mgfcap_cli;

constexpr int kExitSelftest = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelDeleter {
    void operator()(mgfcap_model* m) const { mgfcap_model_destroy(m); }
};
using ModelPtr = std::unique_ptr<mgfcap_model, ModelDeleter>;

std::string status_message(mgfcap_status st) {
    return std::string(mgfcap_status_name(st)) + ": " + mgfcap_last_error();
}

ModelPtr make_model(const std::string& family, const std::map<std::string, double>& params) {
    std::vector<const char*> keys;
    std::vector<double> values;
    for (const auto& [k, v] : params) {
        keys.push_back(k.c_str());
        values.push_back(v);
    }
    mgfcap_model* raw = nullptr;
    const auto st = mgfcap_model_create(family.c_str(), keys.data(), values.data(), keys.size(), &raw);
    if (st != MGFCAP_OK) throw ConfigError("model " + family + ": " + status_message(st));
    return ModelPtr(raw);
}

struct RowResult {
    double value = 0.0;
    double error = 0.0;
    double mc_stderr = -1.0;  // < 0: analytic row
};

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> method;
    std::optional<int> gcq_n;
    std::optional<std::uint64_t> samples;
    std::optional<int> workers;
    // single-point overrides
    std::optional<std::string> family;
    std::vector<std::string> params;
    std::optional<std::string> combiner;
    std::optional<int> branches;
    std::optional<double> snr_db;
};

RowResult evaluate(const GridPoint& g, const SweepConfig& cfg) {
    auto model = make_model(cfg.family, g.model);
    std::vector<const mgfcap_model*> branches(static_cast<std::size_t>(g.L), model.get());
    mgfcap_combiner_spec comb{g.combiner == "EGC" ? MGFCAP_EGC : MGFCAP_MRC, g.L, std::pow(10.0, g.snr_db / 10.0),
                              1.0};
    RowResult r;
    if (g.method == MethodCode::MonteCarlo) {
        mgfcap_sim_result sim{};
        const auto st = mgfcap_simulate(branches.data(), &comb, cfg.mc_samples, cfg.seed, 0, 1, &sim);
        if (st != MGFCAP_OK) throw NumericFailure(status_message(st));
        r.value = sim.mean;
        r.error = sim.std_error;
        r.mc_stderr = sim.std_error;
        return r;
    }
    mgfcap_integration mode;
    mgfcap_integration_default(&mode);
    mode.method = g.method == MethodCode::Gcq ? MGFCAP_METHOD_GCQ : MGFCAP_METHOD_ADAPTIVE;
    mode.gcq_n = cfg.gcq_n;
    mgfcap_capacity_point pt{};
    const auto st = mgfcap_capacity(branches.data(), &comb, &mode, &pt);
    if (st != MGFCAP_OK) throw NumericFailure(status_message(st));
    r.value = pt.value;
    r.error = pt.error_estimate;
    return r;
}

std::string describe(const GridPoint& g, const SweepConfig& cfg) {
    std::ostringstream os;
    os << g.combiner << ',' << g.L << ',' << cfg.swept_param << ',' << format_double(g.swept_value) << ','
       << format_double(g.snr_db) << ',' << method_label(g.method);
    return os.str();
}

// Catches bad parameter values before any expensive evaluation.
void precheck(const std::vector<GridPoint>& grid, const SweepConfig& cfg) {
    for (const auto& g : grid) {
        auto model = make_model(cfg.family, g.model);
        if (g.method == MethodCode::MonteCarlo && !mgfcap_model_sampleable(model.get())) {
            throw ConfigError("family '" + cfg.family + "' cannot be simulated");
        }
    }
}

std::vector<RowResult> run_grid(const std::vector<GridPoint>& grid, const SweepConfig& cfg) {
    std::vector<RowResult> rows(grid.size());
    std::vector<std::string> failures(grid.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size() || failed.load()) return;
            try {
                rows[i] = evaluate(grid[i], cfg);
                if (!std::isfinite(rows[i].value)) throw NumericFailure("non-finite capacity");
            } catch (const std::exception& e) {
                failures[i] = e.what();
                failed.store(true);
            }
        }
    };
    const int n = std::max(1, std::min<int>(cfg.workers, static_cast<int>(grid.size())));
    if (n == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!failures[i].empty()) {
            throw NumericFailure("row " + std::to_string(i + 1) + " (" + describe(grid[i], cfg) + "): " + failures[i]);
        }
    }

    // Methods are the innermost axis, so each cell is a contiguous block.
    const std::size_t k = cfg.methods.size();
    for (std::size_t c = 0; c < grid.size(); c += k) {
        double lo = INFINITY, hi = -INFINITY;
        int analytic = 0;
        for (std::size_t j = c; j < c + k; ++j) {
            if (rows[j].mc_stderr >= 0) continue;
            lo = std::min(lo, rows[j].value);
            hi = std::max(hi, rows[j].value);
            ++analytic;
        }
        if (analytic < 2) continue;
        for (std::size_t j = c; j < c + k; ++j) {
            if (rows[j].mc_stderr < 0) rows[j].error = std::max(rows[j].error, hi - lo);
        }
    }
    return rows;
}

std::string render_csv(const std::vector<GridPoint>& grid, const std::vector<RowResult>& rows,
                       const SweepConfig& cfg) {
    std::ostringstream os;
    os << "combiner,L,swept_param,swept_value,snr_db,method,capacity_bits_hz,error_estimate,mc_stderr,seed\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << describe(grid[i], cfg) << ',' << format_double(rows[i].value) << ',' << format_double(rows[i].error)
           << ',' << (rows[i].mc_stderr >= 0 ? format_double(rows[i].mc_stderr) : std::string()) << ',' << cfg.seed
           << '\n';
    }
    return os.str();
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write '" + path + "'");
        f << text;
        if (!f.flush()) throw std::runtime_error("cannot write '" + path + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot write '" + path + "'");
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, double> out;
    for (const auto& it : items) {
        const auto eq = it.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects key=value, got '" + it + "'");
        out[it.substr(0, eq)] = parse_grid(it.substr(eq + 1)).at(0);
    }
    return out;
}

SweepConfig build_config(const Options& o, bool need_file) {
    SweepConfig cfg;
    if (!o.config.empty()) {
        cfg = load_sweep_config(o.config);
    } else if (need_file) {
        throw ConfigError("--config is required");
    }
    if (o.family) cfg.family = *o.family;
    for (const auto& [k, v] : parse_params(o.params)) cfg.model[k] = v;
    if (o.combiner) cfg.combiners = {parse_combiner(*o.combiner)};
    if (o.branches) cfg.branch_counts = {*o.branches};
    if (o.snr_db) cfg.snr_db = {*o.snr_db};
    if (o.seed) cfg.seed = *o.seed;
    if (o.out) cfg.out = *o.out;
    if (o.method) cfg.methods = parse_methods(*o.method);
    if (o.gcq_n) cfg.gcq_n = *o.gcq_n;
    if (o.samples) cfg.mc_samples = *o.samples;
    if (o.workers) cfg.workers = *o.workers;
    if (cfg.family.empty()) throw ConfigError("no model family (use --config or --family)");
    for (int L : cfg.branch_counts) {
        if (L < 1 || L > 64) throw ConfigError("branch count must be in 1..64");
    }
    return cfg;
}

int run_capacity_like(const Options& o, bool need_file, bool single, bool mc_only) {
    SweepConfig cfg = build_config(o, need_file);
    if (mc_only) cfg.methods = {MethodCode::MonteCarlo};
    const auto grid = expand_grid(cfg);
    if (single && grid.size() != cfg.methods.size()) {
        throw ConfigError("this command evaluates one point; the configuration spans " +
                          std::to_string(grid.size() / cfg.methods.size()) + " (use sweep)");
    }
    precheck(grid, cfg);
    const auto rows = run_grid(grid, cfg);
    emit(render_csv(grid, rows, cfg), cfg.out);
    return 0;
}

int run_mgf(const std::string& family, const std::vector<std::string>& params, int p, const std::string& s_grid,
            const std::string& out) {
    if (p != 1 && p != 2) throw ConfigError("--p must be 1 or 2");
    const auto grid = parse_grid(s_grid);
    auto model = make_model(family, parse_params(params));
    std::ostringstream os;
    os << "s,mgf,dmgf\n";
    for (double s : grid) {
        double m = 0.0, dm = 0.0;
        const auto st = mgfcap_mgf(model.get(), s, p, &m, &dm);
        if (st != MGFCAP_OK) throw NumericFailure("s = " + format_double(s) + ": " + status_message(st));
        os << format_double(s) << ',' << format_double(m) << ',' << format_double(dm) << '\n';
    }
    emit(os.str(), out);
    return 0;
}

struct SelftestTally {
    int total = 0;
    int failed = 0;
};

int run_selftest(double scale) {
    SelftestTally tally;
    std::printf("%-4s  %-40s  %-12s  %s\n", "", "check", "max error", "tolerance");
    auto cb = [](void* user, const char* name, double measured, double tol, int passed) {
        auto* t = static_cast<SelftestTally*>(user);
        ++t->total;
        if (!passed) ++t->failed;
        std::printf("%-4s  %-40s  %-12.3e  %.1e\n", passed ? "PASS" : "FAIL", name, measured, tol);
        std::fflush(stdout);
    };
    int all = 0;
    const auto st = mgfcap_selftest(scale, cb, &tally, &all);
    if (st != MGFCAP_OK) {
        std::fprintf(stderr, "selftest: %s\n", status_message(st).c_str());
        return kExitSelftest;
    }
    std::printf("%d/%d checks passed\n", tally.total - tally.failed, tally.total);
    return all ? 0 : kExitSelftest;
}

void add_run_flags(CLI::App* sub, Options& o) {
    sub->add_option("--seed", o.seed, "Monte-Carlo seed");
    sub->add_option("--out", o.out, "CSV output path (default stdout)");
    sub->add_option("--method", o.method, "Methods, comma separated: a (adaptive), g (GCQ), m (Monte-Carlo)");
    sub->add_option("--gcq-n", o.gcq_n, "GCQ node count");
    sub->add_option("--samples", o.samples, "Monte-Carlo sample count");
    sub->add_option("--workers", o.workers, "Worker threads over grid points");
}

void add_point_flags(CLI::App* sub, Options& o) {
    sub->add_option("--family", o.family, "Fading family, e.g. shadowed_gnm");
    sub->add_option("--param", o.params, "Model parameter key=value (repeatable)");
    sub->add_option("--combiner", o.combiner, "EGC or MRC");
    sub->add_option("--branches,-L", o.branches, "Branch count");
    sub->add_option("--snr-db", o.snr_db, "Es/N0 in dB");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ergodic capacity of diversity receivers over fading channels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(mgfcap_version()));

    Options o;
    auto* cap = app.add_subcommand("capacity", "Capacity at a single point");
    cap->add_option("--config", o.config, "Config file")->check(CLI::ExistingFile);
    add_run_flags(cap, o);
    add_point_flags(cap, o);

    auto* sweep = app.add_subcommand("sweep", "Capacity over a parameter grid, written as CSV");
    sweep->add_option("--config", o.config, "Config file")->required()->check(CLI::ExistingFile);
    add_run_flags(sweep, o);

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo capacity at a single point");
    sim->add_option("--config", o.config, "Config file")->check(CLI::ExistingFile);
    add_run_flags(sim, o);
    add_point_flags(sim, o);

    std::string mgf_family, s_grid = "0.25,1,4", mgf_out;
    std::vector<std::string> mgf_params;
    int mgf_p = 2;
    auto* mgf = app.add_subcommand("mgf", "Tabulate M(s) = E[exp(-s R^p)] and its derivative");
    mgf->add_option("--family", mgf_family, "Fading family")->required();
    mgf->add_option("--param", mgf_params, "Model parameter key=value (repeatable)");
    mgf->add_option("--p", mgf_p, "Envelope power (1 or 2)");
    mgf->add_option("--s", s_grid, "s grid: list or start:stop:step");
    mgf->add_option("--out", mgf_out, "CSV output path (default stdout)");

    double tol_scale = 1.0;
    auto* self = app.add_subcommand("selftest", "Run the identity battery");
    self->add_option("--tolerance-scale", tol_scale)->group("");  // hidden; test harness only

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*cap) return run_capacity_like(o, false, true, false);
        if (*sweep) return run_capacity_like(o, true, false, false);
        if (*sim) return run_capacity_like(o, false, true, true);
        if (*mgf) return run_mgf(mgf_family, mgf_params, mgf_p, s_grid, mgf_out);
        if (*self) return run_selftest(tol_scale);
    } catch (const ConfigError& e) {
        std::cerr << "mgfcap: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericFailure& e) {
        std::cerr << "mgfcap: evaluation failed: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "mgfcap: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitConfig;
}
