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

#include "sweep_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mgfcap_cli {

namespace {

constexpr std::size_t kMaxGrid = 100000;

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_number(const std::string& t) {
    double v = 0.0;
    const char* end = t.data() + t.size();
    auto [p, ec] = std::from_chars(t.data(), end, v);
    if (t.empty() || ec != std::errc() || p != end) throw ConfigError("not a number: '" + t + "'");
    if (!std::isfinite(v)) throw ConfigError("non-finite value: '" + t + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& t) {
    std::uint64_t v = 0;
    const char* end = t.data() + t.size();
    auto [p, ec] = std::from_chars(t.data(), end, v);
    if (t.empty() || ec != std::errc() || p != end) throw ConfigError("not a nonnegative integer: '" + t + "'");
    return v;
}

int parse_int(const std::string& t) {
    const auto v = parse_u64(t);
    if (v > 1000000) throw ConfigError("integer out of range: '" + t + "'");
    return static_cast<int>(v);
}

// Range points are rounded to 12 significant digits so 0:1:0.1 prints 0.3, not 0.30000000000000004.
double snap(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

} // namespace

std::vector<double> parse_grid(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("empty grid");
    if (t.find(':') != std::string::npos) {
        auto parts = split(t, ':');
        if (parts.size() != 3) throw ConfigError("range must be start:stop:step, got '" + t + "'");
        const double a = parse_number(parts[0]), b = parse_number(parts[1]), h = parse_number(parts[2]);
        if (!(h > 0.0)) throw ConfigError("range step must be positive");
        if (b < a) throw ConfigError("range stop below start");
        const double count = std::floor((b - a) / h + 1e-9) + 1.0;
        if (count > kMaxGrid) throw ConfigError("range has too many points");
        std::vector<double> out;
        for (int i = 0; i < static_cast<int>(count); ++i) out.push_back(snap(a + i * h));
        return out;
    }
    std::vector<double> out;
    for (const auto& p : split(t, ',')) out.push_back(parse_number(p));
    if (out.size() > kMaxGrid) throw ConfigError("grid has too many points");
    return out;
}

std::vector<MethodCode> parse_methods(const std::string& text) {
    std::vector<MethodCode> out;
    for (const auto& p : split(text, ',')) {
        MethodCode m;
        if (p == "a" || p == "adaptive") m = MethodCode::Adaptive;
        else if (p == "g" || p == "gcq") m = MethodCode::Gcq;
        else if (p == "m" || p == "monte-carlo" || p == "mc") m = MethodCode::MonteCarlo;
        else throw ConfigError("unknown method '" + p + "' (expected a, g or m)");
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    if (out.empty()) throw ConfigError("no methods given");
    return out;
}

std::string parse_combiner(const std::string& text) {
    std::string u = trim(text);
    std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
    if (u != "EGC" && u != "MRC") throw ConfigError("unknown combiner '" + text + "' (expected EGC or MRC)");
    return u;
}

SweepConfig parse_sweep_config(std::istream& in, const std::string& origin) {
    SweepConfig cfg;
    bool have_family = false;
    std::string section;
    std::string line;
    int lineno = 0;
    std::map<std::string, int> seen;
    while (std::getline(in, line)) {
        ++lineno;
        auto where = [&] { return origin + ":" + std::to_string(lineno) + ": "; };
        if (auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where() + "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "sweep" && section != "model") throw ConfigError(where() + "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where() + "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError(where() + "key outside a section");
        if (!seen.emplace(section + "." + key, lineno).second) throw ConfigError(where() + "duplicate key '" + key + "'");
        try {
            if (section == "model") {
                if (key == "family") {
                    cfg.family = val;
                    have_family = true;
                } else {
                    cfg.model[key] = parse_number(val);
                }
                continue;
            }
            if (key == "combiners") {
                cfg.combiners.clear();
                for (const auto& c : split(val, ',')) {
                    auto name = parse_combiner(c);
                    if (std::find(cfg.combiners.begin(), cfg.combiners.end(), name) == cfg.combiners.end())
                        cfg.combiners.push_back(name);
                }
            } else if (key == "branches" || key == "branch_counts") {
                cfg.branch_counts.clear();
                for (double v : parse_grid(val)) {
                    if (v != std::floor(v) || v < 1 || v > 64) throw ConfigError("branch count must be an integer in 1..64");
                    cfg.branch_counts.push_back(static_cast<int>(v));
                }
            } else if (key == "snr_db") {
                cfg.snr_db = parse_grid(val);
            } else if (key == "sweep") {
                cfg.swept_param = val;
            } else if (key == "values") {
                cfg.swept_values = parse_grid(val);
            } else if (key == "methods") {
                cfg.methods = parse_methods(val);
            } else if (key == "gcq_n") {
                cfg.gcq_n = parse_int(val);
            } else if (key == "samples" || key == "mc_samples") {
                cfg.mc_samples = parse_u64(val);
            } else if (key == "seed") {
                cfg.seed = parse_u64(val);
            } else if (key == "workers") {
                cfg.workers = parse_int(val);
            } else if (key == "out") {
                cfg.out = val;
            } else {
                throw ConfigError("unknown key '" + key + "' in [sweep]");
            }
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            if (msg.rfind(origin, 0) == 0) throw;
            throw ConfigError(where() + msg);
        }
    }
    if (!have_family) throw ConfigError(origin + ": [model] needs a family");
    return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config '" + path + "'");
    return parse_sweep_config(f, path);
}

void validate(const SweepConfig& cfg) {
    if (cfg.family.empty()) throw ConfigError("model family is empty");
    if (cfg.combiners.empty()) throw ConfigError("no combiners");
    if (cfg.branch_counts.empty()) throw ConfigError("no branch counts");
    if (cfg.snr_db.empty()) throw ConfigError("empty snr_db grid");
    if (cfg.methods.empty()) throw ConfigError("no methods");
    for (double v : cfg.snr_db) {
        if (!std::isfinite(v)) throw ConfigError("snr_db grid has a non-finite value");
    }
    const auto& p = cfg.swept_param;
    if (p == "snr") {
        if (!cfg.swept_values.empty()) throw ConfigError("values = ... only applies when sweeping m, xi or m_s");
    } else if (p == "m" || p == "xi" || p == "m_s") {
        if (cfg.swept_values.empty()) throw ConfigError("empty grid for swept parameter '" + p + "'");
        if (!cfg.model.count(p)) {
            throw ConfigError("swept parameter '" + p + "' has no template value in [model]");
        }
        for (double v : cfg.swept_values) {
            if (!std::isfinite(v)) throw ConfigError("swept grid has a non-finite value");
        }
    } else {
        throw ConfigError("swept parameter must be snr, m, xi or m_s, got '" + p + "'");
    }
    if (cfg.gcq_n < 2) throw ConfigError("gcq_n must be at least 2");
    if (cfg.workers < 1) throw ConfigError("workers must be at least 1");
    const bool mc = std::find(cfg.methods.begin(), cfg.methods.end(), MethodCode::MonteCarlo) != cfg.methods.end();
    if (mc && cfg.mc_samples < 100) throw ConfigError("Monte-Carlo needs at least 100 samples");
}

std::vector<GridPoint> expand_grid(const SweepConfig& cfg) {
    validate(cfg);
    const bool snr_axis = cfg.swept_param == "snr";
    const std::vector<double> axis = snr_axis ? std::vector<double>{0.0} : cfg.swept_values;
    std::vector<GridPoint> out;
    for (const auto& comb : cfg.combiners) {
        for (int L : cfg.branch_counts) {
            for (double v : axis) {
                for (double snr : cfg.snr_db) {
                    for (auto m : cfg.methods) {
                        GridPoint g;
                        g.combiner = comb;
                        g.L = L;
                        g.snr_db = snr;
                        g.swept_value = snr_axis ? snr : v;
                        g.method = m;
                        g.model = cfg.model;
                        if (!snr_axis) g.model[cfg.swept_param] = v;
                        out.push_back(std::move(g));
                    }
                }
            }
        }
    }
    return out;
}

const char* method_label(MethodCode m) {
    switch (m) {
    case MethodCode::Adaptive: return "adaptive";
    case MethodCode::Gcq: return "gcq";
    case MethodCode::MonteCarlo: return "monte-carlo";
    }
    return "?";
}

std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc() ? std::string(buf, p) : std::string("nan");
}

} // namespace mgfcap_cli
