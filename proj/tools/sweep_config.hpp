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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgfcap_cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MethodCode : char { Adaptive = 'a', Gcq = 'g', MonteCarlo = 'm' };

struct SweepConfig {
    std::vector<std::string> combiners{"MRC"};  // "EGC" | "MRC"
    std::vector<int> branch_counts{1};
    std::vector<double> snr_db{10.0};
    std::string swept_param = "snr";  // snr | m | xi | m_s
    std::vector<double> swept_values;  // empty when swept_param == "snr"
    std::string family;
    std::map<std::string, double> model;
    std::vector<MethodCode> methods{MethodCode::Adaptive};
    int gcq_n = 50;
    std::uint64_t mc_samples = 10000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out;
};

// One CSV row before evaluation.
struct GridPoint {
    std::string combiner;
    int L = 1;
    double swept_value = 0.0;
    double snr_db = 0.0;
    MethodCode method = MethodCode::Adaptive;
    std::map<std::string, double> model;  // template with the swept value applied
};

// Parses the keyed text format:
//
//   [sweep]
//   combiners = MRC, EGC
//   branches  = 1, 2, 3, 4
//   snr_db    = 0:30:2        # start:stop:step, inclusive, or a list
//   sweep     = snr           # or m, xi, m_s together with values = ...
//   methods   = a, g, m
//   [model]
//   family = shadowed_gnm
//   m = 2
//
// Unknown sections or keys are errors. `origin` names the source in messages.
SweepConfig parse_sweep_config(std::istream& in, const std::string& origin = "config");
SweepConfig load_sweep_config(const std::string& path);

// Throws ConfigError on empty or non-finite grids and inconsistent axes.
void validate(const SweepConfig& cfg);

// Order: combiner, L, swept value, snr_db, method.
std::vector<GridPoint> expand_grid(const SweepConfig& cfg);

// Single-value parsers shared with the flag handling.
std::vector<double> parse_grid(const std::string& text);
std::vector<MethodCode> parse_methods(const std::string& text);
std::string parse_combiner(const std::string& text);

const char* method_label(MethodCode m);
// Shortest representation that reads back to the same double.
std::string format_double(double x);

} // namespace mgfcap_cli
