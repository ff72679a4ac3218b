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

#include "mgfcap/capacity.hpp"
#include "mgfcap/fading.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace mgfcap {

// gamma_end = snr / sqrt(L^{1-p+q}) * (sum R^p)^q
double combiner_snr(const std::vector<double>& envelopes, const CombinerSpec& comb);

// Running count, mean and sum of squared deviations; merges are exact
// up to rounding (Chan et al. pairwise update).
struct Accumulator {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x);
    void merge(const Accumulator& o);
    double std_error() const;
};

struct SimConfig {
    std::vector<FadingModel> models;
    CombinerSpec comb;
    std::uint64_t n_samples = 10000;
    std::uint64_t seed = 1;
    std::uint64_t batch = 1000;  // samples per accumulation block
    int workers = 1;
};

struct SimResult {
    double mean = 0.0;       // bits/s/Hz times W
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
};

// Largest divisor of n not above 4096.
std::uint64_t default_batch(std::uint64_t n);

SimResult simulate_capacity(const SimConfig& cfg);

// Fills one draw of all L envelopes. Sample i always sees CounterRng(seed, i).
using EnvelopeSampler = std::function<void(CounterRng&, std::vector<double>&)>;

SimResult simulate_capacity(const EnvelopeSampler& sampler, const CombinerSpec& comb, std::uint64_t n_samples,
                            std::uint64_t seed, std::uint64_t batch, int workers = 1);

} // namespace mgfcap
