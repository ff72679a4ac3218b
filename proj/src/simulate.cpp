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

#include "mgfcap/simulate.hpp"

#include "mgfcap/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace mgfcap {

double combiner_snr(const std::vector<double>& envelopes, const CombinerSpec& comb) {
    if (static_cast<int>(envelopes.size()) != comb.L) {
        throw ParameterError("combiner_snr: expected " + std::to_string(comb.L) + " envelopes, got " +
                             std::to_string(envelopes.size()));
    }
    const int p = comb.p();
    double sum = 0.0;
    for (double r : envelopes) {
        if (!(r >= 0.0)) throw DomainError("combiner_snr: envelopes must be nonnegative");
        sum += p == 2 ? r * r : r;
    }
    const double norm = std::sqrt(std::pow(static_cast<double>(comb.L), 1 - p + comb.q()));
    return comb.snr / norm * (comb.q() == 2 ? sum * sum : sum);
}

void Accumulator::add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
}

void Accumulator::merge(const Accumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
        *this = o;
        return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double nt = na + nb;
    const double d = o.mean - mean;
    mean += d * nb / nt;
    m2 += o.m2 + d * d * na * nb / nt;
    n += o.n;
}

double Accumulator::std_error() const {
    if (n < 2) return 0.0;
    const double var = m2 / static_cast<double>(n - 1);
    return std::sqrt(var / static_cast<double>(n));
}

std::uint64_t default_batch(std::uint64_t n) {
    if (n == 0) return 1;
    for (std::uint64_t b = std::min<std::uint64_t>(n, 4096); b > 1; --b) {
        if (n % b == 0) return b;
    }
    return 1;
}

SimResult simulate_capacity(const EnvelopeSampler& sampler, const CombinerSpec& comb, std::uint64_t n_samples,
                            std::uint64_t seed, std::uint64_t batch, int workers) {
    comb.validate();
    if (!sampler) throw ParameterError("simulate_capacity: empty sampler");
    if (n_samples < 100) throw ParameterError("simulate_capacity needs at least 100 samples");
    if (batch == 0 || n_samples % batch != 0) {
        throw ParameterError("simulate_capacity: batch must divide the sample count");
    }
    if (workers < 1) throw ParameterError("simulate_capacity needs at least one worker");

    const std::uint64_t blocks = n_samples / batch;
    std::vector<Accumulator> acc(blocks);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;

    auto work = [&] {
        std::vector<double> r(comb.L);
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= blocks) return;
            try {
                Accumulator a;
                for (std::uint64_t i = b * batch; i < (b + 1) * batch; ++i) {
                    CounterRng rng(seed, i);
                    sampler(rng, r);
                    a.add(comb.bandwidth * std::log2(1.0 + combiner_snr(r, comb)));
                }
                acc[b] = a;
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next.store(blocks);
                return;
            }
        }
    };

    const int nthreads = static_cast<int>(std::min<std::uint64_t>(workers, blocks));
    if (nthreads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    // fixed pairwise tree over block order
    for (std::uint64_t stride = 1; stride < blocks; stride *= 2) {
        for (std::uint64_t i = 0; i + stride < blocks; i += 2 * stride) acc[i].merge(acc[i + stride]);
    }
    return {acc[0].mean, acc[0].std_error(), acc[0].n};
}

SimResult simulate_capacity(const SimConfig& cfg) {
    cfg.comb.validate();
    if (static_cast<int>(cfg.models.size()) != cfg.comb.L) {
        throw ParameterError("simulate_capacity needs one model per branch");
    }
    for (const auto& m : cfg.models) {
        if (!m.sampleable()) throw UnsupportedError("model family '" + m.family() + "' cannot be sampled");
    }
    EnvelopeSampler s = [&](CounterRng& rng, std::vector<double>& r) {
        for (std::size_t l = 0; l < cfg.models.size(); ++l) r[l] = sample(cfg.models[l], rng);
    };
    return simulate_capacity(s, cfg.comb, cfg.n_samples, cfg.seed, cfg.batch, cfg.workers);
}

} // namespace mgfcap
