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

#include <complex>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace mgfcap {

struct GammaParam {
    double shift = 0.0;  // a_j or b_j
    double scale = 1.0;  // alpha_j or beta_j
    bool operator==(const GammaParam&) const = default;
};

// Fox-H kernel
//   prod_{j<=m} Gamma(b_j + beta_j t) prod_{j<=n} Gamma(1 - a_j - alpha_j t)
//   -------------------------------------------------------------------- z^{-t}
//   prod_{j>m} Gamma(1 - b_j - beta_j t) prod_{j>n} Gamma(a_j + alpha_j t)
struct MellinBarnesSpec {
    std::vector<GammaParam> upper;  // (a_j, alpha_j)
    std::vector<GammaParam> lower;  // (b_j, beta_j)
    std::size_t m = 0;
    std::size_t n = 0;
    double z = 1.0;

    bool is_meijer() const;
    bool operator==(const MellinBarnesSpec&) const = default;
    void validate() const;
    // Convenience builder for Meijer G^{m,n}_{p,q}[z | a; b].
    static MellinBarnesSpec meijer(std::size_t m, std::size_t n, std::vector<double> a,
                                   std::vector<double> b, double z);
};

struct Strip {
    double lo;
    double hi;  // +inf when no upper pole family
};

// Open interval of abscissas separating the two pole families.
// Throws DomainError when it is empty.
Strip convergence_strip(const MellinBarnesSpec& spec);

struct ContourPlan {
    double abscissa = 0.0;
    double half_length = 2000.0;  // hard cap on the integration ordinate
    int node_count = 64;          // Gauss-Legendre points per panel
    Strip strip{0.0, 0.0};
    // Far field is tilted: Re t = c + bend_slope * max(0, |Im t| - bend_start).
    double bend_start = 0.0;
    double bend_slope = 0.0;
};

struct EvalOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int node_count = 64;
    // Explicit abscissa; NaN selects the saddle of the kernel on the real axis.
    double abscissa = std::numeric_limits<double>::quiet_NaN();
    bool allow_bend = true;
    // Added to the log kernel before exponentiation; the result is
    // exp(log_prefactor) * H. Keeps huge gamma normalizations finite.
    double log_prefactor = 0.0;
};

struct MellinValue {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Cancels gamma pairs whose ratio is a linear factor that in turn removes a
// pole of a third factor. Returns {sign, spec} with the same kernel up to sign,
// whose strip is no narrower. The auto-planned evaluators apply it.
std::pair<double, MellinBarnesSpec> simplify_removable(const MellinBarnesSpec& spec);

ContourPlan plan_contour(const MellinBarnesSpec& spec, const EvalOptions& opts = {});

MellinValue eval_fox_h(const MellinBarnesSpec& spec, const ContourPlan& plan,
                       const EvalOptions& opts = {});
MellinValue eval_fox_h(const MellinBarnesSpec& spec, const EvalOptions& opts = {});
MellinValue eval_meijer_g(const MellinBarnesSpec& spec, const EvalOptions& opts = {});

// H together with the same integral carrying an extra factor t in the
// kernel, on one shared contour. The second value is -z dH/dz.
std::pair<MellinValue, MellinValue> eval_fox_h_with_t(const MellinBarnesSpec& spec,
                                                      const EvalOptions& opts = {});

// log of the kernel (gamma ratio times z^{-t}) at complex t.
std::complex<double> log_kernel(const MellinBarnesSpec& spec, std::complex<double> t);

struct XiCoefficients {
    double x = 0.0;
    int n = 1;
    std::vector<double> values;  // x/n, (x+1)/n, ..., (x+n-1)/n
};

XiCoefficients gauss_multiplication_expand(double x, int n);

// Rewrites a Fox-H spec whose scales are all integer multiples of 1/k as a
// Meijer-G spec times a constant, using Gauss' multiplication formula on
// every gamma factor after t = k tau. Returns {factor, meijer_spec}.
// Throws ParameterError when some scale * k is not an integer.
std::pair<double, MellinBarnesSpec> fox_to_meijer(const MellinBarnesSpec& spec, int k);

} // namespace mgfcap
