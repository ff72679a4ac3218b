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
#include <vector>

namespace mgfcap {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Principal branch of log Gamma(z). Lanczos (g = 7) with reflection for
// Re z < 0.5. Throws PoleError at 0, -1, -2, ...
std::complex<double> ln_gamma(std::complex<double> z);
double ln_gamma(double x);  // log|Gamma(x)|

// Ei(x) = -PV int_{-x}^inf e^{-t}/t dt, any real x != 0.
double exp_integral_ei(double x);
// E1(x) = -Ei(-x) for x > 0.
double exp_integral_e1(double x);

// Ci(x) = -int_x^inf cos(t)/t dt, x > 0.
double cosine_integral_ci(double x);

// Upper incomplete gamma Gamma(a, x) for x > 0 and any real a, or x = 0
// with a > 0.
double upper_incomplete_gamma(double a, double x);

// Gamma(alpha, x, b, beta) = int_x^inf r^{alpha-1} exp(-r - b r^{-beta}) dr.
double extended_incomplete_gamma(double alpha, double x, double b, double beta);

// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta), real z.
double mittag_leffler(double alpha, double beta, double z);

struct HermiteRule {
    int order = 0;
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;  // weight function exp(-x^2)
};

HermiteRule hermite_rule(int order);

struct LegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

// Gauss-Legendre rule with n points. Rules are cached; the returned
// reference stays valid for the program lifetime.
const LegendreRule& legendre_rule(int n);

} // namespace mgfcap
