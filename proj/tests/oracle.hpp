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

// Reference implementations used only by the tests. Each one takes a route
// the library does not: Stirling instead of Lanczos, long-double power
// series instead of continued fractions, double-exponential quadrature
// instead of Gauss-Kronrod, Golub-Welsch instead of Newton on H_n.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

inline std::complex<double> stirling_ln_gamma(std::complex<double> z) {
    // shift right until the asymptotic series is accurate, then undo
    std::complex<double> acc = 0.0;
    while (std::abs(z) < 20.0 || z.real() < 10.0) {
        acc -= std::log(z);
        z += 1.0;
    }
    static const double b[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
    std::complex<double> s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi);
    std::complex<double> zp = z;
    for (int k = 1; k <= 7; ++k) {
        s += b[k - 1] / (2.0 * k * (2.0 * k - 1.0) * zp);
        zp *= z * z;
    }
    return s + acc;
}

// Ci(x) = gamma + ln x + sum_k (-1)^k x^{2k} / (2k (2k)!), long double.
inline double ci_series(double xd) {
    const long double x = xd;
    long double term = 1.0L, sum = 0.0L;
    for (int k = 1; k < 200; ++k) {
        term *= -x * x / ((2.0L * k - 1) * (2.0L * k));
        const long double add = term / (2.0L * k);
        sum += add;
        if (std::fabs(add) < 1e-22L * std::fabs(sum) && k > 3) break;
    }
    return static_cast<double>(0.577215664901532860606512090082402431L + std::log(x) + sum);
}

// int_0^inf f(x) dx with x = scale * exp(pi/2 sinh t). Returns the value and
// the difference to the half-resolution sum.
inline std::pair<double, double> de_halfline(const std::function<double(double)>& f, double scale = 1.0,
                                             double h = 1.0 / 32, double tmax = 4.5) {
    const int n = static_cast<int>(std::ceil(tmax / h));
    double all = 0.0, even = 0.0;
    for (int i = -n; i <= n; ++i) {
        const double t = i * h;
        const double x = scale * std::exp(std::numbers::pi / 2 * std::sinh(t));
        const double v = f(x) * x * std::numbers::pi / 2 * std::cosh(t);
        if (!std::isfinite(v)) continue;
        all += v;
        if (i % 2 == 0) even += v;
    }
    const double fine = h * all, coarse = 2 * h * even;
    return {fine, std::abs(fine - coarse)};
}

// int_a^b f by composite Gauss-Legendre on `panels` equal panels (10 points each).
inline double gl_interval(const std::function<double(double)>& f, double a, double b, int panels = 200) {
    static const double xs[] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                0.8650633666889845, 0.9739065285171717};
    static const double ws[] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                0.1494513491505806, 0.0666713443086881};
    double s = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        for (int i = 0; i < 5; ++i) s += ws[i] * (f(c - 0.5 * h * xs[i]) + f(c + 0.5 * h * xs[i]));
    }
    return s * 0.5 * h;
}

// Golub-Welsch for physicists' Hermite: Jacobi matrix off-diagonal sqrt(k/2).
inline std::pair<std::vector<double>, std::vector<double>> hermite_golub_welsch(int n) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(k / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        x[i] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        w[i] = std::sqrt(std::numbers::pi) * v * v;
    }
    return {x, w};
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    // fourth order
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace oracle
