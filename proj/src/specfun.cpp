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

#include "mgfcap/specfun.hpp"

#include "mgfcap/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace mgfcap {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log sin(pi z), stable for large |Im z| where sin itself overflows.
cplx log_sin_pi(cplx z) {
    if (std::abs(z.imag()) < 20.0) return std::log(std::sin(kPi * z));
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    const cplx w = kPi * z;
    const cplx i(0.0, 1.0);
    return -i * w + std::log(cplx(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * i * w));
}

cplx lanczos_log_gamma(cplx z) {
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// E1 by the modified Lentz continued fraction, x >= 1.
double e1_continued_fraction(double x) {
    double b = x + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h * std::exp(-x);
    }
    throw ConvergenceError("E1 continued fraction did not converge");
}

// gamma + ln|x| + sum x^k/(k k!), used for |x| < 1 and for x in (0, 40].
double ei_series(double x) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
        term *= x / k;
        const double add = term / k;
        sum += add;
        if (std::abs(add) < kEps * std::abs(sum)) break;
    }
    return kEulerGamma + std::log(std::abs(x)) + sum;
}

double ci_series(double x) {
    const double x2 = x * x;
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 500; ++k) {
        term *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
        const double add = term / (2.0 * k);
        sum += add;
        if (std::abs(add) < kEps * std::abs(sum)) break;
    }
    return kEulerGamma + std::log(x) + sum;
}

// Lower incomplete gamma series, returns gamma(a, x) for a > 0.
double lower_gamma_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < 100000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x));
        }
    }
    throw ConvergenceError("incomplete gamma series did not converge");
}

// Gamma(a, x) by continued fraction; valid for any real a, x > 0.
double upper_gamma_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / (std::abs(b) < kTiny ? kTiny : b);
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return std::exp(-x + a * std::log(x)) * h;
    }
    throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

double ml_series(double alpha, double beta, double z) {
    if (z == 0.0) return 1.0 / std::tgamma(beta);
    // Terms are formed in log space; the running maximum bounds the
    // cancellation error of an alternating sum.
    double sum = 0.0;
    double comp = 0.0;
    double max_term = 0.0;
    const double lz = z == 0.0 ? 0.0 : std::log(std::abs(z));
    int small_run = 0;
    for (int k = 0; k < 10000; ++k) {
        const double arg = alpha * k + beta;
        double t;
        if (arg <= 0.0 && arg == std::floor(arg)) {
            t = 0.0;  // 1/Gamma at a pole
        } else {
            const double lg = std::lgamma(arg);
            double mag = std::exp(k * lz - lg);
            int sgn = 1;
            if (arg < 0.0 && static_cast<long long>(std::floor(arg)) % 2 != 0) sgn = -sgn;
            if (z < 0.0 && k % 2 == 1) sgn = -sgn;
            t = sgn * mag;
        }
        // Neumaier summation
        const double s = sum + t;
        if (std::abs(sum) >= std::abs(t)) {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
        max_term = std::max(max_term, std::abs(t));
        const bool past_peak = alpha * k + beta > std::pow(std::abs(z), 1.0 / alpha) + 1.0;
        if (past_peak && std::abs(t) <= 1e-17 * std::max(1.0, std::abs(sum + comp))) {
            if (++small_run >= 2) {
                if (max_term * 64.0 * kEps > 1e-10) {
                    throw ConvergenceError("Mittag-Leffler series loses accuracy to cancellation");
                }
                return sum + comp;
            }
        } else {
            small_run = 0;
        }
    }
    throw ConvergenceError("Mittag-Leffler series stagnated at the iteration cap");
}

std::vector<double> newton_legendre_nodes(int n, std::vector<double>& w) {
    std::vector<double> x(n);
    w.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // recompute derivative at the converged root
        double p1 = 1.0, p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return x;
}

} // namespace

cplx ln_gamma(cplx z) {
    if (is_nonpositive_integer(z)) {
        throw PoleError("ln_gamma: pole at z = " + std::to_string(z.real()));
    }
    if (z.real() < 0.5) {
        return std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
    }
    return lanczos_log_gamma(z);
}

double ln_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) {
        throw PoleError("ln_gamma: pole at x = " + std::to_string(x));
    }
    return std::lgamma(x);
}

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw DomainError("E1 requires x > 0");
    if (x >= 1.0) return e1_continued_fraction(x);
    return -ei_series(-x);
}

double exp_integral_ei(double x) {
    if (x == 0.0) throw DomainError("Ei is singular at x = 0");
    if (std::isnan(x)) throw DomainError("Ei of NaN");
    if (x < 0.0) {
        if (x < -745.0) return -0.0;
        return -exp_integral_e1(-x);
    }
    if (x <= 40.0) return ei_series(x);
    // asymptotic e^x/x sum k!/x^k, stopped at the smallest term
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * k / x;
        if (next > term) break;
        term = next;
        sum += term;
        if (term < kEps * sum) break;
    }
    return std::exp(x) / x * sum;
}

double cosine_integral_ci(double x) {
    if (!(x > 0.0)) throw DomainError("Ci requires x > 0");
    if (x <= 4.0) return ci_series(x);
    // E1(ix) by the complex continued fraction; Ci(x) = -Re E1(ix).
    const cplx one(1.0, 0.0);
    cplx b(1.0, x);
    cplx c = 1.0 / kTiny;
    cplx d = one / b;
    cplx h = d;
    for (int i = 1; i < 10000; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = one / (a * d + b);
        c = b + a / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) {
            h *= cplx(std::cos(x), -std::sin(x));
            return -h.real();
        }
    }
    throw ConvergenceError("Ci continued fraction did not converge");
}

double upper_incomplete_gamma(double a, double x) {
    if (x < 0.0 || std::isnan(x) || std::isnan(a)) {
        throw DomainError("upper incomplete gamma requires x >= 0");
    }
    if (x == 0.0) {
        if (a <= 0.0) throw DomainError("Gamma(a, 0) diverges for a <= 0");
        return std::tgamma(a);
    }
    if (a > 0.0) {
        if (x < a + 1.0) return std::tgamma(a) - lower_gamma_series(a, x);
        return upper_gamma_cf(a, x);
    }
    if (x >= 1.0) return upper_gamma_cf(a, x);
    // step down from the first shift into (0, 1], or from E1 when a is an integer
    double s;
    double g;
    if (a == std::floor(a)) {
        s = 0.0;
        g = exp_integral_e1(x);
    } else {
        s = a + std::ceil(-a);
        g = std::tgamma(s) - lower_gamma_series(s, x);
    }
    const double ex = std::exp(-x);
    while (s > a + 0.5) {
        s -= 1.0;
        g = (g - std::pow(x, s) * ex) / s;
    }
    return g;
}

double extended_incomplete_gamma(double alpha, double x, double b, double beta) {
    if (x < 0.0 || b < 0.0 || !(beta > 0.0) || std::isnan(alpha)) {
        throw DomainError("extended incomplete gamma: require x >= 0, b >= 0, beta > 0");
    }
    if (b == 0.0) {
        if (x == 0.0 && alpha <= 0.0) {
            throw DomainError("extended incomplete gamma diverges for b = 0, x = 0, alpha <= 0");
        }
        return upper_incomplete_gamma(alpha, x);
    }

    // In v = ln r the integrand exp(alpha v - e^v - b e^{-beta v}) is
    // strictly log-concave, so walking out from the mode until the log
    // drops by kDrop captures all of the mass.
    constexpr double kDrop = 45.0;
    auto g = [&](double v) { return alpha * v - std::exp(v) - b * std::exp(-beta * v); };
    auto dg = [&](double v) { return alpha - std::exp(v) + b * beta * std::exp(-beta * v); };
    double lo = -800.0, hi = 800.0;
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        (dg(mid) > 0.0 ? lo : hi) = mid;
    }
    const double v_mode = 0.5 * (lo + hi);
    const double v_lo = x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
    const double curv = std::exp(v_mode) + b * beta * beta * std::exp(-beta * v_mode);
    const double width = std::clamp(1.0 / std::sqrt(curv), 1e-6, 1.0);
    const double v0 = std::max(v_mode, v_lo);
    const double g0 = g(v0);

    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double v) { return std::exp(g(v) - g0); };
    auto piece = [&](double a, double c) { return gauss_kronrod<double, 21>::integrate(f, a, c, 10, 1e-13); };
    double total = 0.0;
    double a = v0;
    double step = width;
    for (int i = 0; i < 400; ++i) {
        const double c = a + step;
        total += piece(a, c);
        if (g(c) < g0 - kDrop) break;
        a = c;
        step *= 1.5;
    }
    if (v_lo < v_mode) {
        double c = v_mode;
        step = width;
        for (int i = 0; i < 400; ++i) {
            const double lo_edge = std::max(c - step, v_lo);
            total += piece(lo_edge, c);
            if (lo_edge == v_lo || g(lo_edge) < g0 - kDrop) break;
            c = lo_edge;
            step *= 1.5;
        }
    }
    return std::exp(g0) * total;
}

double mittag_leffler(double alpha, double beta, double z) {
    if (!(alpha > 0.0) || !(beta > 0.0) || std::isnan(z)) {
        throw DomainError("Mittag-Leffler requires alpha, beta > 0");
    }
    if (alpha == 1.0) {
        if (beta == 1.0) return std::exp(z);
        if (beta == 2.0) return z == 0.0 ? 1.0 : std::expm1(z) / z;
        if (z < 0.0) {
            // Kummer transform: all terms positive
            // E_{1,b}(z) = e^z 1F1(b-1; b; -z) / Gamma(b)
            const double w = -z;
            double term = 1.0;
            double sum = 0.0;
            for (int k = 0; k < 10000; ++k) {
                const double add = term * (beta - 1.0) / (beta - 1.0 + k);
                sum += (k == 0 && beta == 1.0) ? 1.0 : add;
                term *= w / (k + 1.0);
                if (k > w && add < kEps * sum) {
                    return std::exp(z - std::lgamma(beta)) * sum;
                }
            }
            throw ConvergenceError("Mittag-Leffler Kummer series stagnated");
        }
    }
    if (alpha == 2.0 && (beta == 1.0 || beta == 2.0)) {
        if (z == 0.0) return beta == 1.0 ? 1.0 : 1.0;
        const double r = std::sqrt(std::abs(z));
        if (beta == 1.0) return z < 0.0 ? std::cos(r) : std::cosh(r);
        return z < 0.0 ? std::sin(r) / r : std::sinh(r) / r;
    }
    return ml_series(alpha, beta, z);
}

HermiteRule hermite_rule(int order) {
    if (order < 1) throw DomainError("hermite_rule requires order >= 1");
    HermiteRule rule;
    rule.order = order;
    rule.nodes.assign(order, 0.0);
    rule.weights.assign(order, 0.0);
    const int n = order;
    const double pim4 = std::pow(kPi, -0.25);
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        // initial guesses of the gauher recipe
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[n - 1];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[n - 2];
        } else {
            z = 2.0 * z - rule.nodes[n - 1 - (i - 2)];
        }
        double pp = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) {
                p1 = pim4;
                p2 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = z * std::sqrt(2.0 / (j + 1)) * p2 -
                         std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
                }
                pp = std::sqrt(2.0 * n) * p2;
                break;
            }
        }
        rule.nodes[n - 1 - i] = z;
        rule.nodes[i] = -z;
        rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / (pp * pp);
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

const LegendreRule& legendre_rule(int n) {
    if (n < 1) throw DomainError("legendre_rule requires n >= 1");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<LegendreRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) {
        auto rule = std::make_unique<LegendreRule>();
        rule->nodes = newton_legendre_nodes(n, rule->weights);
        slot = std::move(rule);
    }
    return *slot;
}

} // namespace mgfcap
