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

#include "mgfcap/mellin.hpp"

#include "mgfcap/error.hpp"
#include "mgfcap/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace mgfcap {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

class Kernel {
public:
    Kernel(const MellinBarnesSpec& spec, double log_prefactor)
        : spec_(spec), lnz_(std::log(spec.z)), shift_(log_prefactor) {}

    cplx log_value(cplx t) const {
        cplx acc = shift_ - t * lnz_;
        for (std::size_t j = 0; j < spec_.lower.size(); ++j) {
            const auto& p = spec_.lower[j];
            if (j < spec_.m) {
                acc += ln_gamma(p.shift + p.scale * t);
            } else {
                acc -= ln_gamma(1.0 - p.shift - p.scale * t);
            }
        }
        for (std::size_t j = 0; j < spec_.upper.size(); ++j) {
            const auto& p = spec_.upper[j];
            if (j < spec_.n) {
                acc += ln_gamma(1.0 - p.shift - p.scale * t);
            } else {
                acc -= ln_gamma(p.shift + p.scale * t);
            }
        }
        return acc;
    }

    double lnz() const { return lnz_; }

private:
    const MellinBarnesSpec& spec_;
    double lnz_;
    double shift_;
};

// 1/Gamma vanishes at the poles of a denominator factor; ln_gamma throws
// there. On the contour this only happens on the real axis.
cplx safe_exp_log(const Kernel& k, cplx t, bool& zero) {
    zero = false;
    try {
        return std::exp(k.log_value(t));
    } catch (const PoleError&) {
        zero = true;
        return 0.0;
    }
}

double numerator_objective(const MellinBarnesSpec& spec, double c, double lnz) {
    double f = -c * lnz;
    for (std::size_t j = 0; j < spec.m; ++j) {
        f += std::lgamma(spec.lower[j].shift + spec.lower[j].scale * c);
    }
    for (std::size_t j = 0; j < spec.n; ++j) {
        f += std::lgamma(1.0 - spec.upper[j].shift - spec.upper[j].scale * c);
    }
    return f;
}

struct PanelResult {
    double a = 0.0;
    double b = 0.0;
    std::array<double, 2> value{};
    std::array<double, 2> err{};
    std::array<double, 2> l1{};
};

class ContourIntegrator {
public:
    ContourIntegrator(const MellinBarnesSpec& spec, const ContourPlan& plan, double log_prefactor)
        : kernel_(spec, log_prefactor), plan_(plan), hi_(legendre_rule(plan.node_count)),
          lo_(legendre_rule(std::max(8, plan.node_count / 2))) {}

    // Integrand as a function of the ordinate y >= 0, already folded with
    // its mirror image: (1/pi) Re[K(t) (1 - i d'(y))] and the t-weighted copy.
    std::array<double, 2> integrand(double y) const {
        const double y0 = plan_.bend_start;
        const double kappa = plan_.bend_slope;
        double d = 0.0, dd = 0.0;
        if (kappa != 0.0) {
            d = kappa * y * y / (y0 + y);
            dd = kappa * y * (2.0 * y0 + y) / ((y0 + y) * (y0 + y));
        }
        const cplx t(plan_.abscissa + d, y);
        bool zero = false;
        const cplx v = safe_exp_log(kernel_, t, zero);
        if (zero) return {0.0, 0.0};
        const cplx w = v * cplx(1.0, -dd);
        return {w.real() / kPi, (w * t).real() / kPi};
    }

    PanelResult panel(double a, double b) const {
        PanelResult r;
        r.a = a;
        r.b = b;
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        std::array<double, 2> qlo{};
        for (std::size_t i = 0; i < hi_.nodes.size(); ++i) {
            const auto f = integrand(mid + half * hi_.nodes[i]);
            for (int k = 0; k < 2; ++k) {
                r.value[k] += hi_.weights[i] * f[k];
                r.l1[k] += hi_.weights[i] * std::abs(f[k]);
            }
        }
        for (std::size_t i = 0; i < lo_.nodes.size(); ++i) {
            const auto f = integrand(mid + half * lo_.nodes[i]);
            for (int k = 0; k < 2; ++k) qlo[k] += lo_.weights[i] * f[k];
        }
        for (int k = 0; k < 2; ++k) {
            r.value[k] *= half;
            r.l1[k] *= half;
            r.err[k] = std::abs(r.value[k] - half * qlo[k]);
        }
        return r;
    }

private:
    Kernel kernel_;
    const ContourPlan& plan_;
    const LegendreRule& hi_;
    const LegendreRule& lo_;
};

// With weighted = false the t-weighted copy is carried along but does not
// steer termination or refinement.
std::pair<MellinValue, MellinValue> integrate(const MellinBarnesSpec& spec, const ContourPlan& plan,
                                              const EvalOptions& opts, bool weighted = true) {
    spec.validate();
    if (!(plan.abscissa > plan.strip.lo && plan.abscissa < plan.strip.hi)) {
        throw DomainError("contour abscissa lies outside the convergence strip");
    }
    if (plan.node_count < 8 || plan.node_count % 2 != 0) {
        throw DomainError("node_count must be even and at least 8");
    }
    const ContourIntegrator integ(spec, plan, opts.log_prefactor);
    const double lnz = std::log(spec.z);
    const double dist = std::min(plan.abscissa - plan.strip.lo, plan.strip.hi - plan.abscissa);
    const double width = std::min(1.0, 8.0 / (1.0 + std::abs(lnz)));
    double step = std::clamp(0.5 * dist, 1e-8, width);

    std::vector<PanelResult> panels;
    std::array<double, 2> sum{};
    auto target = [&](int k) { return std::max(opts.abs_tol, opts.rel_tol * std::abs(sum[k])); };

    double y = 0.0;
    const double y_min = 4.0 + 2.0 * plan.bend_start;
    int quiet = 0;
    while (true) {
        const double b = y + step;
        if (b > plan.half_length) {
            throw ConvergenceError("Mellin-Barnes tail did not decay within the contour half-length " +
                                   std::to_string(plan.half_length));
        }
        auto p = integ.panel(y, b);
        for (int k = 0; k < 2; ++k) sum[k] += p.value[k];
        panels.push_back(p);
        y = b;
        step = std::min(2.0 * step, width);
        const bool small = p.l1[0] <= 1e-3 * target(0) && (!weighted || p.l1[1] <= 1e-3 * target(1));
        if (y >= y_min && small) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }

    // Bisect the worst panels until the node-halving estimate meets tolerance.
    auto total_err = [&](int k) {
        double e = 0.0;
        for (const auto& p : panels) e += p.err[k];
        return e;
    };
    for (int iter = 0; iter < 4000; ++iter) {
        const double r0 = total_err(0) / target(0);
        const double r1 = weighted ? total_err(1) / target(1) : 0.0;
        if (r0 <= 1.0 && r1 <= 1.0) break;
        const int k = r0 >= r1 ? 0 : 1;
        auto worst = std::max_element(panels.begin(), panels.end(), [k](const auto& a, const auto& b) {
            return a.err[k] < b.err[k];
        });
        const double a = worst->a, b = worst->b, m = 0.5 * (a + b);
        for (int j = 0; j < 2; ++j) sum[j] -= worst->value[j];
        *worst = integ.panel(a, m);
        auto right = integ.panel(m, b);
        for (int j = 0; j < 2; ++j) sum[j] += worst->value[j] + right.value[j];
        panels.push_back(right);
    }

    // Plain sums in ordinate order keep the result independent of the
    // refinement history above.
    std::sort(panels.begin(), panels.end(), [](const auto& a, const auto& b) { return a.a < b.a; });
    std::array<double, 2> total{};
    std::array<double, 2> err{};
    for (const auto& p : panels) {
        for (int k = 0; k < 2; ++k) {
            total[k] += p.value[k];
            err[k] += p.err[k];
        }
    }
    return {MellinValue{total[0], err[0]}, MellinValue{total[1], err[1]}};
}

} // namespace

bool MellinBarnesSpec::is_meijer() const {
    for (const auto& p : upper) {
        if (p.scale != 1.0) return false;
    }
    for (const auto& p : lower) {
        if (p.scale != 1.0) return false;
    }
    return true;
}

void MellinBarnesSpec::validate() const {
    if (m > lower.size() || n > upper.size()) {
        throw ParameterError("Mellin-Barnes spec: orders exceed parameter counts");
    }
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("Mellin-Barnes spec: argument must be positive");
    for (const auto& p : upper) {
        if (!(p.scale > 0.0) || !std::isfinite(p.shift)) throw ParameterError("Mellin-Barnes spec: bad upper pair");
    }
    for (const auto& p : lower) {
        if (!(p.scale > 0.0) || !std::isfinite(p.shift)) throw ParameterError("Mellin-Barnes spec: bad lower pair");
    }
}

MellinBarnesSpec MellinBarnesSpec::meijer(std::size_t m, std::size_t n, std::vector<double> a,
                                          std::vector<double> b, double z) {
    MellinBarnesSpec s;
    for (double v : a) s.upper.push_back({v, 1.0});
    for (double v : b) s.lower.push_back({v, 1.0});
    s.m = m;
    s.n = n;
    s.z = z;
    return s;
}

Strip convergence_strip(const MellinBarnesSpec& spec) {
    spec.validate();
    Strip s{-kInf, kInf};
    for (std::size_t j = 0; j < spec.m; ++j) {
        s.lo = std::max(s.lo, -spec.lower[j].shift / spec.lower[j].scale);
    }
    for (std::size_t j = 0; j < spec.n; ++j) {
        s.hi = std::min(s.hi, (1.0 - spec.upper[j].shift) / spec.upper[j].scale);
    }
    if (!(s.lo < s.hi)) {
        throw DomainError("empty convergence strip: numerator pole families overlap");
    }
    return s;
}

ContourPlan plan_contour(const MellinBarnesSpec& spec, const EvalOptions& opts) {
    ContourPlan plan;
    plan.strip = convergence_strip(spec);
    plan.node_count = opts.node_count;
    const double lnz = std::log(spec.z);

    if (!std::isnan(opts.abscissa)) {
        if (!(opts.abscissa > plan.strip.lo && opts.abscissa < plan.strip.hi)) {
            throw DomainError("contour abscissa lies outside the convergence strip");
        }
        plan.abscissa = opts.abscissa;
    } else {
        const double span = 10.0 + 2.0 * std::abs(lnz);
        double lo = plan.strip.lo, hi = plan.strip.hi;
        if (!std::isfinite(lo) && !std::isfinite(hi)) {
            lo = -span;
            hi = span;
        } else if (!std::isfinite(lo)) {
            lo = hi - span;
        } else if (!std::isfinite(hi)) {
            hi = lo + span;
        }
        // grow an open side while the convex objective still falls across it
        if (!std::isfinite(plan.strip.hi)) {
            while (hi - lo < 1e7 && numerator_objective(spec, hi, lnz) < numerator_objective(spec, hi - 1.0, lnz)) {
                hi = lo + 2.0 * (hi - lo);
            }
        }
        if (!std::isfinite(plan.strip.lo)) {
            while (hi - lo < 1e7 && numerator_objective(spec, lo, lnz) < numerator_objective(spec, lo + 1.0, lnz)) {
                lo = hi - 2.0 * (hi - lo);
            }
        }
        const double margin = 0.01 * std::min(1.0, hi - lo);
        double a = lo + margin, b = hi - margin;
        // golden section; the numerator log-gamma sum is convex in c
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - g * (b - a), x2 = a + g * (b - a);
        double f1 = numerator_objective(spec, x1, lnz), f2 = numerator_objective(spec, x2, lnz);
        for (int i = 0; i < 120 && b - a > 1e-10; ++i) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = numerator_objective(spec, x1, lnz);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = numerator_objective(spec, x2, lnz);
            }
        }
        plan.abscissa = 0.5 * (a + b);
    }

    double astar = 0.0, mu = 0.0;
    for (std::size_t j = 0; j < spec.upper.size(); ++j) {
        astar += (j < spec.n ? 1.0 : -1.0) * spec.upper[j].scale;
        mu -= spec.upper[j].scale;
    }
    for (std::size_t j = 0; j < spec.lower.size(); ++j) {
        astar += (j < spec.m ? 1.0 : -1.0) * spec.lower[j].scale;
        mu += spec.lower[j].scale;
    }
    // Weak vertical decay: tilt the far field toward the side where the
    // gamma ratio decays. All poles are real, so nothing is crossed.
    if (opts.allow_bend && astar < 0.5 && std::abs(mu) > 1e-12) {
        plan.bend_start = 1.0;
        plan.bend_slope = mu < 0.0 ? 1.0 : -1.0;
    }
    return plan;
}

cplx log_kernel(const MellinBarnesSpec& spec, cplx t) {
    return Kernel(spec, 0.0).log_value(t);
}

MellinValue eval_fox_h(const MellinBarnesSpec& spec, const ContourPlan& plan, const EvalOptions& opts) {
    return integrate(spec, plan, opts, false).first;
}

std::pair<double, MellinBarnesSpec> simplify_removable(const MellinBarnesSpec& spec) {
    spec.validate();
    std::vector<GammaParam> lower_num(spec.lower.begin(), spec.lower.begin() + spec.m);
    std::vector<GammaParam> lower_den(spec.lower.begin() + spec.m, spec.lower.end());
    std::vector<GammaParam> upper_num(spec.upper.begin(), spec.upper.begin() + spec.n);
    std::vector<GammaParam> upper_den(spec.upper.begin() + spec.n, spec.upper.end());
    auto same = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x)); };
    double sign = 1.0;
    bool changed = true;
    while (changed) {
        changed = false;
        // identical factors above and below the fraction bar
        for (std::size_t i = 0; i < lower_num.size() && !changed; ++i) {
            for (std::size_t k = 0; k < upper_den.size() && !changed; ++k) {
                if (same(lower_num[i].scale, upper_den[k].scale) && same(lower_num[i].shift, upper_den[k].shift)) {
                    lower_num.erase(lower_num.begin() + i);
                    upper_den.erase(upper_den.begin() + k);
                    changed = true;
                }
            }
        }
        for (std::size_t i = 0; i < upper_num.size() && !changed; ++i) {
            for (std::size_t k = 0; k < lower_den.size() && !changed; ++k) {
                if (same(upper_num[i].scale, lower_den[k].scale) && same(upper_num[i].shift, lower_den[k].shift)) {
                    upper_num.erase(upper_num.begin() + i);
                    lower_den.erase(lower_den.begin() + k);
                    changed = true;
                }
            }
        }
        // Gamma(a+1+bt) / Gamma(a+bt) = (a+bt), and (a+bt) Gamma(-a-bt) = -Gamma(1-a-bt)
        for (std::size_t i = 0; i < lower_num.size() && !changed; ++i) {
            for (std::size_t k = 0; k < upper_den.size() && !changed; ++k) {
                const auto& b = lower_num[i];
                const auto& a = upper_den[k];
                if (!same(b.scale, a.scale) || !same(b.shift, a.shift + 1.0)) continue;
                for (auto& u : upper_num) {
                    if (same(u.scale, a.scale) && same(u.shift, a.shift + 1.0)) {
                        u.shift -= 1.0;
                        lower_num.erase(lower_num.begin() + i);
                        upper_den.erase(upper_den.begin() + k);
                        sign = -sign;
                        changed = true;
                        break;
                    }
                }
            }
        }
        // mirror image: Gamma(2-b-bt) / Gamma(1-b-bt) = (1-b-bt) absorbed into Gamma(b-1+bt)
        for (std::size_t i = 0; i < upper_num.size() && !changed; ++i) {
            for (std::size_t k = 0; k < lower_den.size() && !changed; ++k) {
                const auto& a = upper_num[i];
                const auto& b = lower_den[k];
                if (!same(a.scale, b.scale) || !same(a.shift, b.shift - 1.0)) continue;
                for (auto& l : lower_num) {
                    if (same(l.scale, b.scale) && same(l.shift, b.shift - 1.0)) {
                        l.shift += 1.0;
                        upper_num.erase(upper_num.begin() + i);
                        lower_den.erase(lower_den.begin() + k);
                        sign = -sign;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    MellinBarnesSpec out;
    out.z = spec.z;
    out.m = lower_num.size();
    out.n = upper_num.size();
    out.lower = lower_num;
    out.lower.insert(out.lower.end(), lower_den.begin(), lower_den.end());
    out.upper = upper_num;
    out.upper.insert(out.upper.end(), upper_den.begin(), upper_den.end());
    return {sign, out};
}

MellinValue eval_fox_h(const MellinBarnesSpec& spec, const EvalOptions& opts) {
    const auto [sign, simple] = simplify_removable(spec);
    auto r = integrate(simple, plan_contour(simple, opts), opts, false).first;
    r.value *= sign;
    return r;
}

std::pair<MellinValue, MellinValue> eval_fox_h_with_t(const MellinBarnesSpec& spec,
                                                      const EvalOptions& opts) {
    const auto [sign, simple] = simplify_removable(spec);
    // A numerator pole at t = 0 is removed by the extra factor t. Writing
    // t = Gamma(1 + a t) / (a Gamma(a t)) lets the simplifier see that, and the
    // weighted integral then gets its own, wider strip.
    double a = 0.0;
    for (std::size_t j = 0; j < simple.n && a == 0.0; ++j) {
        if (simple.upper[j].shift == 1.0) a = simple.upper[j].scale;
    }
    for (std::size_t j = 0; j < simple.m && a == 0.0; ++j) {
        if (simple.lower[j].shift == 0.0) a = simple.lower[j].scale;
    }
    if (a == 0.0) {
        auto r = integrate(simple, plan_contour(simple, opts), opts);
        r.first.value *= sign;
        r.second.value *= sign;
        return r;
    }
    MellinBarnesSpec weighted = simple;
    weighted.lower.insert(weighted.lower.begin(), GammaParam{1.0, a});
    weighted.m += 1;
    weighted.upper.push_back(GammaParam{0.0, a});
    const auto [wsign, wsimple] = simplify_removable(weighted);
    auto h = integrate(simple, plan_contour(simple, opts), opts, false).first;
    auto ht = integrate(wsimple, plan_contour(wsimple, opts), opts, false).first;
    h.value *= sign;
    ht.value *= sign * wsign / a;
    ht.error_estimate /= a;
    return {h, ht};
}

MellinValue eval_meijer_g(const MellinBarnesSpec& spec, const EvalOptions& opts) {
    if (!spec.is_meijer()) throw DomainError("eval_meijer_g requires unit scale coefficients");
    return eval_fox_h(spec, opts);
}

XiCoefficients gauss_multiplication_expand(double x, int n) {
    if (n < 1) throw DomainError("gauss_multiplication_expand requires n >= 1");
    XiCoefficients xi;
    xi.x = x;
    xi.n = n;
    xi.values.reserve(n);
    for (int k = 0; k < n; ++k) xi.values.push_back((x + k) / n);
    return xi;
}

std::pair<double, MellinBarnesSpec> fox_to_meijer(const MellinBarnesSpec& spec, int k) {
    spec.validate();
    if (k < 1) throw ParameterError("fox_to_meijer requires k >= 1");
    auto count = [k](double scale) {
        const double v = scale * k;
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-9 * std::max(1.0, v) || r < 1.0) {
            throw ParameterError("fox_to_meijer: scale times k is not a positive integer");
        }
        return static_cast<int>(r);
    };
    // Gamma(N tau + x) = (2 pi)^{(1-N)/2} N^{N tau + x - 1/2} prod Gamma(tau + (x+i)/N)
    double log_factor = std::log(static_cast<double>(k));
    double log_z = k * std::log(spec.z);
    MellinBarnesSpec out;
    std::vector<GammaParam> lower_num, lower_den, upper_num, upper_den;
    auto log_const = [](int n, double x) {
        return 0.5 * (1.0 - n) * std::log(2.0 * kPi) + (x - 0.5) * std::log(static_cast<double>(n));
    };
    for (std::size_t j = 0; j < spec.lower.size(); ++j) {
        const auto& p = spec.lower[j];
        const int n = count(p.scale);
        const double ln = std::log(static_cast<double>(n));
        if (j < spec.m) {  // Gamma(b + N tau)
            log_factor += log_const(n, p.shift);
            log_z -= n * ln;
            for (double v : gauss_multiplication_expand(p.shift, n).values) lower_num.push_back({v, 1.0});
        } else {  // 1 / Gamma(1 - b - N tau)
            log_factor -= log_const(n, 1.0 - p.shift);
            log_z -= n * ln;
            for (double v : gauss_multiplication_expand(1.0 - p.shift, n).values) {
                lower_den.push_back({1.0 - v, 1.0});
            }
        }
    }
    for (std::size_t j = 0; j < spec.upper.size(); ++j) {
        const auto& p = spec.upper[j];
        const int n = count(p.scale);
        const double ln = std::log(static_cast<double>(n));
        if (j < spec.n) {  // Gamma(1 - a - N tau)
            log_factor += log_const(n, 1.0 - p.shift);
            log_z += n * ln;
            for (double v : gauss_multiplication_expand(1.0 - p.shift, n).values) {
                upper_num.push_back({1.0 - v, 1.0});
            }
        } else {  // 1 / Gamma(a + N tau)
            log_factor -= log_const(n, p.shift);
            log_z += n * ln;
            for (double v : gauss_multiplication_expand(p.shift, n).values) upper_den.push_back({v, 1.0});
        }
    }
    out.m = lower_num.size();
    out.n = upper_num.size();
    out.lower = lower_num;
    out.lower.insert(out.lower.end(), lower_den.begin(), lower_den.end());
    out.upper = upper_num;
    out.upper.insert(out.upper.end(), upper_den.begin(), upper_den.end());
    out.z = std::exp(log_z);
    return {std::exp(log_factor), out};
}

} // namespace mgfcap
