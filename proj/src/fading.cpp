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

#include "mgfcap/fading.hpp"

#include "mgfcap/error.hpp"
#include "mgfcap/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

namespace mgfcap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// R^2 = lambda * X with E[X^tau] = prod Gamma(b_j + beta_j tau) / Gamma(b_j).
struct Component {
    double weight = 1.0;
    double lambda = 1.0;
    std::vector<GammaParam> factors;
};

Component nakagami_component(double w, double m, double omega) {
    return {w, omega / m, {{m, 1.0}}};
}

void require(bool ok, const char* what) {
    if (!ok) throw ParameterError(what);
}

void validate(const FadingVariant& v) {
    std::visit(
        overloaded{
            [](const ShadowedGnmParams& p) {
                require(p.m >= 0.5, "shadowed GNM: m must be >= 0.5");
                require(p.xi > 0.0, "shadowed GNM: xi must be > 0");
                require(p.m_s >= 0.5, "shadowed GNM: m_s must be >= 0.5");
                require(p.omega_s > 0.0, "shadowed GNM: omega_s must be > 0");
            },
            [](const GnmParams& p) {
                require(p.m >= 0.5, "GNM: m must be >= 0.5");
                require(p.xi > 0.0, "GNM: xi must be > 0");
                require(p.omega > 0.0, "GNM: omega must be > 0");
            },
            [](const OneSidedGaussianParams& p) { require(p.omega > 0.0, "one-sided Gaussian: omega must be > 0"); },
            [](const RayleighParams& p) { require(p.omega > 0.0, "Rayleigh: omega must be > 0"); },
            [](const NakagamiParams& p) {
                require(p.m >= 0.5, "Nakagami: m must be >= 0.5");
                require(p.omega > 0.0, "Nakagami: omega must be > 0");
            },
            [](const WeibullParams& p) {
                require(p.xi > 0.0, "Weibull: xi must be > 0");
                require(p.omega > 0.0, "Weibull: omega must be > 0");
            },
            [](const HyperNakagamiParams& p) {
                require(!p.components.empty(), "hyper-Nakagami: no components");
                double total = 0.0;
                for (const auto& c : p.components) {
                    require(c.weight >= 0.0, "hyper-Nakagami: negative weight");
                    require(c.m >= 0.5, "hyper-Nakagami: m must be >= 0.5");
                    require(c.omega > 0.0, "hyper-Nakagami: omega must be > 0");
                    total += c.weight;
                }
                require(std::abs(total - 1.0) <= 1e-12, "hyper-Nakagami: weights must sum to 1");
            },
            [](const HoytParams& p) {
                require(p.q_hoyt > 0.0 && p.q_hoyt < 1.0, "Hoyt: q_hoyt must lie in (0, 1)");
                require(p.omega > 0.0, "Hoyt: omega must be > 0");
            },
            [](const RiceParams& p) {
                require(p.n_rice > 0.0, "Rice: n_rice must be > 0");
                require(p.omega > 0.0, "Rice: omega must be > 0");
            },
            [](const KDistributionParams& p) {
                require(p.m_s >= 0.5, "K: m_s must be >= 0.5");
                require(p.omega_s > 0.0, "K: omega_s must be > 0");
            },
            [](const GeneralizedKParams& p) {
                require(p.m >= 0.5, "generalized-K: m must be >= 0.5");
                require(p.m_s >= 0.5, "generalized-K: m_s must be >= 0.5");
                require(p.omega_s > 0.0, "generalized-K: omega_s must be > 0");
            },
            [](const NakagamiLognormalParams& p) {
                require(p.m >= 0.5, "Nakagami-lognormal: m must be >= 0.5");
                require(p.sigma_db > 0.0, "Nakagami-lognormal: sigma_db must be > 0");
                require(std::isfinite(p.mu_db), "Nakagami-lognormal: mu_db must be finite");
                require(p.hermite_order >= 1 && p.hermite_order <= 200,
                        "Nakagami-lognormal: hermite_order must lie in [1, 200]");
            },
            [](const NakagamiWeibullParams& p) {
                require(p.xi > 0.0, "Nakagami-Weibull: xi must be > 0");
                require(p.m_s >= 0.5, "Nakagami-Weibull: m_s must be >= 0.5");
                require(p.omega > 0.0, "Nakagami-Weibull: omega must be > 0");
            },
            [](const GenericFoxHParams& p) {
                require(p.k_norm > 0.0 && p.g_scale > 0.0, "generic Fox-H: k_norm and g_scale must be > 0");
                MellinBarnesSpec s = p.spec;
                s.z = 1.0;
                try {
                    s.validate();
                } catch (const Error& e) {
                    throw ParameterError(std::string("generic Fox-H: ") + e.what());
                }
            },
        },
        v);
}

double lognormal_power(double mu_db, double sigma_db, double u) {
    return std::pow(10.0, (std::sqrt(2.0) * sigma_db * u + mu_db) / 10.0);
}

// Hoyt and Rice are Nakagami mixtures with infinitely many components;
// term(k) returns the k-th one.
Component hoyt_term(const HoytParams& p, int k) {
    const double q2 = p.q_hoyt * p.q_hoyt;
    const double phi = (1.0 + q2) * (1.0 + q2) / (4.0 * q2);
    const double r = (1.0 - q2) / (1.0 + q2);
    // (2k)!/((k!)^2 4^k) r^{2k}
    const double log_psi = std::lgamma(2.0 * k + 1.0) - 2.0 * std::lgamma(k + 1.0) - k * std::log(4.0) +
                           (k > 0 ? 2.0 * k * std::log(r) : 0.0);
    const double w = 2.0 * p.q_hoyt / (1.0 + q2) * std::exp(log_psi);
    const double m = 2.0 * k + 1.0;
    return nakagami_component(w, m, m * p.omega / phi);
}

Component rice_term(const RiceParams& p, int k) {
    const double kk = p.n_rice * p.n_rice;
    const double log_w = -kk + (k > 0 ? k * std::log(kk) : 0.0) - std::lgamma(k + 1.0);
    const double m = k + 1.0;
    return nakagami_component(std::exp(log_w), m, m * p.omega / (1.0 + kk));
}

// Finite component list for the models with a closed Mellin transform.
std::vector<Component> finite_components(const FadingModel& model) {
    return std::visit(
        overloaded{
            [](const ShadowedGnmParams& p) -> std::vector<Component> {
                return {{1.0, p.omega_s / (p.beta() * p.m_s), {{p.m_s, 1.0}, {p.m, 1.0 / p.xi}}}};
            },
            [](const GnmParams& p) -> std::vector<Component> {
                return {{1.0, p.omega / p.beta(), {{p.m, 1.0 / p.xi}}}};
            },
            [](const OneSidedGaussianParams& p) -> std::vector<Component> {
                return {{1.0, 2.0 * p.omega, {{0.5, 1.0}}}};
            },
            [](const RayleighParams& p) -> std::vector<Component> {
                return {{1.0, p.omega, {{1.0, 1.0}}}};
            },
            [](const NakagamiParams& p) -> std::vector<Component> {
                return {nakagami_component(1.0, p.m, p.omega)};
            },
            [](const WeibullParams& p) -> std::vector<Component> {
                const double w = std::tgamma(1.0 + 1.0 / p.xi);
                return {{1.0, p.omega / w, {{1.0, 1.0 / p.xi}}}};
            },
            [](const HyperNakagamiParams& p) -> std::vector<Component> {
                std::vector<Component> out;
                for (const auto& c : p.components) out.push_back(nakagami_component(c.weight, c.m, c.omega));
                return out;
            },
            [](const KDistributionParams& p) -> std::vector<Component> {
                return {{1.0, p.omega_s / p.m_s, {{p.m_s, 1.0}, {1.0, 1.0}}}};
            },
            [](const GeneralizedKParams& p) -> std::vector<Component> {
                return {{1.0, p.omega_s / (p.m_s * p.m), {{p.m_s, 1.0}, {p.m, 1.0}}}};
            },
            [](const NakagamiLognormalParams& p) -> std::vector<Component> {
                const auto rule = hermite_rule(p.hermite_order);
                std::vector<Component> out;
                for (int i = 0; i < rule.order; ++i) {
                    out.push_back(nakagami_component(rule.weights[i] / std::sqrt(kPi), p.m,
                                                     lognormal_power(p.mu_db, p.sigma_db, rule.nodes[i])));
                }
                return out;
            },
            [](const NakagamiWeibullParams& p) -> std::vector<Component> {
                const double w = std::tgamma(1.0 + 1.0 / p.xi);
                return {{1.0, p.omega / (p.m_s * w), {{p.m_s, 1.0}, {1.0, 1.0 / p.xi}}}};
            },
            [](const auto&) -> std::vector<Component> { return {}; },
        },
        model.params());
}

// M(s) = 2/prod Gamma(b_j) H^{J,1}_{1,J}[lambda^{-p}/s^2 | (1,2); (b_j, p beta_j)]
// dM/ds = (2/s) * same integral with an extra factor t in the kernel.
MgfPair component_mgf(const Component& c, double s, int p, const MgfOptions& opts) {
    // R^p = lambda^{p/2} Y with Y ~ Gamma(b, 1): elementary
    if (!opts.force_contour && c.factors.size() == 1 && c.factors[0].scale * p == 2.0) {
        const double b = c.factors[0].shift;
        const double theta = std::pow(c.lambda, 0.5 * p);
        const double base = 1.0 + theta * s;
        const double mgf = std::exp(-b * std::log1p(theta * s));
        return {mgf, -b * theta * mgf / base, 0.0};
    }
    MellinBarnesSpec spec;
    spec.upper = {{1.0, 2.0}};
    spec.n = 1;
    double log_pref = std::log(2.0);
    for (const auto& f : c.factors) {
        spec.lower.push_back({f.shift, p * f.scale});
        log_pref -= std::lgamma(f.shift);
    }
    spec.m = spec.lower.size();
    spec.z = std::exp(-p * std::log(c.lambda) - 2.0 * std::log(s));
    EvalOptions eo;
    // the derivative is recovered as (const/s) * (t-weighted H), so the
    // absolute floor has to shrink with s
    eo.abs_tol = opts.abs_tol * std::min(1.0, s);
    eo.rel_tol = opts.rel_tol;
    eo.log_prefactor = log_pref;
    const auto [h, ht] = eval_fox_h_with_t(spec, eo);
    return {h.value, 2.0 / s * ht.value, h.error_estimate + 2.0 / s * ht.error_estimate};
}

template <class Term>
MgfPair series_mgf(Term term, double s, int p, const MgfOptions& opts, int min_terms) {
    MgfPair acc{0.0, 0.0, 0.0};
    const int cap = opts.series_terms > 0 ? opts.series_terms : 200;
    for (int k = 0; k < cap; ++k) {
        const Component c = term(k);
        const MgfPair v = component_mgf(c, s, p, opts);
        const double add = c.weight * v.mgf;
        acc.mgf += add;
        acc.dmgf += c.weight * v.dmgf;
        acc.error_estimate += c.weight * v.error_estimate;
        if (opts.series_terms == 0 && k >= min_terms && std::abs(add) < 1e-12 * std::abs(acc.mgf) &&
            std::abs(c.weight * v.dmgf) < 1e-12 * std::abs(acc.dmgf)) {
            return acc;
        }
    }
    if (opts.series_terms == 0) {
        throw ConvergenceError("mixture series did not settle within 200 terms");
    }
    return acc;
}

void check_mgf_args(double s, int p) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("MGF argument s must be positive and finite");
    if (p != 1 && p != 2) throw DomainError("MGF exponent p must be 1 or 2");
}

MgfPair generic_fox_mgf(const GenericFoxHParams& g, double s, int p, const MgfOptions& opts) {
    // M(s) = (K/G) H^{m,n+1}_{P+1,Q}[G^p/s | (1,1), (a_j+alpha_j, p alpha_j); (b_j+beta_j, p beta_j)]
    MellinBarnesSpec spec;
    spec.upper.push_back({1.0, 1.0});
    for (const auto& a : g.spec.upper) spec.upper.push_back({a.shift + a.scale, p * a.scale});
    for (const auto& b : g.spec.lower) spec.lower.push_back({b.shift + b.scale, p * b.scale});
    spec.m = g.spec.m;
    spec.n = g.spec.n + 1;
    spec.z = std::pow(g.g_scale, p) / s;
    EvalOptions eo;
    eo.abs_tol = opts.abs_tol * std::min(1.0, s);
    eo.rel_tol = opts.rel_tol;
    eo.log_prefactor = std::log(g.k_norm / g.g_scale);
    const auto [h, ht] = eval_fox_h_with_t(spec, eo);
    return {h.value, ht.value / s, h.error_estimate + ht.error_estimate / s};
}

double nakagami_pdf(double m, double omega, double r) {
    if (r == 0.0) return m == 0.5 ? std::sqrt(2.0 / (kPi * omega)) : 0.0;
    return std::exp(std::log(2.0) + m * std::log(m / omega) - std::lgamma(m) + (2.0 * m - 1.0) * std::log(r) -
                    m * r * r / omega);
}

// exp(-a) I0(x) without overflow for large x
double scaled_bessel_i0(double x, double a) {
    if (x < 600.0) return std::exp(-a) * std::cyl_bessel_i(0.0, x);
    // I0(x) ~ e^x / sqrt(2 pi x) (1 + 1/(8x) + 9/(128x^2))
    return std::exp(x - a) / std::sqrt(2.0 * kPi * x) * (1.0 + 1.0 / (8.0 * x) + 9.0 / (128.0 * x * x));
}

// exp(log_prefix) K_nu(x), falling back to the small-argument form of
// K_nu when it overflows.
double scaled_bessel_k(double nu, double x, double log_prefix) {
    nu = std::abs(nu);
    if (x > 500.0) {
        // K_nu(x) ~ sqrt(pi/(2x)) e^{-x} (1 + (mu-1)/(8x) + (mu-1)(mu-9)/(2(8x)^2)), mu = 4 nu^2
        const double mu = 4.0 * nu * nu, y = 8.0 * x;
        const double series = 1.0 + (mu - 1.0) / y + (mu - 1.0) * (mu - 9.0) / (2.0 * y * y);
        return std::exp(log_prefix + 0.5 * std::log(kPi / (2.0 * x)) - x) * series;
    }
    const double kv = std::cyl_bessel_k(nu, x);
    if (std::isfinite(kv) && kv > 0.0) return std::exp(log_prefix) * kv;
    const double log_kv = nu > 0.0 ? std::lgamma(nu) + (nu - 1.0) * std::log(2.0) - nu * std::log(x)
                                   : std::log(std::log(2.0 / x) - kEulerGamma);
    return std::exp(log_prefix + log_kv);
}

double shadowed_pdf(double m, double xi, double m_s, double omega_s, double beta, double r) {
    if (r == 0.0) return 0.0;
    const double b = beta * m_s * r * r / omega_s;
    // the density behaves like r^{2 m xi - 1} at the origin
    if (b < 1e-250) return 0.0;
    const double g = extended_incomplete_gamma(m - m_s / xi, 0.0, b, 1.0 / xi);
    return std::exp(std::log(2.0) - std::lgamma(m_s) - std::lgamma(m) + m_s * std::log(beta * m_s / omega_s) +
                    (2.0 * m_s - 1.0) * std::log(r)) *
           g;
}

double mean_power_scale(const FadingModel& model) {
    return std::visit(
        overloaded{
            [](const ShadowedGnmParams& p) { return p.omega_s; },
            [](const GnmParams& p) { return p.omega; },
            [](const OneSidedGaussianParams& p) { return p.omega; },
            [](const RayleighParams& p) { return p.omega; },
            [](const NakagamiParams& p) { return p.omega; },
            [](const WeibullParams& p) { return p.omega; },
            [](const HyperNakagamiParams& p) {
                double s = 0.0;
                for (const auto& c : p.components) s += c.weight * c.omega;
                return s;
            },
            [](const HoytParams& p) { return p.omega; },
            [](const RiceParams& p) { return p.omega; },
            [](const KDistributionParams& p) { return p.omega_s; },
            [](const GeneralizedKParams& p) { return p.omega_s; },
            [](const NakagamiLognormalParams& p) {
                return lognormal_power(p.mu_db, p.sigma_db, 0.0) *
                       std::exp(std::pow(std::log(10.0) * p.sigma_db / 10.0, 2) / 2.0);
            },
            [](const NakagamiWeibullParams& p) { return p.omega; },
            [](const GenericFoxHParams& p) { return 1.0 / (p.g_scale * p.g_scale); },
        },
        model.params());
}

// One Gauss-Kronrod cell. Cells that are already negligible next to the
// running total skip adaptive refinement; their absolute noise would
// otherwise drive subdivision to the depth cap.
template <class F>
double kronrod_cell(F& f, double lo, double hi, double total, double& l1) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const double v = gauss_kronrod<double, 61>::integrate(f, lo, hi, 0, 0.0, &err, &l1);
    if (err <= 1e-14 * std::abs(total)) return v;
    return gauss_kronrod<double, 61>::integrate(f, lo, hi, 10, 1e-11, nullptr, &l1);
}

// int_0^inf f(r) dr for pdf-weighted integrands. Below a quarter of the
// scale the walk runs leftwards in u = ln r, where r f(r) decays
// geometrically even for singular pdfs; above it, growing cells.
template <class F>
double integrate_half_line(F f, double scale) {
    double a = 0.25 * scale;
    double total = 0.0;
    {
        auto g = [&](double u) {
            const double r = std::exp(u);
            return r > 0.0 ? r * f(r) : 0.0;
        };
        double u = std::log(a);
        int quiet = 0;
        for (int i = 0; i < 800 && std::exp(u) > 0.0; ++i) {
            double l1 = 0.0;
            total += kronrod_cell(g, u - 1.0, u, total, l1);
            u -= 1.0;
            if (l1 <= 1e-17 * std::abs(total)) {
                if (++quiet >= 3) break;
            } else {
                quiet = 0;
            }
        }
    }
    double width = a;
    int quiet = 0;
    for (int i = 0; i < 200; ++i) {
        double l1 = 0.0;
        total += kronrod_cell(f, a, a + width, total, l1);
        a += width;
        width *= 1.5;
        if (l1 <= 1e-15 * std::abs(total)) {
            if (++quiet >= 3) return total;
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("half-line quadrature did not settle");
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

double GnmParams::beta() const { return std::exp(std::lgamma(m + 1.0 / xi) - std::lgamma(m)); }
double ShadowedGnmParams::beta() const { return std::exp(std::lgamma(m + 1.0 / xi) - std::lgamma(m)); }

FadingModel::FadingModel(FadingVariant params) : params_(std::move(params)) { validate(params_); }

std::string FadingModel::family() const {
    static const char* names[] = {"shadowed_gnm",       "gnm",     "one_sided_gaussian", "rayleigh",
                                  "nakagami",           "weibull", "hyper_nakagami",     "hoyt",
                                  "rice",               "k",       "generalized_k",      "nakagami_lognormal",
                                  "nakagami_weibull",   "generic_fox_h"};
    return names[params_.index()];
}

bool FadingModel::sampleable() const { return !std::holds_alternative<GenericFoxHParams>(params_); }

FadingModel FadingModel::from_record(std::string_view family, const std::map<std::string, double>& kv) {
    auto get = [&](const std::string& key, std::optional<double> def = std::nullopt) {
        auto it = kv.find(key);
        if (it != kv.end()) return it->second;
        if (def) return *def;
        throw ParameterError("model '" + std::string(family) + "' is missing parameter '" + key + "'");
    };
    auto idx = [](const char* base, int i) { return std::string(base) + "_" + std::to_string(i); };
    const std::string f(family);
    if (f == "shadowed_gnm") return FadingModel(ShadowedGnmParams{get("m"), get("xi"), get("m_s"), get("omega_s")});
    if (f == "gnm") return FadingModel(GnmParams{get("m"), get("xi"), get("omega", 1.0)});
    if (f == "one_sided_gaussian") return FadingModel(OneSidedGaussianParams{get("omega", 1.0)});
    if (f == "rayleigh") return FadingModel(RayleighParams{get("omega", 1.0)});
    if (f == "nakagami") return FadingModel(NakagamiParams{get("m"), get("omega", 1.0)});
    if (f == "weibull") return FadingModel(WeibullParams{get("xi"), get("omega", 1.0)});
    if (f == "hyper_nakagami") {
        HyperNakagamiParams p;
        for (int i = 1; kv.count(idx("weight", i)); ++i) {
            p.components.push_back({get(idx("weight", i)), get(idx("m", i)), get(idx("omega", i))});
        }
        return FadingModel(p);
    }
    if (f == "hoyt") return FadingModel(HoytParams{get("q_hoyt"), get("omega", 1.0)});
    if (f == "rice") return FadingModel(RiceParams{get("n_rice"), get("omega", 1.0)});
    if (f == "k") return FadingModel(KDistributionParams{get("m_s"), get("omega_s", 1.0)});
    if (f == "generalized_k") return FadingModel(GeneralizedKParams{get("m"), get("m_s"), get("omega_s", 1.0)});
    if (f == "nakagami_lognormal") {
        const double order = get("hermite_order", 20.0);
        if (order != std::floor(order)) throw ParameterError("hermite_order must be an integer");
        return FadingModel(NakagamiLognormalParams{get("m"), get("mu_db"), get("sigma_db"), static_cast<int>(order)});
    }
    if (f == "nakagami_weibull") return FadingModel(NakagamiWeibullParams{get("xi"), get("m_s"), get("omega", 1.0)});
    if (f == "generic_fox_h") {
        GenericFoxHParams p;
        p.k_norm = get("k_norm");
        p.g_scale = get("g_scale");
        for (int i = 1; kv.count(idx("a", i)); ++i) p.spec.upper.push_back({get(idx("a", i)), get(idx("alpha", i))});
        for (int i = 1; kv.count(idx("b", i)); ++i) p.spec.lower.push_back({get(idx("b", i)), get(idx("beta", i))});
        const double m = get("order_m"), n = get("order_n", 0.0);
        if (m < 0 || n < 0 || m != std::floor(m) || n != std::floor(n)) {
            throw ParameterError("generic Fox-H: order_m and order_n must be nonnegative integers");
        }
        p.spec.m = static_cast<std::size_t>(m);
        p.spec.n = static_cast<std::size_t>(n);
        return FadingModel(p);
    }
    throw ParameterError("unknown fading family '" + f + "'");
}

double pdf(const FadingModel& model, double r) {
    if (!(r >= 0.0)) throw DomainError("pdf requires r >= 0");
    return std::visit(
        overloaded{
            [r](const ShadowedGnmParams& p) { return shadowed_pdf(p.m, p.xi, p.m_s, p.omega_s, p.beta(), r); },
            [r](const GnmParams& p) {
                if (r == 0.0) return 0.0;
                const double x = p.beta() * r * r / p.omega;
                return std::exp(std::log(2.0 * p.xi) + p.m * p.xi * std::log(p.beta() / p.omega) - std::lgamma(p.m) +
                                (2.0 * p.m * p.xi - 1.0) * std::log(r) - std::pow(x, p.xi));
            },
            [r](const OneSidedGaussianParams& p) {
                return std::sqrt(2.0 / (kPi * p.omega)) * std::exp(-r * r / (2.0 * p.omega));
            },
            [r](const RayleighParams& p) { return 2.0 * r / p.omega * std::exp(-r * r / p.omega); },
            [r](const NakagamiParams& p) { return nakagami_pdf(p.m, p.omega, r); },
            [r](const WeibullParams& p) {
                if (r == 0.0) return 0.0;
                const double w = std::tgamma(1.0 + 1.0 / p.xi);
                return 2.0 * p.xi * std::pow(w / p.omega, p.xi) * std::pow(r, 2.0 * p.xi - 1.0) *
                       std::exp(-std::pow(w * r * r / p.omega, p.xi));
            },
            [r](const HyperNakagamiParams& p) {
                double s = 0.0;
                for (const auto& c : p.components) s += c.weight * nakagami_pdf(c.m, c.omega, r);
                return s;
            },
            [r](const HoytParams& p) {
                const double q2 = p.q_hoyt * p.q_hoyt;
                const double a = (1.0 + q2) * (1.0 + q2) * r * r / (4.0 * q2 * p.omega);
                const double x = (1.0 - q2 * q2) * r * r / (4.0 * q2 * p.omega);
                return (1.0 + q2) * r / (p.q_hoyt * p.omega) * scaled_bessel_i0(x, a);
            },
            [r](const RiceParams& p) {
                const double k = p.n_rice * p.n_rice;
                const double a = k + (k + 1.0) * r * r / p.omega;
                const double x = 2.0 * r * std::sqrt(k * (k + 1.0) / p.omega);
                return 2.0 * (k + 1.0) * r / p.omega * scaled_bessel_i0(x, a);
            },
            [r](const KDistributionParams& p) {
                if (r == 0.0) return 0.0;
                const double c = p.m_s / p.omega_s;
                return scaled_bessel_k(p.m_s - 1.0, 2.0 * r * std::sqrt(c),
                                       std::log(4.0) - std::lgamma(p.m_s) + 0.5 * (p.m_s + 1.0) * std::log(c) +
                                           p.m_s * std::log(r));
            },
            [r](const GeneralizedKParams& p) {
                if (r == 0.0) return 0.0;
                const double c = p.m * p.m_s / p.omega_s;
                return scaled_bessel_k(p.m_s - p.m, 2.0 * r * std::sqrt(c),
                                       std::log(4.0) + 0.5 * (p.m + p.m_s) * std::log(c) +
                                           (p.m + p.m_s - 1.0) * std::log(r) - std::lgamma(p.m) -
                                           std::lgamma(p.m_s));
            },
            [r](const NakagamiLognormalParams& p) {
                // exact average over u ~ exp(-u^2)/sqrt(pi); independent of the Hermite order
                using boost::math::quadrature::gauss_kronrod;
                auto f = [&](double u) {
                    return std::exp(-u * u) / std::sqrt(kPi) *
                           nakagami_pdf(p.m, lognormal_power(p.mu_db, p.sigma_db, u), r);
                };
                return gauss_kronrod<double, 61>::integrate(f, -12.0, 12.0, 15, 1e-12);
            },
            [r](const NakagamiWeibullParams& p) {
                const double w = std::tgamma(1.0 + 1.0 / p.xi);
                return shadowed_pdf(1.0, p.xi, p.m_s, p.omega, w, r);
            },
            [r](const GenericFoxHParams& p) {
                if (r == 0.0) return 0.0;
                MellinBarnesSpec s = p.spec;
                s.z = p.g_scale * r;
                EvalOptions o;
                o.abs_tol = 1e-15;
                o.rel_tol = 1e-12;
                return p.k_norm * eval_fox_h(s, o).value;
            },
        },
        model.params());
}

MgfPair mgf_pair(const FadingModel& model, double s, int p, const MgfOptions& opts) {
    check_mgf_args(s, p);
    if (const auto* h = std::get_if<HoytParams>(&model.params())) {
        return series_mgf([h](int k) { return hoyt_term(*h, k); }, s, p, opts, 1);
    }
    if (const auto* rp = std::get_if<RiceParams>(&model.params())) {
        const int mode = static_cast<int>(std::ceil(rp->n_rice * rp->n_rice));
        return series_mgf([rp](int k) { return rice_term(*rp, k); }, s, p, opts, mode + 1);
    }
    if (const auto* g = std::get_if<GenericFoxHParams>(&model.params())) {
        return generic_fox_mgf(*g, s, p, opts);
    }
    MgfPair acc{0.0, 0.0, 0.0};
    for (const auto& c : finite_components(model)) {
        const MgfPair v = component_mgf(c, s, p, opts);
        acc.mgf += c.weight * v.mgf;
        acc.dmgf += c.weight * v.dmgf;
        acc.error_estimate += c.weight * v.error_estimate;
    }
    return acc;
}

double mgf_p(const FadingModel& model, double s, int p, const MgfOptions& opts) {
    return mgf_pair(model, s, p, opts).mgf;
}

double dmgf_p(const FadingModel& model, double s, int p, const MgfOptions& opts) {
    return mgf_pair(model, s, p, opts).dmgf;
}

double mgf_p_oracle(const FadingModel& model, double s, int p) {
    check_mgf_args(s, p);
    const double scale = std::sqrt(mean_power_scale(model));
    return integrate_half_line([&](double r) { return std::exp(-s * std::pow(r, p)) * pdf(model, r); }, scale);
}

double envelope_moment(const FadingModel& model, double k) {
    const double scale = std::sqrt(mean_power_scale(model));
    return integrate_half_line([&](double r) { return std::pow(r, k) * pdf(model, r); }, scale);
}

RationalXi rationalize_xi(double xi, double epsilon) {
    if (!(xi > 0.0)) throw DomainError("rationalize_xi requires xi > 0");
    if (!(epsilon > 0.0)) throw DomainError("rationalize_xi requires epsilon > 0");
    RationalXi best{std::max(1LL, std::llround(xi)), 1, epsilon};
    double best_err = std::abs(static_cast<double>(best.k) - xi);
    for (long long l = 1; l <= 10000; ++l) {
        const long long k = std::max(1LL, std::llround(xi * l));
        const double err = std::abs(static_cast<double>(k) / l - xi);
        if (err < epsilon / (static_cast<double>(l) * l)) {
            const long long g = std::gcd(k, l);
            return {k / g, l / g, epsilon};
        }
        if (err < best_err) {
            best_err = err;
            best = {k, l, epsilon};
        }
    }
    const long long g = std::gcd(best.k, best.l);
    return {best.k / g, best.l / g, epsilon};
}

MgfPair mgf_pair_meijer(const FadingModel& model, double s, int p, double epsilon) {
    check_mgf_args(s, p);
    const auto* sp = std::get_if<ShadowedGnmParams>(&model.params());
    if (!sp) throw UnsupportedError("Meijer-G MGF path is implemented for the shadowed GNM model only");
    const RationalXi rx = rationalize_xi(sp->xi, epsilon);
    const double xi = static_cast<double>(rx.k) / static_cast<double>(rx.l);
    ShadowedGnmParams q = *sp;
    q.xi = xi;
    MellinBarnesSpec fox;
    fox.upper = {{1.0, 2.0}};
    fox.n = 1;
    fox.lower = {{q.m_s, static_cast<double>(p)}, {q.m, p / xi}};
    fox.m = 2;
    const double lambda = q.omega_s / (q.beta() * q.m_s);
    fox.z = std::exp(-p * std::log(lambda) - 2.0 * std::log(s));
    const int k = static_cast<int>(rx.k);
    auto [factor, meijer] = fox_to_meijer(fox, k);
    EvalOptions eo;
    eo.log_prefactor = std::log(2.0 * factor) - std::lgamma(q.m_s) - std::lgamma(q.m);
    const auto [g, gt] = eval_fox_h_with_t(meijer, eo);
    // t = k tau on the Fox contour
    return {g.value, 2.0 / s * k * gt.value, g.error_estimate + 2.0 / s * k * gt.error_estimate};
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed) + stream * 0xD1B54A32D192ED03ULL)) {}

CounterRng::result_type CounterRng::operator()() {
    return mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Marsaglia polar method
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

double CounterRng::gamma(double shape) {
    if (!(shape > 0.0)) throw DomainError("gamma variate requires shape > 0");
    if (shape < 1.0) {
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform(), 1.0 / shape);
    }
    // Marsaglia-Tsang
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample(const FadingModel& model, CounterRng& rng) {
    auto nakagami = [&rng](double m, double omega) { return std::sqrt(omega / m * rng.gamma(m)); };
    auto gnm = [&rng](double m, double xi, double omega, double beta) {
        return std::sqrt(omega / beta) * std::pow(rng.gamma(m), 1.0 / (2.0 * xi));
    };
    return std::visit(
        overloaded{
            [&](const ShadowedGnmParams& p) {
                const double omega = p.omega_s / p.m_s * rng.gamma(p.m_s);
                return gnm(p.m, p.xi, omega, p.beta());
            },
            [&](const GnmParams& p) { return gnm(p.m, p.xi, p.omega, p.beta()); },
            [&](const OneSidedGaussianParams& p) { return std::abs(std::sqrt(p.omega) * rng.normal()); },
            [&](const RayleighParams& p) { return std::sqrt(p.omega * rng.gamma(1.0)); },
            [&](const NakagamiParams& p) { return nakagami(p.m, p.omega); },
            [&](const WeibullParams& p) { return gnm(1.0, p.xi, p.omega, std::tgamma(1.0 + 1.0 / p.xi)); },
            [&](const HyperNakagamiParams& p) {
                const double u = rng.uniform();
                double acc = 0.0;
                for (const auto& c : p.components) {
                    acc += c.weight;
                    if (u < acc) return nakagami(c.m, c.omega);
                }
                const auto& last = p.components.back();
                return nakagami(last.m, last.omega);
            },
            [&](const HoytParams& p) {
                const double q2 = p.q_hoyt * p.q_hoyt;
                const double sx = std::sqrt(p.omega / (1.0 + q2));
                const double sy = p.q_hoyt * sx;
                return std::hypot(sx * rng.normal(), sy * rng.normal());
            },
            [&](const RiceParams& p) {
                const double k = p.n_rice * p.n_rice;
                const double nu = std::sqrt(k * p.omega / (1.0 + k));
                const double sigma = std::sqrt(p.omega / (2.0 * (1.0 + k)));
                return std::hypot(nu + sigma * rng.normal(), sigma * rng.normal());
            },
            [&](const KDistributionParams& p) {
                const double omega = p.omega_s / p.m_s * rng.gamma(p.m_s);
                return std::sqrt(omega * rng.gamma(1.0));
            },
            [&](const GeneralizedKParams& p) {
                const double omega = p.omega_s / p.m_s * rng.gamma(p.m_s);
                return nakagami(p.m, omega);
            },
            [&](const NakagamiLognormalParams& p) {
                const double u = rng.normal() / std::sqrt(2.0);
                return nakagami(p.m, lognormal_power(p.mu_db, p.sigma_db, u));
            },
            [&](const NakagamiWeibullParams& p) {
                const double omega = p.omega / p.m_s * rng.gamma(p.m_s);
                return gnm(1.0, p.xi, omega, std::tgamma(1.0 + 1.0 / p.xi));
            },
            [&](const GenericFoxHParams&) -> double {
                throw UnsupportedError("generic Fox-H envelopes cannot be sampled");
            },
        },
        model.params());
}

} // namespace mgfcap
