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

#include "mgfcap/capacity.hpp"

#include "mgfcap/error.hpp"
#include "mgfcap/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace mgfcap {

namespace {

struct Quad {
    double value = 0.0;
    double error = 0.0;
};

// One cell; cells already negligible next to the running total are not refined.
template <class F>
double kronrod_cell(F& f, double lo, double hi, double total, double rel_tol, double& err, double& l1) {
    using boost::math::quadrature::gauss_kronrod;
    const double v = gauss_kronrod<double, 31>::integrate(f, lo, hi, 0, 0.0, &err, &l1);
    if (err <= 0.1 * rel_tol * std::abs(total)) return v;
    return gauss_kronrod<double, 31>::integrate(f, lo, hi, 10, rel_tol, &err, &l1);
}

// int_0^inf g. Below `split` in t with x = split e^{-t}, which absorbs
// logarithmic endpoint behaviour; above it in cells that double in width.
template <class G>
Quad integrate_log_split(G g, double split, double rel_tol) {
    Quad q;
    auto left = [&](double t) {
        const double x = split * std::exp(-t);
        return x > 0.0 ? g(x) * x : 0.0;
    };
    int quiet = 0;
    for (double t = 0.0; t < 745.0; t += 2.0) {
        double err = 0.0, l1 = 0.0;
        q.value += kronrod_cell(left, t, t + 2.0, q.value, rel_tol, err, l1);
        q.error += err;
        if (l1 <= 1e-15 * std::abs(q.value)) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    double a = split, w = split;
    quiet = 0;
    for (int i = 0; i < 160; ++i) {
        double err = 0.0, l1 = 0.0;
        q.value += kronrod_cell(g, a, a + w, q.value, rel_tol, err, l1);
        q.error += err;
        a += w;
        w *= 2.0;
        if (l1 <= 1e-13 * std::abs(q.value)) {
            if (++quiet >= 3) {
                if (!std::isfinite(q.value)) throw ConvergenceError("capacity integral is not finite");
                return q;
            }
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("capacity integral tail did not settle");
}

void check_q(int q) {
    if (q != 1 && q != 2) throw ParameterError("C_q is defined for q = 1 or q = 2");
}

void check_s(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("C_q(s) requires finite s > 0");
}

// Sum over GCQ nodes of f; returns the N-point value and the difference to
// the rule with half as many nodes.
template <class F>
Quad gcq_sum(F f, int n) {
    auto apply = [&](const GcqRule& r) {
        double acc = 0.0;
        for (int i = 0; i < r.n; ++i) acc += r.weights[i] * f(r.nodes[i]);
        return acc;
    };
    Quad q;
    q.value = apply(gcq_rule(n));
    if (n >= 2) q.error = std::abs(q.value - apply(gcq_rule(n / 2)));
    return q;
}

constexpr double kLn2 = std::numbers::ln2;

} // namespace

double CombinerSpec::phi() const {
    const double e = 0.5 * static_cast<double>(p() - q() - 1);
    return std::pow(snr * std::pow(static_cast<double>(L), e), 1.0 / q());
}

void CombinerSpec::validate() const {
    if (L < 1) throw ParameterError("combiner needs L >= 1");
    if (!(snr > 0.0) || !std::isfinite(snr)) throw ParameterError("combiner needs finite snr > 0");
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) throw ParameterError("combiner needs bandwidth > 0");
}

std::string_view combiner_name(CombinerKind kind) { return kind == CombinerKind::EGC ? "EGC" : "MRC"; }

std::string_view method_name(Method m) {
    switch (m) {
    case Method::Adaptive: return "adaptive";
    case Method::Gcq: return "gcq";
    case Method::ClosedForm: return "closed-form";
    case Method::MonteCarlo: return "monte-carlo";
    }
    return "unknown";
}

GcqRule gcq_rule(int n) {
    if (n < 1) throw ParameterError("gcq_rule needs N >= 1");
    GcqRule r;
    r.n = n;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double pi = std::numbers::pi;
    for (int i = 1; i <= n; ++i) {
        const double phase = (2.0 * i - 1.0) * pi / (2.0 * n);
        const double theta = 0.25 * pi * std::cos(phase) + 0.25 * pi;
        const double c = std::cos(theta);
        r.nodes[i - 1] = std::tan(theta);
        r.weights[i - 1] = pi * pi * std::sin(phase) / (4.0 * n * c * c);
    }
    return r;
}

double aux_c(int q, double s) {
    check_q(q);
    check_s(s);
    return q == 1 ? exp_integral_ei(-s) : 2.0 * cosine_integral_ci(s);
}

MellinBarnesSpec aux_c_spec(int q, double s) {
    check_q(q);
    check_s(s);
    MellinBarnesSpec sp;
    sp.upper = {{1.0, 1.0}, {1.0, 1.0}, {1.0, static_cast<double>(q)}};
    sp.lower = {{1.0, 1.0}, {0.0, 1.0}};
    sp.m = 1;
    sp.n = 2;
    sp.z = std::pow(s, -q);
    return sp;
}

double aux_c_fox(int q, double s) { return -eval_fox_h(aux_c_spec(q, s)).value; }

double aux_c_meijer(int q, double s) {
    auto [factor, g] = fox_to_meijer(aux_c_spec(q, s), 1);
    return -factor * eval_meijer_g(g).value;
}

CapacityPoint capacity_joint(const JointMgf& joint, const CombinerSpec& comb, const IntegrationMode& mode) {
    comb.validate();
    if (!joint) throw ParameterError("joint MGF callback is empty");
    const int q = comb.q();
    const double phi = comb.phi();
    const double scale = comb.bandwidth / kLn2;
    // integrand in x = Phi s: C_q(x / Phi) * dM/dx
    auto g = [&](double x) {
        const auto [mv, dm] = joint(x);
        (void)mv;
        if (!std::isfinite(dm)) throw ConvergenceError("joint MGF derivative is not finite");
        return aux_c(q, x / phi) * dm;
    };

    CapacityPoint out;
    out.method = mode.method;
    Quad r;
    if (mode.method == Method::Adaptive) {
        r = integrate_log_split(g, 1.0, mode.rel_tol);
    } else if (mode.method == Method::Gcq) {
        if (mode.gcq_literal) {
            r = gcq_sum([&](double s) { return phi * g(phi * s); }, mode.gcq_n);
        } else {
            r = gcq_sum([&](double u) { return 3.0 * u * u * g(u * u * u); }, mode.gcq_n);
        }
    } else {
        throw ParameterError("capacity_joint supports the adaptive and gcq methods");
    }
    out.value = scale * r.value;
    out.error_estimate = scale * r.error;
    if (!std::isfinite(out.value)) throw ConvergenceError("capacity is not finite");
    return out;
}

CapacityPoint capacity_independent(const std::vector<FadingModel>& models, const CombinerSpec& comb,
                                   const IntegrationMode& mode, const MgfOptions& mgf) {
    comb.validate();
    if (static_cast<int>(models.size()) != comb.L) {
        throw ParameterError("capacity_independent needs one model per branch (" + std::to_string(models.size()) +
                             " given, L = " + std::to_string(comb.L) + ")");
    }
    // identical branches share one MGF evaluation
    std::vector<const FadingModel*> unique;
    std::vector<int> count;
    for (const auto& m : models) {
        std::size_t k = 0;
        while (k < unique.size() && !(*unique[k] == m)) ++k;
        if (k == unique.size()) {
            unique.push_back(&m);
            count.push_back(0);
        }
        ++count[k];
    }
    const int p = comb.p();
    JointMgf joint = [&](double x) {
        std::vector<MgfPair> v(unique.size());
        for (std::size_t k = 0; k < unique.size(); ++k) v[k] = mgf_pair(*unique[k], x, p, mgf);
        double prod = 1.0, deriv = 0.0;
        for (std::size_t k = 0; k < unique.size(); ++k) {
            double term = count[k] * v[k].dmgf * std::pow(v[k].mgf, count[k] - 1);
            for (std::size_t j = 0; j < unique.size(); ++j) {
                if (j != k) term *= std::pow(v[j].mgf, count[j]);
            }
            deriv += term;
            prod *= std::pow(v[k].mgf, count[k]);
        }
        return std::pair{prod, deriv};
    };
    return capacity_joint(joint, comb, mode);
}

double ei_transform(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("ei_transform needs a > 0 and b > 0");
    const auto spec = MellinBarnesSpec::meijer(1, 3, {0.0, 0.0, 1.0 - b}, {0.0, -1.0}, a);
    EvalOptions o;
    o.log_prefactor = -std::lgamma(b);
    return -eval_meijer_g(spec, o).value;
}

double ei_transform_quadrature(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("ei_transform needs a > 0 and b > 0");
    auto g = [&](double u) { return exp_integral_ei(-u) * std::pow(1.0 + a * u, -b); };
    return integrate_log_split(g, 1.0, 1e-11).value;
}

CapacityPoint capacity_mrc_nakagami_closed(double m, int L, double gamma_bar, double bandwidth) {
    if (!(m >= 0.5)) throw ParameterError("closed form needs m >= 0.5");
    if (L < 1) throw ParameterError("closed form needs L >= 1");
    if (!(gamma_bar > 0.0)) throw ParameterError("closed form needs gamma_bar > 0");
    const double mL = m * L;
    const auto spec = MellinBarnesSpec::meijer(1, 3, {0.0, 0.0, -mL}, {0.0, -1.0}, gamma_bar / m);
    EvalOptions o;
    o.log_prefactor = -std::lgamma(mL + 1.0);
    const auto g = eval_meijer_g(spec, o);
    const double k = bandwidth * L * gamma_bar / kLn2;
    return {k * g.value, Method::ClosedForm, k * g.error_estimate};
}

CapacityPoint capacity_mrc_nakagami_integral(double m, int L, double gamma_bar, double bandwidth) {
    if (!(m >= 0.5)) throw DomainError("needs m >= 0.5");
    if (L < 1) throw ParameterError("needs L >= 1");
    if (!(gamma_bar > 0.0)) throw DomainError("needs gamma_bar > 0");
    EvalOptions o;
    o.log_prefactor = -std::lgamma(m);
    o.abs_tol = 1e-16;
    o.rel_tol = 1e-12;
    auto g = [&](double s) {
        const double z = m / (gamma_bar * s);
        const double g22 = eval_meijer_g(MellinBarnesSpec::meijer(2, 1, {1.0, 0.0}, {1.0, m}, z), o).value;
        double prod = 1.0;
        if (L > 1) {
            const double g11 = eval_meijer_g(MellinBarnesSpec::meijer(1, 1, {1.0}, {m}, z), o).value;
            prod = std::pow(g11, L - 1);
        }
        return exp_integral_ei(-s) / s * g22 * prod;
    };
    const Quad r = integrate_log_split(g, 1.0, 1e-10);
    const double k = bandwidth * L / kLn2;
    return {k * r.value, Method::Adaptive, k * r.error};
}

double jensen_bound(const std::vector<FadingModel>& models, const CombinerSpec& comb) {
    comb.validate();
    if (static_cast<int>(models.size()) != comb.L) throw ParameterError("jensen_bound needs one model per branch");
    double mean_snr = 0.0;
    if (comb.kind == CombinerKind::MRC) {
        for (const auto& m : models) mean_snr += envelope_moment(m, 2.0);
        mean_snr *= comb.snr;
    } else {
        // E[(sum R)^2] / L with independent branches
        double second = 0.0, first = 0.0, first_sq = 0.0;
        for (const auto& m : models) {
            const double e1 = envelope_moment(m, 1.0);
            second += envelope_moment(m, 2.0);
            first += e1;
            first_sq += e1 * e1;
        }
        mean_snr = comb.snr / comb.L * (second + first * first - first_sq);
    }
    return comb.bandwidth * std::log2(1.0 + mean_snr);
}

CapacityPoint capacity_shadowed_direct(const std::vector<ShadowedGnmParams>& branches, const CombinerSpec& comb) {
    comb.validate();
    if (static_cast<int>(branches.size()) != comb.L) {
        throw ParameterError("capacity_shadowed_direct needs one parameter set per branch");
    }
    for (const auto& b : branches) FadingModel{b};  // validates
    const bool mrc = comb.kind == CombinerKind::MRC;
    const double L = comb.L;

    // Per-branch pair (derivative-type H, MGF-type H), each already divided by
    // Gamma(m_s) Gamma(m) through the log prefactor.
    auto branch_terms = [&](const ShadowedGnmParams& b, double s) {
        const double c = b.beta() * b.m_s / b.omega_s;
        MellinBarnesSpec h, hd;
        h.lower = hd.lower = {{b.m_s, 1.0}, {b.m, 1.0 / b.xi}};
        h.m = hd.m = 2;
        if (mrc) {
            h.z = hd.z = c / (comb.snr * s);
            h.upper = {{1.0, 1.0}};
            h.n = 1;
            hd.upper = {{1.0, 1.0}, {0.0, 1.0}};
            hd.lower.insert(hd.lower.begin(), GammaParam{1.0, 1.0});
            hd.m = 3;
            hd.n = 1;
        } else {
            h.z = hd.z = 4.0 * L * c / (comb.snr * s * s);
            h.upper = {{1.0, 1.0}, {0.5, 1.0}};
            hd.upper = {{0.0, 1.0}, {0.5, 1.0}};
            h.n = hd.n = 2;
        }
        EvalOptions o;
        o.log_prefactor = -std::lgamma(b.m_s) - std::lgamma(b.m);
        return std::pair{eval_fox_h(hd, o).value, eval_fox_h(h, o).value};
    };

    auto g = [&](double s) {
        std::vector<std::pair<double, double>> t;
        t.reserve(branches.size());
        for (const auto& b : branches) t.push_back(branch_terms(b, s));
        double sum = 0.0;
        for (std::size_t l = 0; l < t.size(); ++l) {
            double term = t[l].first;
            for (std::size_t k = 0; k < t.size(); ++k) {
                if (k != l) term *= t[k].second;
            }
            sum += term;
        }
        const double kernel = mrc ? exp_integral_ei(-s) : cosine_integral_ci(s);
        return kernel / s * sum;
    };
    const Quad r = integrate_log_split(g, mrc ? 1.0 / comb.snr : 1.0 / comb.phi(), 1e-10);
    const double k =
        mrc ? comb.bandwidth / kLn2 : -4.0 * comb.bandwidth / (kLn2 * std::pow(std::numbers::pi, 0.5 * L));
    return {k * r.value, Method::Adaptive, std::abs(k) * r.error};
}

} // namespace mgfcap
