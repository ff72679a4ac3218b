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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mgfcap/capacity.hpp"
#include "mgfcap/error.hpp"
#include "mgfcap/fading.hpp"
#include "oracle.hpp"

#include <boost/math/special_functions/expint.hpp>

#include <cmath>
#include <numbers>

using namespace mgfcap;
using oracle::rel_err;

namespace {

const ShadowedGnmParams kShadowedRef{2.0, 2.0, 3.0, 1.0};

std::vector<FadingModel> branches(const FadingModel& m, int L) { return std::vector<FadingModel>(L, m); }

// Sum of L i.i.d. Nakagami powers is Gamma(mL, 1/m): integrate log2(1 + snr g) against that density.
double nakagami_mrc_direct(double m, int L, double snr) {
    const double k = m * L;
    return oracle::de_halfline([&](double g) {
               return std::log2(1.0 + snr * g) * std::exp(k * std::log(m) + (k - 1) * std::log(g) - m * g - std::lgamma(k));
           }).first;
}

} // namespace

TEST_CASE("GCQ rule converges over the half line") {
    // the sin-weighted Chebyshev rule is not exact for constants; its error falls like N^-2
    auto err = [](int n) {
        const auto r = gcq_rule(n);
        double a = 0.0;
        for (int i = 0; i < r.n; ++i) a += r.weights[i] / (1.0 + r.nodes[i] * r.nodes[i]);
        return std::abs(a - std::numbers::pi / 2);
    };
    CHECK(err(64) < 1e-3);
    CHECK(err(128) == doctest::Approx(err(64) / 4).epsilon(0.05));
    const auto r = gcq_rule(400);
    double b = 0.0;
    for (int i = 0; i < r.n; ++i) b += r.weights[i] * std::exp(-r.nodes[i]);
    CHECK(b == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_THROWS_AS(gcq_rule(0), ParameterError);
}

TEST_CASE("combiner exponents") {
    const CombinerSpec mrc{CombinerKind::MRC, 3, 10.0, 1.0};
    const CombinerSpec egc{CombinerKind::EGC, 3, 10.0, 1.0};
    CHECK(mrc.p() == 2);
    CHECK(mrc.q() == 1);
    CHECK(egc.p() == 1);
    CHECK(egc.q() == 2);
    CHECK(mrc.phi() == doctest::Approx(10.0));
    CHECK(egc.phi() == doctest::Approx(std::sqrt(10.0 / 3.0)));
    CHECK_THROWS_AS((CombinerSpec{CombinerKind::MRC, 0, 1.0, 1.0}).validate(), ParameterError);
    CHECK_THROWS_AS((CombinerSpec{CombinerKind::MRC, 1, -1.0, 1.0}).validate(), ParameterError);
    CHECK(combiner_name(CombinerKind::EGC) == "EGC");
}

TEST_CASE("single Rayleigh branch matches e^{1/g} E1(1/g) / ln 2") {
    const auto ms = branches(FadingModel(RayleighParams{1.0}), 1);
    for (double g : {0.1, 1.0, 10.0, 1000.0}) {
        const double ref = -std::exp(1.0 / g) * boost::math::expint(-1.0 / g) / std::numbers::ln2;
        CHECK(rel_err(capacity_independent(ms, {CombinerKind::MRC, 1, g, 1.0}).value, ref) < 1e-8);
    }
    // the documented value at unit SNR
    CHECK(capacity_independent(ms, {CombinerKind::MRC, 1, 1.0, 1.0}).value == doctest::Approx(0.8603).epsilon(1e-4));
}

TEST_CASE("bandwidth scales linearly") {
    const auto ms = branches(FadingModel(RayleighParams{1.0}), 1);
    const double c1 = capacity_independent(ms, {CombinerKind::MRC, 1, 3.0, 1.0}).value;
    const double c5 = capacity_independent(ms, {CombinerKind::MRC, 1, 3.0, 5.0}).value;
    CHECK(rel_err(c5, 5.0 * c1) < 1e-12);
}

TEST_CASE("Nakagami MRC: closed form, single integral and engine against a direct oracle") {
    for (double m : {1.0, 2.5}) {
        for (int L : {1, 2}) {
            for (double g : {1.0, 10.0}) {
                CAPTURE(m);
                CAPTURE(L);
                CAPTURE(g);
                const double ref = nakagami_mrc_direct(m, L, g);
                const double closed = capacity_mrc_nakagami_closed(m, L, g).value;
                CHECK(rel_err(closed, ref) < 1e-9);
                CHECK(rel_err(capacity_mrc_nakagami_integral(m, L, g).value, closed) < 1e-7);
                const auto ms = branches(FadingModel(NakagamiParams{m, 1.0}), L);
                CHECK(rel_err(capacity_independent(ms, {CombinerKind::MRC, L, g, 1.0}).value, closed) < 1e-7);
            }
        }
    }
    CHECK(capacity_mrc_nakagami_closed(1.0, 1, 1.0).value == doctest::Approx(0.86034738227).epsilon(1e-10));
}

TEST_CASE("Ei transform: Meijer-G identity against quadrature") {
    for (auto [a, b] : {std::pair{1.0, 2.0}, {0.5, 3.0}, {2.0, 1.5}, {0.1, 4.0}}) {
        CHECK(rel_err(ei_transform(a, b), ei_transform_quadrature(a, b)) < 1e-8);
    }
    CHECK(ei_transform(1.0, 2.0) == doctest::Approx(-0.596347362323194).epsilon(1e-12));
    // support collapses as b grows; the value decays like ln(b)/b
    double prev = std::abs(ei_transform(1.0, 4.0));
    for (double b : {40.0, 400.0, 4000.0}) {
        const double v = std::abs(ei_transform(1.0, b));
        CHECK(v < prev);
        CHECK(v < 2.0 * std::log(b) / b);
        prev = v;
    }
    // plugging the identity into the single-integral form at m = 1, L = 1
    const double g = 2.0;
    CHECK(rel_err(-g / std::numbers::ln2 * ei_transform(g, 2.0), capacity_mrc_nakagami_integral(1.0, 1, g).value) <
          1e-7);
}

TEST_CASE("shadowed GNM at one branch against direct quadrature of log2(1 + snr r^2)") {
    const FadingModel m(kShadowedRef);
    for (double snr : {1.0, 100.0}) {
        const double ref =
            oracle::de_halfline([&](double r) { return std::log2(1.0 + snr * r * r) * pdf(m, r); }).first;
        for (auto kind : {CombinerKind::MRC, CombinerKind::EGC}) {
            CHECK(rel_err(capacity_independent({m}, {kind, 1, snr, 1.0}).value, ref) < 1e-7);
        }
    }
}

TEST_CASE("EGC at one branch equals MRC") {
    for (double snr : {0.5, 10.0, 1000.0}) {
        const std::vector<FadingModel> ms{FadingModel(kShadowedRef)};
        const double a = capacity_independent(ms, {CombinerKind::MRC, 1, snr, 1.0}).value;
        const double b = capacity_independent(ms, {CombinerKind::EGC, 1, snr, 1.0}).value;
        CHECK(std::abs(a - b) < 1e-8 * a);
    }
}

TEST_CASE("MRC integrand is nonnegative") {
    const FadingModel m(kShadowedRef);
    for (double s : {1e-4, 0.01, 0.3, 1.0, 5.0, 50.0}) {
        for (int L : {1, 3}) {
            // joint MGF is M^L; its derivative L M^{L-1} M'
            const auto v = mgf_pair(m, s, 2);
            const double dj = L * std::pow(v.mgf, L - 1) * v.dmgf;
            CHECK(aux_c(1, s) * dj >= 0.0);
        }
    }
}

TEST_CASE("orderings on the reference shadowed model") {
    const FadingModel m(kShadowedRef);
    double prev_snr = 0.0;
    for (double db : {0.0, 10.0, 20.0}) {
        const double snr = std::pow(10.0, db / 10);
        double prev_L = 0.0;
        for (int L : {1, 2, 3}) {
            const auto ms = branches(m, L);
            const double mrc = capacity_independent(ms, {CombinerKind::MRC, L, snr, 1.0}).value;
            const double egc = capacity_independent(ms, {CombinerKind::EGC, L, snr, 1.0}).value;
            CHECK(mrc >= egc - 1e-6);
            CHECK(mrc >= prev_L);
            CHECK(mrc <= jensen_bound(ms, {CombinerKind::MRC, L, snr, 1.0}));
            CHECK(egc <= jensen_bound(ms, {CombinerKind::EGC, L, snr, 1.0}));
            prev_L = mrc;
            if (L == 1) {
                CHECK(mrc >= prev_snr);
                prev_snr = mrc;
            }
        }
    }
}

TEST_CASE("Jensen bound") {
    // the gap closes like 1/m as Nakagami fading concentrates at R^2 = 1
    const CombinerSpec c{CombinerKind::MRC, 1, 3.0, 1.0};
    double gap[2];
    for (int i = 0; i < 2; ++i) {
        const std::vector<FadingModel> ms{FadingModel(NakagamiParams{i == 0 ? 100.0 : 1000.0, 1.0})};
        gap[i] = jensen_bound(ms, c) - capacity_independent(ms, c).value;
        CHECK(gap[i] > 0.0);
    }
    CHECK(gap[0] / gap[1] == doctest::Approx(10.0).epsilon(0.05));
    CHECK(gap[1] < 1e-3);
    CHECK(jensen_bound({FadingModel(RayleighParams{1.0})}, {CombinerKind::MRC, 1, 1.0, 1.0}) ==
          doctest::Approx(1.0).epsilon(1e-10));
    const auto ms = branches(FadingModel(kShadowedRef), 2);
    const CombinerSpec f{CombinerKind::MRC, 2, 10.0, 1.0};
    CHECK(jensen_bound(ms, f) > capacity_independent(ms, f).value);
}

TEST_CASE("GCQ against adaptive integration") {
    const auto ms = branches(FadingModel(kShadowedRef), 2);
    IntegrationMode gcq;
    gcq.method = Method::Gcq;
    IntegrationMode literal = gcq;
    literal.gcq_literal = true;
    for (auto kind : {CombinerKind::MRC, CombinerKind::EGC}) {
        const CombinerSpec c{kind, 2, 10.0, 1.0};
        const auto a = capacity_independent(ms, c);
        const auto g = capacity_independent(ms, c, gcq);
        CHECK(g.method == Method::Gcq);
        CHECK(rel_err(g.value, a.value) < 1e-3);
        CHECK(g.error_estimate >= 0.0);
        // the rule applied in s directly is much coarser at the same N
        const auto l = capacity_independent(ms, c, literal);
        CHECK(rel_err(l.value, a.value) < 5e-2);
        CHECK(rel_err(l.value, a.value) > rel_err(g.value, a.value));
    }
    // convergence with N
    const CombinerSpec c{CombinerKind::MRC, 2, 10.0, 1.0};
    const double ref = capacity_independent(ms, c).value;
    double prev = 1.0;
    for (int n : {8, 16, 32, 64}) {
        IntegrationMode mode = gcq;
        mode.gcq_n = n;
        const double e = rel_err(capacity_independent(ms, c, mode).value, ref);
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("joint-MGF hook") {
    // i.i.d. Rayleigh: joint MGF of the summed power is (1 + x)^{-L}
    const int L = 3;
    JointMgf joint = [](double x) { return std::pair{std::pow(1.0 + x, -L), -L * std::pow(1.0 + x, -L - 1)}; };
    const CombinerSpec c{CombinerKind::MRC, L, 5.0, 1.0};
    const double a = capacity_joint(joint, c).value;
    const double b = capacity_independent(branches(FadingModel(RayleighParams{1.0}), L), c).value;
    CHECK(rel_err(a, b) < 1e-9);
    CHECK(rel_err(a, nakagami_mrc_direct(1.0, L, 5.0)) < 1e-8);
}

TEST_CASE("direct Fox-H product form reconciles with the composed engine") {
    for (auto kind : {CombinerKind::MRC, CombinerKind::EGC}) {
        const CombinerSpec c{kind, 2, 10.0, 1.0};
        const double direct = capacity_shadowed_direct({kShadowedRef, kShadowedRef}, c).value;
        const double engine = capacity_independent(branches(FadingModel(kShadowedRef), 2), c).value;
        CHECK(rel_err(direct, engine) < 1e-4);
    }
}

TEST_CASE("argument checks") {
    const auto ms = branches(FadingModel(RayleighParams{1.0}), 2);
    CHECK_THROWS_AS(capacity_independent(ms, {CombinerKind::MRC, 3, 1.0, 1.0}), ParameterError);
    CHECK_THROWS_AS(capacity_mrc_nakagami_closed(0.2, 1, 1.0), ParameterError);
    CHECK_THROWS_AS(ei_transform(-1.0, 2.0), DomainError);
    IntegrationMode bad;
    bad.method = Method::MonteCarlo;
    CHECK_THROWS_AS(capacity_independent(ms, {CombinerKind::MRC, 2, 1.0, 1.0}, bad), ParameterError);
}
