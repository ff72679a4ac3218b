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

#include "mgfcap/selftest.hpp"

#include "mgfcap/capacity.hpp"
#include "mgfcap/error.hpp"
#include "mgfcap/fading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace mgfcap {

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

std::vector<SelftestCheck> run_selftest(double tolerance_scale,
                                        const std::function<void(const SelftestCheck&)>& on_check) {
    std::vector<SelftestCheck> out;
    auto record = [&](std::string name, double tol, auto body) {
        SelftestCheck c{std::move(name), 0.0, tol * tolerance_scale, false};
        try {
            c.measured = body();
            c.passed = c.measured <= c.tolerance;
        } catch (const std::exception&) {
            c.measured = std::numeric_limits<double>::infinity();
            c.passed = false;
        }
        if (on_check) on_check(c);
        out.push_back(std::move(c));
    };

    const double grid[] = {0.1, 0.25, 1.0, 4.0, 10.0};
    for (int q = 1; q <= 2; ++q) {
        const std::string k = q == 1 ? "C_MRC = Ei(-s)" : "C_EGC = 2 Ci(s)";
        record(k + ", Fox-H path", 1e-7, [&] {
            double e = 0.0;
            for (double s : grid) e = std::max(e, std::abs(aux_c_fox(q, s) - aux_c(q, s)));
            return e;
        });
        record(k + ", Meijer-G path", 1e-7, [&] {
            double e = 0.0;
            for (double s : grid) e = std::max(e, std::abs(aux_c_meijer(q, s) - aux_c(q, s)));
            return e;
        });
    }

    record("MGF vs quadrature", 1e-5, [] {
        const FadingModel models[] = {FadingModel(ShadowedGnmParams{2.0, 2.0, 3.0, 1.0}),
                                      FadingModel(NakagamiParams{2.5, 1.0}), FadingModel(RayleighParams{1.0}),
                                      FadingModel(WeibullParams{1.7, 1.0}), FadingModel(GeneralizedKParams{1.5, 2.5, 1.0})};
        double e = 0.0;
        for (const auto& m : models) {
            for (int p = 1; p <= 2; ++p) {
                for (double s : {0.25, 1.0, 4.0}) e = std::max(e, rel(mgf_p(m, s, p), mgf_p_oracle(m, s, p)));
            }
        }
        return e;
    });

    record("closed form vs integral (Nakagami MRC)", 1e-5, [] {
        double e = 0.0;
        for (auto [m, L, g] : {std::tuple{1.0, 1, 1.0}, std::tuple{2.5, 2, 10.0}}) {
            e = std::max(e, rel(capacity_mrc_nakagami_integral(m, L, g).value,
                                capacity_mrc_nakagami_closed(m, L, g).value));
        }
        return e;
    });

    record("GCQ(50) vs adaptive", 1e-3, [] {
        const std::vector<FadingModel> models(2, FadingModel(ShadowedGnmParams{2.0, 2.0, 3.0, 1.0}));
        IntegrationMode gcq;
        gcq.method = Method::Gcq;
        gcq.gcq_n = 50;
        double e = 0.0;
        for (auto kind : {CombinerKind::MRC, CombinerKind::EGC}) {
            const CombinerSpec comb{kind, 2, 10.0, 1.0};
            e = std::max(e, rel(capacity_independent(models, comb, gcq).value,
                                capacity_independent(models, comb).value));
        }
        return e;
    });
    return out;
}

} // namespace mgfcap
