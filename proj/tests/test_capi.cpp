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

#include "mgfcap/mgfcap.h"

#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

namespace {

mgfcap_model* make(const char* family, std::vector<const char*> keys, std::vector<double> values) {
    mgfcap_model* m = nullptr;
    REQUIRE(mgfcap_model_create(family, keys.data(), values.data(), keys.size(), &m) == MGFCAP_OK);
    return m;
}

mgfcap_model* shadowed_ref() { return make("shadowed_gnm", {"m", "xi", "m_s", "omega_s"}, {2, 2, 3, 1}); }

} // namespace

TEST_CASE("version and status names") {
    CHECK(std::strlen(mgfcap_version()) > 0);
    CHECK(std::string(mgfcap_status_name(MGFCAP_OK)) == "ok");
    CHECK(std::string(mgfcap_status_name(MGFCAP_E_PARAMETER)) == "invalid parameter");
    CHECK(std::string(mgfcap_status_name(static_cast<mgfcap_status>(99))) == "unknown status");
}

TEST_CASE("model lifecycle") {
    mgfcap_model* m = shadowed_ref();
    const char* fam = nullptr;
    CHECK(mgfcap_model_family(m, &fam) == MGFCAP_OK);
    CHECK(std::string(fam) == "shadowed_gnm");
    CHECK(mgfcap_model_sampleable(m) == 1);
    mgfcap_model_destroy(m);
    mgfcap_model_destroy(nullptr);
}

TEST_CASE("model creation errors set the status and message") {
    mgfcap_model* m = reinterpret_cast<mgfcap_model*>(0x1);
    const char* k[] = {"m"};
    const double v[] = {0.1};
    CHECK(mgfcap_model_create("nakagami", k, v, 1, &m) == MGFCAP_E_PARAMETER);
    CHECK(m == nullptr);
    CHECK(std::string(mgfcap_last_error()).find("Nakagami") != std::string::npos);
    CHECK(mgfcap_model_create("no_such_family", nullptr, nullptr, 0, &m) == MGFCAP_E_PARAMETER);
    CHECK(mgfcap_model_create(nullptr, nullptr, nullptr, 0, &m) == MGFCAP_E_NULL);
    CHECK(mgfcap_model_create("rayleigh", nullptr, nullptr, 0, nullptr) == MGFCAP_E_NULL);
    const char* dup[] = {"m", "m"};
    const double dv[] = {1, 2};
    CHECK(mgfcap_model_create("nakagami", dup, dv, 2, &m) == MGFCAP_E_PARAMETER);
    const char* nullkey[] = {nullptr};
    CHECK(mgfcap_model_create("nakagami", nullkey, v, 1, &m) == MGFCAP_E_NULL);
}

TEST_CASE("MGF, pdf and moments") {
    mgfcap_model* m = make("rayleigh", {}, {});
    double mgf = 0, dmgf = 0;
    CHECK(mgfcap_mgf(m, 1.0, 2, &mgf, &dmgf) == MGFCAP_OK);
    CHECK(mgf == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(dmgf == doctest::Approx(-0.25).epsilon(1e-9));
    CHECK(mgfcap_mgf(m, 1.0, 2, &mgf, nullptr) == MGFCAP_OK);
    CHECK(mgfcap_mgf(m, 1.0, 2, nullptr, nullptr) == MGFCAP_OK);
    CHECK(mgfcap_mgf(m, -1.0, 2, &mgf, nullptr) == MGFCAP_E_DOMAIN);
    CHECK(mgfcap_mgf(nullptr, 1.0, 2, &mgf, nullptr) == MGFCAP_E_NULL);
    double o = 0;
    CHECK(mgfcap_mgf_oracle(m, 1.0, 2, &o) == MGFCAP_OK);
    CHECK(o == doctest::Approx(0.5).epsilon(1e-8));
    double p = 0;
    CHECK(mgfcap_pdf(m, 1.0, &p) == MGFCAP_OK);
    CHECK(p == doctest::Approx(2 * std::exp(-1.0)));
    double mom = 0;
    CHECK(mgfcap_moment(m, 2.0, &mom) == MGFCAP_OK);
    CHECK(mom == doctest::Approx(1.0));
    mgfcap_model_destroy(m);
}

TEST_CASE("auxiliary function paths") {
    double a = 0, b = 0, c = 0;
    CHECK(mgfcap_aux_c(1, 1.0, MGFCAP_AUX_DIRECT, &a) == MGFCAP_OK);
    CHECK(mgfcap_aux_c(1, 1.0, MGFCAP_AUX_FOX, &b) == MGFCAP_OK);
    CHECK(mgfcap_aux_c(1, 1.0, MGFCAP_AUX_MEIJER, &c) == MGFCAP_OK);
    CHECK(a == doctest::Approx(-0.21938393439552).epsilon(1e-12));
    CHECK(std::abs(a - b) < 1e-7);
    CHECK(std::abs(a - c) < 1e-7);
    CHECK(mgfcap_aux_c(1, 0.0, MGFCAP_AUX_DIRECT, &a) == MGFCAP_E_DOMAIN);
    CHECK(mgfcap_aux_c(1, 1.0, static_cast<mgfcap_aux_path>(7), &a) == MGFCAP_E_PARAMETER);
}

TEST_CASE("capacity through the C API") {
    mgfcap_model* m = shadowed_ref();
    const mgfcap_model* br[] = {m, m};
    mgfcap_combiner_spec comb{MGFCAP_MRC, 2, 10.0, 1.0};
    mgfcap_capacity_point a{}, g{};
    CHECK(mgfcap_capacity(br, &comb, nullptr, &a) == MGFCAP_OK);
    CHECK(a.method == MGFCAP_METHOD_ADAPTIVE);
    CHECK(a.value == doctest::Approx(4.2312326998539).epsilon(1e-9));
    mgfcap_integration mode;
    mgfcap_integration_default(&mode);
    CHECK(mode.gcq_n == 50);
    mode.method = MGFCAP_METHOD_GCQ;
    CHECK(mgfcap_capacity(br, &comb, &mode, &g) == MGFCAP_OK);
    CHECK(g.method == MGFCAP_METHOD_GCQ);
    CHECK(std::abs(g.value - a.value) < 1e-3 * a.value);

    double bound = 0;
    CHECK(mgfcap_jensen_bound(br, &comb, &bound) == MGFCAP_OK);
    CHECK(bound > a.value);

    mode.method = MGFCAP_METHOD_MONTE_CARLO;
    CHECK(mgfcap_capacity(br, &comb, &mode, &g) == MGFCAP_E_PARAMETER);
    comb.L = 0;
    CHECK(mgfcap_capacity(br, &comb, nullptr, &g) == MGFCAP_E_PARAMETER);
    comb.L = 2;
    const mgfcap_model* holes[] = {m, nullptr};
    CHECK(mgfcap_capacity(holes, &comb, nullptr, &g) == MGFCAP_E_NULL);
    comb.kind = static_cast<mgfcap_combiner_kind>(5);
    CHECK(mgfcap_capacity(br, &comb, nullptr, &g) == MGFCAP_E_PARAMETER);
    mgfcap_model_destroy(m);
}

TEST_CASE("closed form and joint callback") {
    mgfcap_capacity_point c{};
    CHECK(mgfcap_capacity_nakagami_closed(1.0, 1, 1.0, 1.0, &c) == MGFCAP_OK);
    CHECK(c.method == MGFCAP_METHOD_CLOSED_FORM);
    CHECK(c.value == doctest::Approx(0.86034738227).epsilon(1e-10));

    auto rayleigh_pair = [](void*, double x, double* mgf, double* dmgf) -> int {
        *mgf = 1.0 / (1.0 + x);
        *dmgf = -1.0 / ((1.0 + x) * (1.0 + x));
        return 0;
    };
    mgfcap_combiner_spec comb{MGFCAP_MRC, 1, 1.0, 1.0};
    mgfcap_capacity_point j{};
    CHECK(mgfcap_capacity_joint(rayleigh_pair, nullptr, &comb, nullptr, &j) == MGFCAP_OK);
    CHECK(j.value == doctest::Approx(c.value).epsilon(1e-9));

    auto failing = [](void*, double, double*, double*) -> int { return 1; };
    CHECK(mgfcap_capacity_joint(failing, nullptr, &comb, nullptr, &j) == MGFCAP_E_PARAMETER);
    CHECK(mgfcap_capacity_joint(nullptr, nullptr, &comb, nullptr, &j) == MGFCAP_E_NULL);
}

TEST_CASE("simulation through the C API") {
    mgfcap_model* m = shadowed_ref();
    const mgfcap_model* br[] = {m, m};
    mgfcap_combiner_spec comb{MGFCAP_EGC, 2, 10.0, 1.0};
    mgfcap_sim_result a{}, b{};
    CHECK(mgfcap_simulate(br, &comb, 10000, 9, 0, 1, &a) == MGFCAP_OK);
    CHECK(mgfcap_simulate(br, &comb, 10000, 9, 0, 4, &b) == MGFCAP_OK);
    CHECK(std::memcmp(&a.mean, &b.mean, sizeof a.mean) == 0);
    CHECK(a.n_samples == 10000);
    CHECK(a.std_error > 0);
    CHECK(mgfcap_simulate(br, &comb, 10000, 9, 3, 1, &a) == MGFCAP_E_PARAMETER);

    const char* k[] = {"k_norm", "g_scale", "b_1", "beta_1", "order_m"};
    const double v[] = {1, 1, 0.5, 0.5, 1};
    mgfcap_model* fox = nullptr;
    REQUIRE(mgfcap_model_create("generic_fox_h", k, v, 5, &fox) == MGFCAP_OK);
    CHECK(mgfcap_model_sampleable(fox) == 0);
    const mgfcap_model* fb[] = {fox};
    comb.L = 1;
    CHECK(mgfcap_simulate(fb, &comb, 1000, 1, 0, 1, &a) == MGFCAP_E_UNSUPPORTED);
    mgfcap_model_destroy(fox);
    mgfcap_model_destroy(m);
}

TEST_CASE("last error is per thread") {
    mgfcap_model* m = nullptr;
    CHECK(mgfcap_model_create("no_such_family", nullptr, nullptr, 0, &m) == MGFCAP_E_PARAMETER);
    const std::string here = mgfcap_last_error();
    std::string there;
    std::thread t([&] {
        double x = 0;
        mgfcap_aux_c(1, -1.0, MGFCAP_AUX_DIRECT, &x);
        there = mgfcap_last_error();
    });
    t.join();
    CHECK(here != there);
    CHECK(std::string(mgfcap_last_error()) == here);
}

TEST_CASE("selftest entry point") {
    int all = 0, calls = 0;
    auto cb = [](void* user, const char* name, double, double, int) {
        ++*static_cast<int*>(user);
        CHECK(std::strlen(name) > 0);
    };
    // a tolerance scale of zero fails every check
    CHECK(mgfcap_selftest(0.0, cb, &calls, &all) == MGFCAP_OK);
    CHECK(all == 0);
    CHECK(calls >= 5);
    CHECK(mgfcap_selftest(1.0, nullptr, nullptr, nullptr) == MGFCAP_E_NULL);
}
