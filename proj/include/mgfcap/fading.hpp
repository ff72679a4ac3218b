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

#include "mgfcap/mellin.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mgfcap {

struct GnmParams {
    double m = 1.0;
    double xi = 1.0;
    double omega = 1.0;
    double beta() const;  // Gamma(m + 1/xi) / Gamma(m)
    bool operator==(const GnmParams&) const = default;
};

struct ShadowedGnmParams {
    double m = 1.0;
    double xi = 1.0;
    double m_s = 1.0;
    double omega_s = 1.0;
    double beta() const;
    bool operator==(const ShadowedGnmParams&) const = default;
};

struct OneSidedGaussianParams { double omega = 1.0; bool operator==(const OneSidedGaussianParams&) const = default; };
struct RayleighParams { double omega = 1.0; bool operator==(const RayleighParams&) const = default; };
struct NakagamiParams { double m = 1.0; double omega = 1.0; bool operator==(const NakagamiParams&) const = default; };
struct WeibullParams { double xi = 1.0; double omega = 1.0; bool operator==(const WeibullParams&) const = default; };

struct NakagamiComponent {
    double weight = 1.0;
    double m = 1.0;
    double omega = 1.0;
    bool operator==(const NakagamiComponent&) const = default;
};
struct HyperNakagamiParams { std::vector<NakagamiComponent> components; bool operator==(const HyperNakagamiParams&) const = default; };

struct HoytParams { double q_hoyt = 0.5; double omega = 1.0; bool operator==(const HoytParams&) const = default; };
struct RiceParams { double n_rice = 1.0; double omega = 1.0; bool operator==(const RiceParams&) const = default; };
struct KDistributionParams { double m_s = 1.0; double omega_s = 1.0; bool operator==(const KDistributionParams&) const = default; };
struct GeneralizedKParams { double m = 1.0; double m_s = 1.0; double omega_s = 1.0; bool operator==(const GeneralizedKParams&) const = default; };
struct NakagamiLognormalParams {
    double m = 1.0;
    double mu_db = 0.0;
    double sigma_db = 1.0;
    int hermite_order = 20;
    bool operator==(const NakagamiLognormalParams&) const = default;
};
struct NakagamiWeibullParams { double xi = 1.0; double m_s = 1.0; double omega = 1.0; bool operator==(const NakagamiWeibullParams&) const = default; };

// pdf(r) = k_norm * H[g_scale * r] with H given by spec (spec.z ignored).
struct GenericFoxHParams {
    double k_norm = 1.0;
    double g_scale = 1.0;
    MellinBarnesSpec spec;
    bool operator==(const GenericFoxHParams&) const = default;
};

using FadingVariant =
    std::variant<ShadowedGnmParams, GnmParams, OneSidedGaussianParams, RayleighParams, NakagamiParams,
                 WeibullParams, HyperNakagamiParams, HoytParams, RiceParams, KDistributionParams,
                 GeneralizedKParams, NakagamiLognormalParams, NakagamiWeibullParams, GenericFoxHParams>;

// Immutable, validated envelope distribution.
class FadingModel {
public:
    explicit FadingModel(FadingVariant params);

    const FadingVariant& params() const { return params_; }
    std::string family() const;
    bool sampleable() const;
    bool operator==(const FadingModel& o) const { return params_ == o.params_; }

    // Keyed-record construction; parameter names follow the config format
    // (m, xi, m_s, omega_s, omega, q_hoyt, n_rice, mu_db, sigma_db, ...).
    static FadingModel from_record(std::string_view family, const std::map<std::string, double>& kv);

private:
    FadingVariant params_;
};

struct MgfOptions {
    int series_terms = 0;  // 0: adaptive truncation for Hoyt/Rice
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    // skip the elementary Gamma-law shortcut and always integrate the contour
    bool force_contour = false;
};

struct MgfPair {
    double mgf = 1.0;
    double dmgf = 0.0;  // d/ds
    double error_estimate = 0.0;
};

double pdf(const FadingModel& model, double r);
double mgf_p(const FadingModel& model, double s, int p, const MgfOptions& opts = {});
double dmgf_p(const FadingModel& model, double s, int p, const MgfOptions& opts = {});
// Both on one contour per mixture component.
MgfPair mgf_pair(const FadingModel& model, double s, int p, const MgfOptions& opts = {});
// int_0^inf exp(-s r^p) pdf(r) dr by adaptive quadrature.
double mgf_p_oracle(const FadingModel& model, double s, int p);

// E[R^k] by quadrature of the pdf.
double envelope_moment(const FadingModel& model, double k);

// Meijer-G path for ShadowedGNM with xi replaced by its rational
// approximation k/l. Other variants throw UnsupportedError.
MgfPair mgf_pair_meijer(const FadingModel& model, double s, int p, double epsilon = 1e-2);

struct RationalXi {
    long long k = 1;
    long long l = 1;
    double epsilon = 1e-2;
};
RationalXi rationalize_xi(double xi, double epsilon = 1e-2);

// Counter-based generator: the i-th output of stream (seed, index) is a
// fixed hash, so any partition of the work reproduces the same draws.
class CounterRng {
public:
    using result_type = std::uint64_t;
    CounterRng(std::uint64_t seed, std::uint64_t stream);
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()();
    double uniform();   // (0, 1)
    double normal();    // N(0, 1)
    double gamma(double shape);  // Gamma(shape, 1)

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

double sample(const FadingModel& model, CounterRng& rng);

} // namespace mgfcap
