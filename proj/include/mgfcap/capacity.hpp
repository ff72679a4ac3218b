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

#include "mgfcap/fading.hpp"

#include <functional>
#include <string_view>
#include <utility>
#include <vector>

namespace mgfcap {

enum class CombinerKind { EGC, MRC };

struct CombinerSpec {
    CombinerKind kind = CombinerKind::MRC;
    int L = 1;
    double snr = 1.0;        // E_s/N_0, linear
    double bandwidth = 1.0;  // W

    int p() const { return kind == CombinerKind::EGC ? 1 : 2; }
    int q() const { return kind == CombinerKind::EGC ? 2 : 1; }
    // (snr * L^{(p-q-1)/2})^{1/q}: snr for MRC, sqrt(snr/L) for EGC
    double phi() const;
    void validate() const;
};

std::string_view combiner_name(CombinerKind kind);

struct GcqRule {
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

// N-point Gauss-Chebyshev rule for int_0^inf f(s) ds after s = tan(theta).
GcqRule gcq_rule(int n);

enum class Method { Adaptive, Gcq, ClosedForm, MonteCarlo };
std::string_view method_name(Method m);

struct CapacityPoint {
    double value = 0.0;  // bits/s/Hz times W
    Method method = Method::Adaptive;
    double error_estimate = 0.0;
};

struct IntegrationMode {
    Method method = Method::Adaptive;  // Adaptive or Gcq
    int gcq_n = 50;
    // Gcq only: apply the rule in s directly instead of the graded
    // variable u with Phi s = u^3.
    bool gcq_literal = false;
    double rel_tol = 1e-10;
};

// C_q(s): Ei(-s) for q = 1, 2 Ci(s) for q = 2.
double aux_c(int q, double s);
// Same function through the Fox-H contour integral.
double aux_c_fox(int q, double s);
// Same function through its Meijer-G rewrite.
double aux_c_meijer(int q, double s);
// Spec of the Fox-H form; C_q(s) = -H[spec].
MellinBarnesSpec aux_c_spec(int q, double s);

// x -> (M(x), dM/dx) of sum_l R_l^p, evaluated at x = Phi * s.
using JointMgf = std::function<std::pair<double, double>(double)>;

CapacityPoint capacity_joint(const JointMgf& joint, const CombinerSpec& comb,
                             const IntegrationMode& mode = {});

CapacityPoint capacity_independent(const std::vector<FadingModel>& models, const CombinerSpec& comb,
                                   const IntegrationMode& mode = {}, const MgfOptions& mgf = {});

// i.i.d. Nakagami-m branches with unit mean power, MRC, gamma_bar = E_s/N_0.
CapacityPoint capacity_mrc_nakagami_closed(double m, int L, double gamma_bar, double bandwidth = 1.0);
// The single-integral Meijer-G form of the same quantity, integrated numerically.
CapacityPoint capacity_mrc_nakagami_integral(double m, int L, double gamma_bar, double bandwidth = 1.0);

// int_0^inf Ei(-u) (1 + a u)^{-b} du through the Meijer-G identity.
double ei_transform(double a, double b);
// The defining integral by adaptive quadrature.
double ei_transform_quadrature(double a, double b);

// log2(1 + E[gamma_end]) for independent branches, times W.
double jensen_bound(const std::vector<FadingModel>& models, const CombinerSpec& comb);

// Shadowed-GNM capacity written directly as products of Fox-H functions
// of s (MRC: Ei kernel, EGC: Ci kernel), integrated adaptively.
CapacityPoint capacity_shadowed_direct(const std::vector<ShadowedGnmParams>& branches,
                                       const CombinerSpec& comb);

} // namespace mgfcap
