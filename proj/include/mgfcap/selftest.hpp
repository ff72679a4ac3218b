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

#include <functional>
#include <string>
#include <vector>

namespace mgfcap {

struct SelftestCheck {
    std::string name;
    double measured = 0.0;   // max error over the check's grid
    double tolerance = 0.0;  // after scaling
    bool passed = false;
};

// Identity battery: C_q paths against Ei/Ci, MGFs against quadrature,
// closed form against its integral, GCQ against adaptive integration.
// Tolerances are multiplied by tolerance_scale. on_check, when set, sees
// each result as soon as it is available.
std::vector<SelftestCheck> run_selftest(double tolerance_scale = 1.0,
                                        const std::function<void(const SelftestCheck&)>& on_check = {});

} // namespace mgfcap
