// SPDX-License-Identifier: Apache-2.0
//
// losmimo: capacity and outage analysis for line-of-sight MIMO satellite links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef LOSMIMO_VERIFY_HPP
#define LOSMIMO_VERIFY_HPP

#include "losmimo/array_geometry.hpp"

#include <json.hpp>

#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace losmimo
{
    enum class Fault
    {
        None,
        TypeBSign // flips the sign of every type-B expectation fed to cov_f_cross
    };

    Fault parse_fault(std::string_view text);

    struct VerifyOptions
    {
        int n_T = 8;
        int n_R = 8;
        double kd = std::numbers::pi;
        double snr_db = 10.0;
        std::uint64_t trials = 100000;
        std::uint64_t master_seed = 42;
        unsigned workers = 1;
        Fault fault = Fault::None;
    };

    /// Below this many trials the statistical checks are reported as low power.
    inline constexpr std::uint64_t kLowPowerTrials = 10000;

    struct CheckResult
    {
        std::string name;
        bool statistical = false;
        bool passed = false;
        double measured = 0.0;
        double expected = 0.0;
        double deviation = 0.0; // in standard errors for statistical checks, absolute otherwise
        double tolerance = 0.0;
        std::string note;
    };

    struct VerifyReport
    {
        std::vector<CheckResult> checks;
        bool low_power = false;

        bool all_passed() const noexcept;
        nlohmann::json to_json() const;
    };

    /// Runs the oracle suite: closed-form moments against Monte Carlo,
    /// characteristic-polynomial round trips, special-function spot checks,
    /// normality-test calibration and the Gaussian outage approximation.
    VerifyReport run_verification(const VerifyOptions &options);
}

#endif
