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

#include "losmimo/specfun.hpp"

#include "losmimo/errors.hpp"

#include <cmath>
#include <numbers>

namespace losmimo
{
    namespace
    {
        void require_finite(double x, const char *what)
        {
            if (!std::isfinite(x))
                throw DomainError(std::string(what) + ": argument must be finite");
        }
    }

    double bessel_j0(double x)
    {
        require_finite(x, "bessel_j0");
        // cyl_bessel_j is defined for x >= 0 only; J0 is even.
        return std::cyl_bessel_j(0.0, std::fabs(x));
    }

    double gauss_q(double x)
    {
        require_finite(x, "gauss_q");
        return 0.5 * std::erfc(x / std::numbers::sqrt2);
    }

    double log_gauss_q(double x)
    {
        require_finite(x, "log_gauss_q");
        if (x < 30.0)
            return std::log(0.5 * std::erfc(x / std::numbers::sqrt2));

        // Mills-ratio expansion: Q(x) ~ phi(x)/x * (1 - 1/x^2 + 3/x^4 - 15/x^6)
        const double x2 = x * x;
        const double series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2);
        return -0.5 * x2 - std::log(x) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
    }
}
