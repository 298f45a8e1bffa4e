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

#include "losmimo/spectrum_tools.hpp"

#include "losmimo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace losmimo
{
    namespace
    {
        // value and derivative by Horner
        std::pair<double, double> horner(const std::vector<double> &c, double x)
        {
            double p = c.front();
            double dp = 0.0;
            for (std::size_t i = 1; i < c.size(); ++i)
            {
                dp = dp * x + p;
                p = p * x + c[i];
            }
            return {p, dp};
        }
    }

    double CharPoly::operator()(double lambda) const noexcept
    {
        double p = 0.0;
        for (double c : coefficients)
            p = p * lambda + c;
        return p;
    }

    std::vector<double> trace_sequence(const Eigen::MatrixXcd &A)
    {
        if (A.rows() != A.cols() || A.rows() == 0)
            throw ArgumentError("trace_sequence: matrix must be square and nonempty");
        std::vector<double> traces;
        traces.reserve(static_cast<std::size_t>(A.rows()));
        Eigen::MatrixXcd power = A;
        for (Eigen::Index k = 1; k <= A.rows(); ++k)
        {
            if (k > 1)
                power = power * A;
            traces.push_back(power.trace().real());
        }
        return traces;
    }

    CharPoly char_poly_from_traces(std::span<const double> traces)
    {
        if (traces.empty())
            throw ArgumentError("char_poly_from_traces: trace list is empty");

        const std::size_t n = traces.size();
        CharPoly poly;
        auto &b = poly.coefficients;
        b.assign(n + 1, 0.0);
        b[0] = n % 2 == 0 ? 1.0 : -1.0;
        for (std::size_t k = 1; k <= n; ++k)
        {
            double acc = 0.0;
            for (std::size_t i = 1; i <= k; ++i)
                acc += b[k - i] * traces[i - 1];
            b[k] = -acc / static_cast<double>(k);
        }
        return poly;
    }

    std::vector<double> power_sums(const Spectrum &spec, int k_max)
    {
        if (k_max < 1)
            throw ArgumentError("power_sums: k_max must be >= 1");
        std::vector<double> sums(static_cast<std::size_t>(k_max), 0.0);
        for (double lambda : spec.eigenvalues)
        {
            double power = 1.0;
            for (auto &s : sums)
            {
                power *= lambda;
                s += power;
            }
        }
        return sums;
    }

    std::vector<double> real_roots(const CharPoly &poly)
    {
        if (poly.coefficients.empty() || poly.coefficients.front() == 0.0)
            throw ArgumentError("real_roots: leading coefficient must be nonzero");

        const int n = poly.degree();
        std::vector<double> monic = poly.coefficients;
        for (double &c : monic)
            c /= poly.coefficients.front();

        // Newton from above the Cauchy bound converges monotonically to the
        // largest root; each root is divided out before the next search.
        std::vector<double> roots;
        roots.reserve(static_cast<std::size_t>(n));
        std::vector<double> rest = monic;
        for (int r = 0; r < n; ++r)
        {
            double bound = 0.0;
            for (std::size_t i = 1; i < rest.size(); ++i)
                bound = std::max(bound, std::fabs(rest[i]));
            double x = bound + 1.0;
            for (int iter = 0; iter < 5000; ++iter)
            {
                const auto [p, dp] = horner(rest, x);
                if (p == 0.0 || dp == 0.0)
                    break;
                const double step = p / dp;
                const double next = x - step;
                if (!(next < x) || std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(x)))
                {
                    x = std::min(x, next);
                    break;
                }
                x = next;
            }
            roots.push_back(x);

            // synthetic division by (lambda - x)
            std::vector<double> quotient(rest.size() - 1);
            double carry = 0.0;
            for (std::size_t i = 0; i + 1 < rest.size(); ++i)
            {
                carry = carry * x + rest[i];
                quotient[i] = carry;
            }
            rest = std::move(quotient);
        }

        for (double &x : roots)
        {
            for (int iter = 0; iter < 3; ++iter)
            {
                const auto [p, dp] = horner(monic, x);
                if (dp == 0.0)
                    break;
                const double next = x - p / dp;
                // near a close pair a full Newton step can jump to the neighbour
                if (!std::isfinite(next) || std::fabs(horner(monic, next).first) >= std::fabs(p))
                    break;
                x = next;
            }
        }

        std::sort(roots.begin(), roots.end(), std::greater<>());
        return roots;
    }
}
