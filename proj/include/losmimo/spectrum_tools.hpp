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

#ifndef LOSMIMO_SPECTRUM_TOOLS_HPP
#define LOSMIMO_SPECTRUM_TOOLS_HPP

#include "losmimo/channel.hpp"

#include <span>
#include <vector>

namespace losmimo
{
    /// P(lambda) = det(A - lambda I) = b0 lambda^n + b1 lambda^(n-1) + ... + bn,
    /// coefficients stored b0 first. b0 is always (-1)^n.
    struct CharPoly
    {
        std::vector<double> coefficients;

        int degree() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
        double operator()(double lambda) const noexcept;
    };

    /// Traces T_k = Tr A^k for k = 1..n, with n the matrix order.
    std::vector<double> trace_sequence(const Eigen::MatrixXcd &A);

    /// Characteristic polynomial from T_1..T_n through Newton's identities:
    /// b0 = (-1)^n, b_k = -(b_{k-1} T_1 + b_{k-2} T_2 + ... + b0 T_k) / k.
    CharPoly char_poly_from_traces(std::span<const double> traces);

    /// [sum lambda_i, sum lambda_i^2, ..., sum lambda_i^k_max].
    std::vector<double> power_sums(const Spectrum &spec, int k_max);

    /// Roots of a polynomial known to have only real roots, descending.
    ///
    /// Newton iteration started above the Cauchy bound converges monotonically
    /// to the largest root of a real-rooted polynomial; each root found is
    /// divided out and every root is finally polished against the undeflated
    /// polynomial. Meant as a cross-check for the eigensolver on
    /// small orders (n <= 8); monomial-basis conditioning degrades fast beyond.
    std::vector<double> real_roots(const CharPoly &poly);
}

#endif
