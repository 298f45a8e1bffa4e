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

#ifndef LOSMIMO_SPECFUN_HPP
#define LOSMIMO_SPECFUN_HPP

namespace losmimo
{
    /// Bessel function of the first kind, order zero. Throws DomainError on NaN/Inf.
    double bessel_j0(double x);

    /// Standard normal tail probability Q(x) = P(Z > x). Throws DomainError on NaN/Inf.
    double gauss_q(double x);

    /// log Q(x), accurate far into both tails.
    double log_gauss_q(double x);
}

#endif
