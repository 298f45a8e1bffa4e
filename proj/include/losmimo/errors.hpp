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

#ifndef LOSMIMO_ERRORS_HPP
#define LOSMIMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace losmimo
{
    // Bad sizes, out-of-range indices, unsorted grids and the like.
    class ArgumentError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Non-finite or out-of-domain numeric input to a mathematical function.
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // A structural property that must hold (Hermitian input, PSD spectrum) does not.
    class InvariantError : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };

    // Third-order Taylor moments produced a negative capacity variance.
    class TaylorValidityError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Zero-variance samples or a vanishing normaliser.
    class DegenerateError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
