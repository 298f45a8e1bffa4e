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

#include "losmimo/rng.hpp"

#include <cmath>
#include <numbers>

namespace losmimo
{
    namespace
    {
        constexpr std::uint32_t kMul0 = 0xD2511F53u;
        constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
        constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
        constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

        inline void round(Philox4x32::Counter &ctr, const Philox4x32::Key &key) noexcept
        {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
    }

    Philox4x32::Counter Philox4x32::encrypt(Counter ctr, Key key) noexcept
    {
        round(ctr, key);
        for (int r = 1; r < 10; ++r)
        {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
            round(ctr, key);
        }
        return ctr;
    }

    RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t trial, std::uint32_t substream) noexcept
        : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)},
          counter_{0u, substream, static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)}
    {
    }

    void RandomStream::refill() noexcept
    {
        block_ = Philox4x32::encrypt(counter_, key_);
        ++counter_[0];
        used_ = 0;
    }

    std::uint32_t RandomStream::next_u32() noexcept
    {
        if (used_ == 4)
            refill();
        return block_[static_cast<std::size_t>(used_++)];
    }

    double RandomStream::uniform() noexcept
    {
        const std::uint64_t hi = next_u32() >> 5; // 27 bits
        const std::uint64_t lo = next_u32() >> 6; // 26 bits
        return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
    }

    double RandomStream::normal() noexcept
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        // 1 - u lies in (0, 1], keeping the log finite
        const double radius = std::sqrt(-2.0 * std::log(1.0 - uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }
}
