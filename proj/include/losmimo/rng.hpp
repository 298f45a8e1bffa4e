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

#ifndef LOSMIMO_RNG_HPP
#define LOSMIMO_RNG_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace losmimo
{
    /// Philox4x32-10 block cipher (Salmon et al., SC'11), bit-compatible with
    /// the Random123 reference implementation.
    struct Philox4x32
    {
        using Counter = std::array<std::uint32_t, 4>;
        using Key = std::array<std::uint32_t, 2>;

        static Counter encrypt(Counter ctr, Key key) noexcept;
    };

    inline constexpr std::string_view rng_identifier =
        "philox4x32-10 (Random123-compatible); key = master seed, counter = (block, substream, trial lo, trial hi)";

    /// Independent random stream for one Monte Carlo trial.
    ///
    /// The stream is a pure function of (master seed, trial index, substream):
    /// the seed is the Philox key and the trial index occupies the upper half
    /// of the 128-bit counter, so trials can be generated in any order on any
    /// number of threads and still reproduce bit for bit. Substreams give one
    /// trial several non-overlapping sequences.
    class RandomStream
    {
    public:
        RandomStream(std::uint64_t master_seed, std::uint64_t trial, std::uint32_t substream = 0) noexcept;

        std::uint32_t next_u32() noexcept;

        /// Uniform double in [0, 1) with 53 random bits.
        double uniform() noexcept;

        /// Uniform double in [lo, hi).
        double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

        /// Standard normal variate (Box-Muller; the second variate is cached).
        double normal() noexcept;

    private:
        void refill() noexcept;

        Philox4x32::Key key_;
        Philox4x32::Counter counter_;
        Philox4x32::Counter block_{};
        int used_ = 4;
        bool has_spare_ = false;
        double spare_ = 0.0;
    };
}

#endif
