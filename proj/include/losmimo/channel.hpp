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

#ifndef LOSMIMO_CHANNEL_HPP
#define LOSMIMO_CHANNEL_HPP

#include "losmimo/array_geometry.hpp"
#include "losmimo/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>
#include <vector>

namespace losmimo
{
    enum class ThetaLaw
    {
        UniformZeroPi,
        UniformZeroHalfPi
    };

    ThetaLaw parse_theta_law(std::string_view text);
    std::string_view to_string(ThetaLaw law);

    /// Law of the satellite directions. phi is always uniform on [0, 2 pi).
    ///
    /// The default theta ~ U[0, pi] makes the direction cosine symmetric about
    /// zero for both array axes, which is what the closed-form moments assume:
    /// E cos(x psi) = J0(x/2)^2 on the y axis and J0(x) on the z axis.
    /// UniformZeroHalfPi breaks that symmetry and is supported by the Monte
    /// Carlo harness only.
    struct AngleDistribution
    {
        ThetaLaw theta = ThetaLaw::UniformZeroPi;
    };

    struct AngleDraw
    {
        std::vector<Direction> directions;

        std::size_t size() const noexcept { return directions.size(); }
    };

    using ChannelMatrix = Eigen::MatrixXcd;
    using GramMatrix = Eigen::MatrixXcd;

    struct Spectrum
    {
        std::vector<double> eigenvalues; // descending
    };

    /// Draws n_T i.i.d. directions from the stream.
    AngleDraw sample_angles(RandomStream &rng, int n_T, AngleDistribution law = {});

    /// Reproducible draw keyed by a 64-bit seed (trial 0 of that seed's stream family).
    AngleDraw sample_angles(std::uint64_t seed, int n_T, AngleDistribution law = {});

    /// n_R x n_T line-of-sight channel; column i is the steering vector of satellite i.
    ChannelMatrix build_channel(const ArrayGeometry &geom, const AngleDraw &draw);

    /// W = H^H H / (n_R n_T). Unit-modulus entries put n_R on the diagonal of
    /// H^H H, so this is the normalisation that gives Tr W = 1.
    GramMatrix gram_normalized(const ChannelMatrix &H);

    /// Eigenvalues of a Hermitian matrix, sorted descending. Values in
    /// [-1e-10, 0) are clamped to zero; anything more negative, or a matrix
    /// that is not Hermitian to 1e-12, throws InvariantError.
    Spectrum spectrum(const GramMatrix &W);

    /// Tr(W^k) by direct multiplication, k in {1, 2, 3}.
    double trace_power(const GramMatrix &W, int k);

    /// sum_i log2(1 + snr * lambda_i) in bits/s/Hz; snr is linear P/sigma^2.
    double capacity(const Spectrum &spec, double snr);
}

#endif
