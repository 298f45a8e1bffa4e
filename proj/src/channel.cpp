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

#include "losmimo/channel.hpp"

#include "losmimo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace losmimo
{
    namespace
    {
        constexpr double kHermitianTol = 1e-12;
        constexpr double kClampTol = 1e-10;
    }

    ThetaLaw parse_theta_law(std::string_view text)
    {
        if (text == "pi" || text == "uniform-0-pi")
            return ThetaLaw::UniformZeroPi;
        if (text == "half-pi" || text == "uniform-0-half-pi")
            return ThetaLaw::UniformZeroHalfPi;
        throw ArgumentError("unknown theta law '" + std::string(text) + "' (expected pi or half-pi)");
    }

    std::string_view to_string(ThetaLaw law)
    {
        return law == ThetaLaw::UniformZeroPi ? "uniform-0-pi" : "uniform-0-half-pi";
    }

    AngleDraw sample_angles(RandomStream &rng, int n_T, AngleDistribution law)
    {
        if (n_T < 1)
            throw ArgumentError("sample_angles: n_T must be >= 1");

        const double theta_max = law.theta == ThetaLaw::UniformZeroPi ? std::numbers::pi : 0.5 * std::numbers::pi;
        AngleDraw draw;
        draw.directions.resize(static_cast<std::size_t>(n_T));
        for (auto &d : draw.directions)
        {
            d.theta = rng.uniform(0.0, theta_max);
            d.phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
        return draw;
    }

    AngleDraw sample_angles(std::uint64_t seed, int n_T, AngleDistribution law)
    {
        RandomStream rng(seed, 0);
        return sample_angles(rng, n_T, law);
    }

    ChannelMatrix build_channel(const ArrayGeometry &geom, const AngleDraw &draw)
    {
        const auto n_R = static_cast<Eigen::Index>(geom.n_elements());
        const auto n_T = static_cast<Eigen::Index>(draw.size());
        ChannelMatrix H(n_R, n_T);
        for (Eigen::Index i = 0; i < n_T; ++i)
        {
            const double psi = direction_cosine(geom, draw.directions[static_cast<std::size_t>(i)]);
            const ComplexVector column = steering_vector(geom, psi);
            for (Eigen::Index m = 0; m < n_R; ++m)
                H(m, i) = column[static_cast<std::size_t>(m)];
        }
        return H;
    }

    GramMatrix gram_normalized(const ChannelMatrix &H)
    {
        if (H.size() == 0)
            throw ArgumentError("gram_normalized: empty channel matrix");
        const double scale = 1.0 / static_cast<double>(H.rows() * H.cols());
        GramMatrix W = H.adjoint() * H;
        W *= scale;
        return W;
    }

    Spectrum spectrum(const GramMatrix &W)
    {
        if (W.rows() != W.cols() || W.rows() == 0)
            throw ArgumentError("spectrum: matrix must be square and nonempty");
        if ((W - W.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
            throw InvariantError("spectrum: matrix is not Hermitian");

        Eigen::SelfAdjointEigenSolver<GramMatrix> solver(W, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw InvariantError("spectrum: eigenvalue iteration did not converge");

        const auto &values = solver.eigenvalues();
        Spectrum out;
        out.eigenvalues.assign(values.data(), values.data() + values.size());
        for (double &v : out.eigenvalues)
        {
            if (v < -kClampTol)
                throw InvariantError("spectrum: matrix has a negative eigenvalue");
            if (v < 0.0)
                v = 0.0;
        }
        std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
        return out;
    }

    double trace_power(const GramMatrix &W, int k)
    {
        switch (k)
        {
        case 1:
            return W.trace().real();
        case 2:
            // Tr(W W) = sum_ij W_ij W_ji
            return (W.array() * W.transpose().array()).sum().real();
        case 3:
        {
            const GramMatrix W2 = W * W;
            return (W2.array() * W.transpose().array()).sum().real();
        }
        default:
            throw ArgumentError("trace_power: k must be 1, 2 or 3");
        }
    }

    double capacity(const Spectrum &spec, double snr)
    {
        if (!(snr >= 0.0) || !std::isfinite(snr))
            throw ArgumentError("capacity: snr must be finite and >= 0");
        double nats = 0.0;
        for (double lambda : spec.eigenvalues)
            nats += std::log1p(snr * lambda);
        return nats / std::numbers::ln2;
    }
}
