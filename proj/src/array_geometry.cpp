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

#include "losmimo/array_geometry.hpp"

#include "losmimo/errors.hpp"

#include <cmath>
#include <string>

namespace losmimo
{
    Axis parse_axis(std::string_view text)
    {
        if (text == "y" || text == "Y")
            return Axis::Y;
        if (text == "z" || text == "Z")
            return Axis::Z;
        throw ArgumentError("unknown array axis '" + std::string(text) + "' (expected y or z)");
    }

    std::string_view to_string(Axis axis)
    {
        return axis == Axis::Y ? "y" : "z";
    }

    ArrayGeometry::ArrayGeometry(int n_elements, double kd, Axis axis)
        : n_elements_(n_elements), kd_(kd), axis_(axis)
    {
        if (n_elements < 1)
            throw ArgumentError("ArrayGeometry: n_elements must be >= 1");
        if (!std::isfinite(kd) || kd <= 0.0)
            throw ArgumentError("ArrayGeometry: kd must be finite and > 0");
    }

    double direction_cosine(const ArrayGeometry &geom, Direction dir)
    {
        if (!std::isfinite(dir.theta) || !std::isfinite(dir.phi))
            throw DomainError("direction_cosine: angles must be finite");
        if (geom.axis() == Axis::Y)
            return std::sin(dir.theta) * std::sin(dir.phi);
        return std::cos(dir.theta);
    }

    ComplexVector steering_vector(const ArrayGeometry &geom, double psi)
    {
        if (!(std::fabs(psi) <= 1.0))
            throw DomainError("steering_vector: |psi| must be <= 1");

        ComplexVector out(static_cast<std::size_t>(geom.n_elements()));
        const double step = geom.kd() * psi;
        for (std::size_t m = 0; m < out.size(); ++m)
            out[m] = std::polar(1.0, static_cast<double>(m) * step);
        return out;
    }

    Complex array_factor(const ArrayGeometry &geom, std::span<const Complex> weights, Direction dir)
    {
        if (weights.size() != static_cast<std::size_t>(geom.n_elements()))
            throw ArgumentError("array_factor: weight count must equal the element count");

        const double step = geom.kd() * direction_cosine(geom, dir);
        Complex sum{0.0, 0.0};
        for (std::size_t m = 0; m < weights.size(); ++m)
            sum += weights[m] * std::polar(1.0, static_cast<double>(m) * step);
        return sum;
    }
}
