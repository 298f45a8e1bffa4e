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

#ifndef LOSMIMO_ARRAY_GEOMETRY_HPP
#define LOSMIMO_ARRAY_GEOMETRY_HPP

#include <complex>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace losmimo
{
    using Complex = std::complex<double>;
    using ComplexVector = std::vector<Complex>;

    enum class Axis
    {
        Y,
        Z
    };

    Axis parse_axis(std::string_view text);
    std::string_view to_string(Axis axis);

    /// Uniform linear receive array. Only the product k*d is kept; every
    /// quantity downstream depends on the spacing through it alone.
    class ArrayGeometry
    {
    public:
        explicit ArrayGeometry(int n_elements, double kd = std::numbers::pi, Axis axis = Axis::Y);

        int n_elements() const noexcept { return n_elements_; }
        double kd() const noexcept { return kd_; }
        Axis axis() const noexcept { return axis_; }

    private:
        int n_elements_;
        double kd_;
        Axis axis_;
    };

    /// Arrival direction in spherical angles (radians).
    struct Direction
    {
        double theta = 0.0;
        double phi = 0.0;
    };

    /// Projection of the unit arrival vector onto the array axis:
    /// sin(theta) sin(phi) for a y-axis array, cos(theta) for a z-axis array.
    double direction_cosine(const ArrayGeometry &geom, Direction dir);

    /// Per-element phasors exp(j m kd psi), m = 0..n-1. Throws DomainError for |psi| > 1.
    ComplexVector steering_vector(const ArrayGeometry &geom, double psi);

    /// sum_m I_m exp(j m kd psi(dir)).
    Complex array_factor(const ArrayGeometry &geom, std::span<const Complex> weights, Direction dir);
}

#endif
