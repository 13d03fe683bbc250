/*
 * Copyright 2026 The uavplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef UAVPLAN_GEOMETRY_HPP
#define UAVPLAN_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace uavplan {

/// Planar vector in meters (positions) or in force/velocity units.
struct Vec2
{
    double x{0.0};
    double y{0.0};

    constexpr Vec2& operator+=(Vec2 o) noexcept { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) noexcept { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) noexcept { x *= s; y *= s; return *this; }

    double norm() const noexcept { return std::hypot(x, y); }
    constexpr double squared_norm() const noexcept { return x * x + y * y; }

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator-(Vec2 a) noexcept { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) noexcept { return {a.x * s, a.y * s}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return {a.x * s, a.y * s}; }
    friend constexpr Vec2 operator/(Vec2 a, double s) noexcept { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(Vec2, Vec2) noexcept = default;
};

/// Force and velocity vectors share the planar representation.
using ForceVector = Vec2;

inline double distance(Vec2 a, Vec2 b) noexcept { return (a - b).norm(); }

/// Unit vector along v, or the zero vector when v has zero length.
inline Vec2 unit_or_zero(Vec2 v) noexcept
{
    const double n = v.norm();
    return n > 0.0 ? v / n : Vec2{};
}

/// Dense row-major matrix of doubles (UAV x UE tables).
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    double& at(std::size_t r, std::size_t c)
    {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("Matrix index out of range");
        return data_[r * cols_ + c];
    }
    double at(std::size_t r, std::size_t c) const
    {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("Matrix index out of range");
        return data_[r * cols_ + c];
    }

    double row_sum(std::size_t r) const noexcept
    {
        double s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c);
        return s;
    }

    const std::vector<double>& data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<double> data_;
};

} // namespace uavplan

#endif // UAVPLAN_GEOMETRY_HPP
