// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "sproc/vec.hpp"

namespace sproc {

// Planar curve t -> (a(t), b(t)) with quadratic coordinates. a[k] and b[k]
// multiply t^k.
struct QuadCurve2 {
  std::array<double, 3> a{0.0, 0.0, 0.0};
  std::array<double, 3> b{0.0, 0.0, 0.0};

  Vec2 eval(double t) const {
    return {(a[2] * t + a[1]) * t + a[0], (b[2] * t + b[1]) * t + b[0]};
  }
  Vec2 leading() const { return {a[2], b[2]}; }
  Vec2 linear() const { return {a[1], b[1]}; }
};

}  // namespace sproc
