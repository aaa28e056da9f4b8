#pragma once

#include <functional>
#include <utility>

#include "gendrv/errors.hpp"

namespace gendrv {

// Value and first three derivatives of a scalar function at one point.
struct DerivTower {
  double y = 0;
  double dy = 0;
  double d2y = 0;
  double d3y = 0;
};

// A scalar target function: point evaluation, plus an optional exact
// derivative tower for backends that skip finite differencing.
class TargetFunction {
 public:
  using Eval = std::function<double(double)>;
  using Tower = std::function<DerivTower(double)>;

  explicit TargetFunction(Eval eval) : eval_(std::move(eval)) {}
  TargetFunction(Eval eval, Tower tower)
      : eval_(std::move(eval)), tower_(std::move(tower)) {}

  double operator()(double x) const { return eval_(x); }

  bool has_tower() const noexcept { return static_cast<bool>(tower_); }

  // Throws MissingTower when constructed without one.
  DerivTower tower_at(double x) const {
    if (!tower_) throw MissingTower{};
    return tower_(x);
  }

 private:
  Eval eval_;
  Tower tower_;
};

}  // namespace gendrv
