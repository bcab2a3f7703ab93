#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <vector>

namespace epcontact {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Exactly rounded floating-point summation (Shewchuk partials, the same
/// algorithm as Python's math.fsum).  The result is the correctly rounded
/// value of the exact sum, so it is independent of the order in which terms
/// are added.  That property is what makes moment pairings and the kinetic
/// energy exactly invariant under node relabeling.
class ExactSum {
 public:
  ExactSum() { partials_.reserve(8); }

  void add(double x) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < partials_.size(); ++j) {
      double y = partials_[j];
      if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials_[i++] = lo;
      x = hi;
    }
    partials_.resize(i);
    partials_.push_back(x);
  }

  /// Correctly rounded sum of all terms added so far.
  double value() const {
    double hi = 0.0;
    std::size_t n = partials_.size();
    if (n > 0) {
      double lo = 0.0;
      hi = partials_[--n];
      while (n > 0) {
        const double x = hi;
        const double y = partials_[--n];
        hi = x + y;
        const double yr = hi - x;
        lo = y - yr;
        if (lo != 0.0) break;
      }
      // Half-way cases: round to even using the sign of the next partial.
      if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) ||
                    (lo > 0.0 && partials_[n - 1] > 0.0))) {
        const double y = lo * 2.0;
        const double x = hi + y;
        if (y == x - hi) hi = x;
      }
    }
    return hi;
  }

 private:
  std::vector<double> partials_;
};

/// Neumaier-compensated accumulator for hot loops where exact rounding is not
/// required but deterministic, low-error accumulation is.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// One classical Runge-Kutta step of size dt for dy/dt = f(y).
template <typename F>
Vec rk4_step(const Vec& y, double dt, F&& f) {
  const Vec k1 = f(y);
  const Vec k2 = f(Vec(y + (0.5 * dt) * k1));
  const Vec k3 = f(Vec(y + (0.5 * dt) * k2));
  const Vec k4 = f(Vec(y + dt * k3));
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace epcontact
