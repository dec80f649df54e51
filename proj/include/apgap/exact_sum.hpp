// Summation helpers.
#pragma once

#include <cmath>
#include <stdexcept>

#include "apgap/arith.hpp"

namespace apgap {

inline constexpr int kFixedShift = 53;

/// Converts a von Mangoldt weight to fixed point. Any double in [1/2, 2^10)
/// is an exact integer multiple of 2^-53, so the conversion loses nothing.
inline i64 to_fixed(double v) {
  if (v == 0.0) return 0;
  if (!(v >= 0.5 && v < 1024.0)) throw std::domain_error("to_fixed: weight outside [1/2, 1024)");
  return static_cast<i64>(std::ldexp(v, kFixedShift));
}

inline double from_fixed(i128 v) { return std::ldexp(static_cast<double>(v), -kFixedShift); }

/// Error-free accumulator for sums of von Mangoldt weights. The result does
/// not depend on the order of additions.
class LogSum {
 public:
  void add(double v) { acc_ += to_fixed(v); }
  void add_fixed(i64 v) { acc_ += v; }
  void merge(const LogSum& other) { acc_ += other.acc_; }
  i128 raw() const { return acc_; }
  double value() const { return from_fixed(acc_); }

 private:
  i128 acc_ = 0;
};

/// Neumaier's compensated summation for arbitrary doubles.
class NeumaierSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace apgap
