#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace eisen {

/// Neumaier-compensated running sum. The rounding error of the result is bounded by
/// error_bound() (2u times the sum of magnitudes, plus a term for the final fold).
class CompensatedSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
    abs_total_ += std::abs(v);
  }
  double value() const { return sum_ + comp_; }
  double abs_total() const { return abs_total_; }
  double error_bound() const {
    constexpr double u = std::numeric_limits<double>::epsilon() / 2;
    return 2 * u * abs_total_ + u * std::abs(value());
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_total_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }
  double error_bound() const { return re_.error_bound() + im_.error_bound(); }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace eisen
