#pragma once

#include <cstdint>
#include <numeric>

namespace kplane {

/// Exact rational number with positive denominator, always reduced.
class Rational {
 public:
  constexpr Rational(std::int64_t num = 0, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;
  friend constexpr bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// The problem instance: k-planes in R^d with the Lebesgue exponents
/// p = (d+1)/(k+1) and q = d+1 of the L^p -> L^q inequality.
class TransformParams {
 public:
  /// Throws DomainError unless 1 <= k <= d-1 and d >= 2.
  TransformParams(int k, int d);

  int k() const { return k_; }
  int d() const { return d_; }
  Rational p_exact() const { return p_; }
  Rational q_exact() const { return q_; }
  double p() const { return p_.value(); }
  double q() const { return q_.value(); }

  /// Checks every stored invariant, including p, q recomputed from (k, d).
  bool valid() const;

  friend bool operator==(const TransformParams&, const TransformParams&) = default;

 private:
  int k_;
  int d_;
  Rational p_;
  Rational q_;
};

}  // namespace kplane
