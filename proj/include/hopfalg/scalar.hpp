#pragma once
#include <gmpxx.h>

#include <string>

#include "hopfalg/errors.hpp"

namespace hopfalg {

/// @brief Process-wide field context: 0 means the rationals, d > 0 means Q(sqrt d).
class FieldContext {
 public:
  static int sqrt_d() { return d_; }
  /// @brief Select the field. d must be 0 or a square-free integer greater than 1.
  static void set_sqrt_d(int d);

 private:
  static inline int d_ = 0;
};

/// @brief Exact element p + q*sqrt(d) of Q or of the quadratic extension in the current context.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : p_(v) {}  // NOLINT: implicit integer literals are convenient
  Scalar(const mpq_class& p) : p_(p) {}  // NOLINT
  Scalar(const mpq_class& p, const mpq_class& q);
  static Scalar rational(long num, long den);
  /// @brief The generator sqrt(d) of the current extension.
  static Scalar sqrt();

  const mpq_class& p() const { return p_; }
  const mpq_class& q() const { return q_; }
  bool is_zero() const { return sgn(p_) == 0 && sgn(q_) == 0; }
  bool is_one() const { return sgn(q_) == 0 && p_ == 1; }
  bool is_rational() const { return sgn(q_) == 0; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.p_ == b.p_ && a.q_ == b.q_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inverse() const;
  std::string str() const;
  /// @brief Parse "3/4", "-2", "1/2+1/2*s", "s" where s denotes sqrt(d).
  static Scalar parse(const std::string& text);

 private:
  mpq_class p_{0};
  mpq_class q_{0};
};

}  // namespace hopfalg
