#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace mvfp {

enum class NumericMode { Float64, Rational };

namespace detail {
struct ExactNode;
struct ScalarAccess;
}

// A real quantity in one of two numeric modes.
//
// Float64 scalars are IEEE doubles; comparisons against contracts use the
// process-wide tolerance (Config::float_tolerance). Rational scalars are
// exact. Small values are stored as reduced fractions; values whose
// reduced form would be enormous (deep recurrences, square roots) are kept
// as hash-consed expression nodes carrying certified enclosures, and every
// comparison is decided exactly: identical nodes compare equal outright,
// disjoint enclosures decide an order, and residual cases fall back to
// arbitrary-precision evaluation. Mixing the two modes in one operation is
// an error, never a coercion.
class Scalar {
 public:
  Scalar();  // float 0.0

  static Scalar real(double value);
  static Scalar rational(long long num, long long den = 1);
  // Accepts "p/q", integers, and exact decimal/scientific literals.
  static Scalar parse(std::string_view text, NumericMode mode);
  static Scalar zero(NumericMode mode);
  static Scalar one(NumericMode mode);

  NumericMode mode() const noexcept { return mode_; }
  bool is_rational() const noexcept { return mode_ == NumericMode::Rational; }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar sqrt() const;
  Scalar abs() const;

  // Certified sign: -1, 0, +1.
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  // Exact value ordering (raw double ordering in float mode).
  static std::strong_ordering compare(const Scalar& a, const Scalar& b);
  bool operator==(const Scalar& other) const {
    return compare(*this, other) == std::strong_ordering::equal;
  }
  bool operator!=(const Scalar& other) const { return !(*this == other); }
  bool operator<(const Scalar& other) const {
    return compare(*this, other) == std::strong_ordering::less;
  }
  bool operator<=(const Scalar& other) const {
    return compare(*this, other) != std::strong_ordering::greater;
  }
  bool operator>(const Scalar& other) const { return other < *this; }
  bool operator>=(const Scalar& other) const { return other <= *this; }

  // Tolerance-aware predicates: in float mode these honour the global
  // tolerance, in rational mode they are exact.
  static bool approx_eq(const Scalar& a, const Scalar& b);
  static bool leq(const Scalar& a, const Scalar& b);   // a <= b (+ tol)
  static bool lt(const Scalar& a, const Scalar& b);    // a <  b (- tol)

  double to_double() const;

  // Rational mode renders "p/q" (or "p") when the reduced fraction fits the
  // render budget, otherwise a "~"-prefixed decimal approximation. Float
  // mode renders the shortest round-trip decimal.
  std::string str() const;

  // Reduced fraction when it can be materialized within max_bits.
  std::optional<std::string> fraction(std::size_t max_bits = 1u << 20) const;

 private:
  NumericMode mode_;
  double value_;                    // Float64 only
  const detail::ExactNode* node_;  // Rational only

  friend struct detail::ScalarAccess;
};

// Selection helpers: return the winning argument (first on ties).
const Scalar& scalar_min(const Scalar& a, const Scalar& b);
const Scalar& scalar_max(const Scalar& a, const Scalar& b);

}  // namespace mvfp
