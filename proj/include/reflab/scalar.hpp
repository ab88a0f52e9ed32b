#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace reflab {

enum class ScalarMode { Exact, Approx };

/// Absolute tolerance used by every sign test on approximate scalars.
inline constexpr double kApproxEpsilon = 1e-9;

/// A number that is either an exact rational or a double.
///
/// Exact values are kept in lowest terms with a positive denominator. Values
/// whose numerator and denominator fit in 64 bits live inline; larger ones
/// spill to a heap-allocated GMP rational. Every result is shrunk back to the
/// inline form when it fits, so the representation is canonical and hashes
/// agree with equality.
///
/// Arithmetic between an exact and an approximate operand yields an
/// approximate result. Sign tests on approximate values treat anything within
/// kApproxEpsilon of zero as zero.
class Scalar {
 public:
  Scalar() noexcept : num_(0), den_(1) {}
  Scalar(int v) noexcept : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) noexcept : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(long long v) noexcept : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)

  /// Exact num/den; throws std::domain_error when den == 0.
  static Scalar rational(std::int64_t num, std::int64_t den);
  static Scalar from_mpq(const mpq_class& q);
  static Scalar approx(double v) noexcept;

  /// Parses "p", "p/q", "-1.25" (exact decimal) or, when `mode` is Approx,
  /// anything std::stod accepts. Throws std::invalid_argument.
  static Scalar parse(std::string_view text, ScalarMode mode = ScalarMode::Exact);

  Scalar(const Scalar& other);
  Scalar(Scalar&& other) noexcept;
  Scalar& operator=(const Scalar& other);
  Scalar& operator=(Scalar&& other) noexcept;
  ~Scalar();

  bool is_exact() const noexcept { return den_ != kApproxTag; }
  bool is_integer() const noexcept;

  double to_double() const;
  /// Exact value; throws std::logic_error on approximate scalars.
  mpq_class to_mpq() const;

  /// -1, 0 or +1. Approximate values within kApproxEpsilon of zero give 0.
  int sign() const noexcept;
  bool is_zero() const noexcept { return sign() == 0; }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  /// Throws std::domain_error on exact division by zero.
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  /// Three-way comparison; approximate comparisons use the sign tolerance.
  friend int compare(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
  friend std::weak_ordering operator<=>(const Scalar& a, const Scalar& b) {
    return compare(a, b) <=> 0;
  }

  /// "p" or "p/q" for exact values, "%.12g" for approximate ones.
  std::string str() const;
  /// Canonical dedup key: the exact text, or the value rounded to 12
  /// significant digits (with |x| < kApproxEpsilon mapped to 0).
  std::string key() const;
  /// Hash consistent with key().
  std::uint64_t hash() const;

 private:
  static constexpr std::int64_t kBigTag = 0;
  static constexpr std::int64_t kApproxTag = -1;

  bool is_big() const noexcept { return den_ == kBigTag; }
  bool is_small() const noexcept { return den_ > 0; }
  const mpq_class& big() const noexcept { return *big_; }

  static Scalar from_int128(__int128 num, __int128 den);
  static Scalar exact_op(const Scalar& a, const Scalar& b, char op);
  void release() noexcept;

  // den_ > 0: inline rational num_/den_. den_ == kBigTag: big_ owns the value.
  // den_ == kApproxTag: dbl_ holds the value.
  union {
    std::int64_t num_;
    mpq_class* big_;
    double dbl_;
  };
  std::int64_t den_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

using Coeffs = std::vector<Scalar>;

/// Lexicographic three-way comparison of coefficient vectors.
int compare_lex(std::span<const Scalar> a, std::span<const Scalar> b);

Scalar sum(std::span<const Scalar> v);

}  // namespace reflab
