#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace pgst {

/// Trial division; the integers seen here are at most a few thousand.
bool is_prime(std::uint64_t n) noexcept;

/// (prime, exponent) pairs in increasing prime order; empty for n <= 1.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

/// Product of the primes dividing n to an odd power. Requires n >= 1.
std::uint64_t square_free_part(std::uint64_t n);

/// C(n, k); zero outside 0 <= k <= n.
std::int64_t binomial(int n, int k) noexcept;

/// Krawtchouk polynomial K_k(x; n) = sum_i (-1)^i C(x, i) C(n - x, k - i).
/// Equals the character sum over all weight-k elements of Z_2^n evaluated at
/// any element of weight x.
std::int64_t krawtchouk(int k, int x, int n) noexcept;

/// Exact fraction with positive denominator, always reduced.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const noexcept { return den == 1; }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
};

}  // namespace pgst
