#include "pgst/number_theory.hpp"

#include <cstdlib>

#include "pgst/error.hpp"

namespace pgst {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
    int e = 0;
    while (n % f == 0) {
      n /= f;
      ++e;
    }
    if (e > 0) out.emplace_back(f, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t square_free_part(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::kOutOfRange, "square-free part of zero is undefined");
  std::uint64_t part = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e % 2 == 1) part *= p;
  }
  return part;
}

std::int64_t binomial(int n, int k) noexcept {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t krawtchouk(int k, int x, int n) noexcept {
  std::int64_t sum = 0;
  for (int i = 0; i <= k; ++i) {
    const std::int64_t term = binomial(x, i) * binomial(n - x, k - i);
    sum += (i % 2 == 0) ? term : -term;
  }
  return sum;
}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(ErrorCode::kOutOfRange, "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num = g == 0 ? 0 : n / g;
  den = g == 0 ? 1 : d / g;
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t l = std::lcm(a.den, b.den);
  return Rational(a.num * (l / a.den) + b.num * (l / b.den), l);
}

Rational operator-(const Rational& a, const Rational& b) {
  return a + Rational(-b.num, b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num * b.num, a.den * b.den);
}

}  // namespace pgst
