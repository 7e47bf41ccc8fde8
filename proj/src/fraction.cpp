#include "freedim/fraction.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace freedim {

std::string Fraction::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Fraction normalized(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g > 1 ? Fraction{num / g, den / g} : Fraction{num, den};
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  const std::int64_t g = std::gcd(a.den, b.den);
  return normalized(a.num * (b.den / g) + b.num * (a.den / g), a.den / g * b.den);
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  const Fraction x = normalized(a.num, b.den);
  const Fraction y = normalized(b.num, a.den);
  return normalized(x.num * y.num, x.den * y.den);
}

std::optional<Fraction> to_fraction(double x, double tol, std::int64_t max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  const bool negative = x < 0.0;
  double rest = std::abs(x);
  // Convergents h/k of the continued fraction of |x|.
  std::int64_t h_prev = 1, h = static_cast<std::int64_t>(std::floor(rest));
  std::int64_t k_prev = 0, k = 1;
  double frac = rest - std::floor(rest);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - std::abs(x)) <= tol) {
      Fraction f{negative ? -h : h, k};
      return f;
    }
    if (frac < 1e-15) break;
    rest = 1.0 / frac;
    const auto a = static_cast<std::int64_t>(std::floor(rest));
    frac = rest - std::floor(rest);
    const std::int64_t h_next = a * h + h_prev;
    const std::int64_t k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  return std::nullopt;
}

}  // namespace freedim
