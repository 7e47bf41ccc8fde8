#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace freedim {

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, const Fraction& b);
};

/// Lowest terms with a positive denominator.
Fraction normalized(std::int64_t num, std::int64_t den);

/// Best rational approximation with denominator <= max_den (continued
/// fractions); empty when none lies within tol of x.
std::optional<Fraction> to_fraction(double x, double tol = 1e-9, std::int64_t max_den = 1000000);

}  // namespace freedim
