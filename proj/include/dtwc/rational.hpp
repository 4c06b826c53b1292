#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dtwc {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;

// Accepts "p", "p/q", "-p/q" with q != 0. Throws Error(Input) otherwise.
Rational parse_rational(std::string_view text, const std::string& path = {});
// num/den in lowest terms; den != 0.
Rational fraction(std::int64_t num, std::int64_t den);
std::string to_string(const Rational& x);

Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);
Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

// Mathematical modulus, result in [0, m).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t to_int64(const Integer& x);

// An element of Q united with {+inf}; ordered with +inf on top.
class Slope {
 public:
  Slope() = default;
  Slope(Rational value) : value_(std::move(value)) {}  // NOLINT(implicit)
  static Slope infinity() {
    Slope s;
    s.infinite_ = true;
    return s;
  }

  bool is_infinite() const { return infinite_; }
  // Only meaningful when finite.
  const Rational& value() const { return value_; }

  friend bool operator==(const Slope& a, const Slope& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const Slope& a, const Slope& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator!=(const Slope& a, const Slope& b) { return !(a == b); }
  friend bool operator>(const Slope& a, const Slope& b) { return b < a; }
  friend bool operator<=(const Slope& a, const Slope& b) { return !(b < a); }
  friend bool operator>=(const Slope& a, const Slope& b) { return !(a < b); }

 private:
  Rational value_ = 0;
  bool infinite_ = false;
};

std::string to_string(const Slope& s);
Slope parse_slope(std::string_view text, const std::string& path = {});

}  // namespace dtwc
