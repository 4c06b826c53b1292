#include "dtwc/rational.hpp"

#include <limits>

#include "dtwc/error.hpp"

namespace dtwc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input error";
    case ErrorKind::Dimension: return "dimension mismatch";
    case ErrorKind::NotEffective: return "not effective";
    case ErrorKind::NonGenericDenominator: return "functional not generic for denominator";
    case ErrorKind::EmptyWindow: return "empty window";
    case ErrorKind::NotInvertible: return "not invertible with respect to L";
    case ErrorKind::NotAWall: return "not a wall";
    case ErrorKind::NonGeneric: return "non-generic functionals";
    case ErrorKind::NonNilpotent: return "non-nilpotent adjoint under this truncation";
    case ErrorKind::IncompleteFamily: return "incomplete family";
    case ErrorKind::ContextMismatch: return "context mismatch";
    case ErrorKind::Minimality: return "minimality violation";
  }
  return "error";
}

const char* error_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::NotEffective: return "not_effective";
    case ErrorKind::NonGenericDenominator: return "non_generic_denominator";
    case ErrorKind::EmptyWindow: return "empty_window";
    case ErrorKind::NotInvertible: return "not_invertible";
    case ErrorKind::NotAWall: return "not_a_wall";
    case ErrorKind::NonGeneric: return "non_generic";
    case ErrorKind::NonNilpotent: return "non_nilpotent";
    case ErrorKind::IncompleteFamily: return "incomplete_family";
    case ErrorKind::ContextMismatch: return "context_mismatch";
    case ErrorKind::Minimality: return "minimality";
  }
  return "error";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text, const std::string& path) {
  std::string_view num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
    throw Error(ErrorKind::Input, "malformed rational '" + std::string(text) + "'", path);
  std::string n(num.front() == '+' ? num.substr(1) : num);
  Integer p(n), q{std::string(den)};
  if (q == 0)
    throw Error(ErrorKind::Input, "zero denominator in '" + std::string(text) + "'", path);
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational fraction(std::int64_t num, std::int64_t den) {
  Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

Integer floor_of(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& x) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::int64_t to_int64(const Integer& x) {
  if (!x.fits_slong_p()) throw Error(ErrorKind::Input, "integer out of 64-bit range: " + x.get_str());
  return x.get_si();
}

std::string to_string(const Slope& s) { return s.is_infinite() ? "inf" : to_string(s.value()); }

Slope parse_slope(std::string_view text, const std::string& path) {
  if (text == "inf" || text == "+inf") return Slope::infinity();
  return Slope(parse_rational(text, path));
}

}  // namespace dtwc
