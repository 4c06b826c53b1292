#pragma once

#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "dtwc/laurent.hpp"
#include "dtwc/series.hpp"

namespace dtwc {

// n -> table[n mod p](n), one polynomial per residue tuple.
class QuasiPolynomial {
 public:
  QuasiPolynomial(std::size_t vars, std::int64_t period);

  std::size_t vars() const { return vars_; }
  std::int64_t period() const { return period_; }
  const std::map<IntVector, LaurentPolynomial>& table() const { return table_; }
  const LaurentPolynomial& at(const IntVector& residues) const;
  void set(const IntVector& residues, LaurentPolynomial p);
  // Same polynomial on every residue class.
  static QuasiPolynomial polynomial(const LaurentPolynomial& p, std::int64_t period = 1);

 private:
  std::size_t vars_;
  std::int64_t period_;
  std::map<IntVector, LaurentPolynomial> table_;
};

Rational qp_eval(const QuasiPolynomial& a, const IntVector& n);
// -1 for the zero quasi-polynomial.
std::int64_t qp_degree(const QuasiPolynomial& a, std::size_t i);

// All residue tuples of (Z/p)^r in lexicographic order.
std::vector<IntVector> residue_tuples(std::size_t r, std::int64_t p);

RationalFunction resum_orthant(const QuasiPolynomial& a, const std::vector<Exponent>& monos,
                               const LinearFunctional& grading);

struct ChainPattern {
  std::size_t r = 0;
  std::set<std::size_t> E;  // positions i in 1..r-1 with n_i = n_{i+1}
};

RationalFunction resum_chain(const QuasiPolynomial& a, const ChainPattern& pattern, const std::vector<Exponent>& monos,
                             const LinearFunctional& grading);

LaurentPolynomial orthant_lemma_denominator(const QuasiPolynomial& a, const std::vector<Exponent>& monos);
LaurentPolynomial chain_lemma_denominator(const QuasiPolynomial& a, const ChainPattern& pattern,
                                          const std::vector<Exponent>& monos);

enum class DetectFailure { WindowTooSmall, NoFit };
const char* to_string(DetectFailure f);
using DetectResult = std::variant<QuasiPolynomial, DetectFailure>;

DetectResult detect_quasipoly(const std::map<std::int64_t, Rational>& samples, std::int64_t max_period,
                              std::int64_t max_degree);

struct CosetReport {
  Exponent representative;
  std::int64_t k_min = 0;
  std::int64_t k_max = -1;
  DetectResult fit = DetectFailure::WindowTooSmall;
};

struct ReexpandVerdict {
  bool premise_verified = false;
  std::vector<CosetReport> cosets;
  bool all_fit = false;
  bool plus_verified = false;
  std::optional<std::pair<Exponent, Rational>> plus_discrepancy;
  bool confirmed = false;
};

// s_minus is the known expansion for Lminus; s_plus the candidate for Lplus.
// The fitted sequences are those of s_plus - s_minus along c + k*c0.
ReexpandVerdict reexpand_check(const RationalFunction& f, const LaurentSeries& s_minus, const LaurentSeries& s_plus,
                               const Exponent& c0, const LinearFunctional& Lminus, const LinearFunctional& Lplus,
                               std::int64_t max_period, std::int64_t max_degree);

}  // namespace dtwc
