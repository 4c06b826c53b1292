#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dtwc/laurent.hpp"
#include "dtwc/rational.hpp"

namespace dtwc {

// Raw lattice data as read from a document; validated by Lattice::create.
struct LatticeSpec {
  std::size_t rank1 = 0;
  std::size_t rank0 = 0;
  IntMatrix pairing;             // (1+rank1+rank0) square, Euler form on Z[O] + N1 + N0
  IntVector deg;                 // on N1 + N0
  IntVector l;                   // on N1
  std::vector<Rational> excdeg;  // on N0
  IntMatrix twistA;              // rank1 rows, row i = twist of the i-th N1 basis vector
  IntMatrix duality;             // acts on column vectors (r, beta, c)
  IntMatrix effgens1;            // generators of the effective curve cone
  int sigma = 1;
};

// (r, beta, c) in Z[O] + N1 + N0.
struct KClass {
  std::int64_t r = 0;
  IntVector beta;
  IntVector c;

  friend bool operator==(const KClass& a, const KClass& b) {
    return a.r == b.r && a.beta == b.beta && a.c == b.c;
  }
  friend bool operator!=(const KClass& a, const KClass& b) { return !(a == b); }
  friend bool operator<(const KClass& a, const KClass& b) {
    if (a.r != b.r) return a.r < b.r;
    if (a.beta != b.beta) return a.beta < b.beta;
    return a.c < b.c;
  }
};

KClass operator+(const KClass& a, const KClass& b);
KClass operator-(const KClass& a, const KClass& b);
KClass scaled(const KClass& a, std::int64_t k);

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

class Lattice {
 public:
  static LatticePtr create(LatticeSpec spec);

  const LatticeSpec& spec() const { return spec_; }
  std::size_t rank1() const { return spec_.rank1; }
  std::size_t rank0() const { return spec_.rank0; }
  std::size_t dim() const { return 1 + spec_.rank1 + spec_.rank0; }
  int sigma() const { return spec_.sigma; }

  void check(const KClass& x) const;
  KClass zero_class() const;
  KClass make_class(std::int64_t r, IntVector beta, IntVector c) const;

  std::int64_t euler_pairing(const KClass& a, const KClass& b) const;

  bool is_effective(const IntVector& b) const;
  // b2 - b1 effective.
  bool leq_effective(const IntVector& b1, const IntVector& b2) const;
  // All effective b' with b - b' effective, lexicographic.
  std::vector<IntVector> enumerate_below(const IntVector& b) const;

  std::int64_t l_of(const IntVector& beta) const;
  std::int64_t deg_of(const IntVector& beta, const IntVector& c) const;
  std::int64_t deg0(const IntVector& c) const;
  Rational excdeg_of(const IntVector& c) const;
  IntVector twist(const IntVector& beta) const;
  LinearFunctional deg0_functional() const;

  Slope nu_slope(const KClass& x) const;
  std::vector<Rational> nu_walls(const IntVector& b, const Rational& lo, const Rational& hi) const;
  std::pair<Slope, Slope> zeta_slope(const KClass& x) const;
  std::vector<Rational> gamma_walls(const IntVector& b) const;
  std::pair<IntVector, IntVector> distinguished_class(const Rational& gamma, const IntVector& b) const;

  KClass dualize(const KClass& x) const;
  LinearFunctional L_gamma(const Rational& gamma) const;

 private:
  explicit Lattice(LatticeSpec spec) : spec_(std::move(spec)) {}
  void validate() const;

  LatticeSpec spec_;
};

// v divided by the gcd of its entries (zero stays zero).
IntVector primitive(const IntVector& v);

}  // namespace dtwc
