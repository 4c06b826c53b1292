#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dtwc/poisson.hpp"
#include "dtwc/quasipoly.hpp"
#include "dtwc/series.hpp"

namespace dtwc {

struct WallDatum {
  Slope slope;
  TorusElement J;  // rank-0 terms of slope `slope`
};

struct SeedSeries {
  TorusElement element;  // rank -1 terms
  Slope cutoff;
  bool past = false;  // true once the wall at `cutoff` has been crossed
};

struct GroupSpec {
  KClass alpha_prime;                // rank -1 seed class
  std::vector<IntVector> betas;      // beta_1..beta_r
  std::vector<IntVector> kappas;     // canonical representatives c_i^0
  std::set<std::size_t> E;           // i in 1..r-1 with nu_i = nu_{i+1}
  std::vector<Rational> J_values;
  Rational DT_value = 1;
  Rational delta0 = 0;               // seed cutoff
};

// One J-invariant, extended to the whole coset c + Z*twistA(beta).
struct JEntry {
  IntVector beta;
  IntVector c;
  Rational value;
};

void validate_wall(const Lattice& lat, const WallDatum& wall);

SeedSeries cross_wall(const SeedSeries& state, const WallDatum& wall, const Truncation& trunc);
SeedSeries iterate_walls(const SeedSeries& seed, const std::vector<WallDatum>& walls, const Truncation& trunc);

// Representatives of the cosets making the strict summation set exact for
// the pattern E; nullopt when E cannot be realized.
std::optional<std::vector<IntVector>> canonical_representatives(const Lattice& lat, const std::vector<IntVector>& betas,
                                                                const std::vector<IntVector>& cs,
                                                                const std::set<std::size_t>& E,
                                                                const Rational& delta0);

Rational group_a_factor(std::size_t r, const std::set<std::size_t>& E);
// B as a quasi-polynomial in the twist multiplicities a_1..a_r.
QuasiPolynomial group_b_factor(const Lattice& lat, const GroupSpec& group);
RationalFunction group_resum(const Lattice& lat, const GroupSpec& group, const Truncation& trunc);
// prod_{i=1..r} (1 - prod_{j=r-i+1..r} q^{2 twistA(beta_j)})^{2i}
LaurentPolynomial group_denominator_bound(const Lattice& lat, const GroupSpec& group);

std::vector<GroupSpec> enumerate_groups(const Lattice& lat, const TorusElement& seed, const std::vector<JEntry>& js,
                                        const Rational& delta0, const IntVector& beta_cap);
// Sum of group contributions by total curve class.
std::map<IntVector, RationalFunction> resum_groups(const Lattice& lat, const std::vector<GroupSpec>& groups,
                                                   const Truncation& trunc);
// Materializes the J entries on slopes >= delta0 with deg(c) <= deg_bound.
std::vector<WallDatum> walls_from_entries(const LatticePtr& lat, const std::vector<JEntry>& js, const Rational& delta0,
                                          const Rational& deg_bound);

LaurentSeries dtpt_ratio(const LaurentSeries& dt_beta, const LaurentSeries& dt_zero, const LinearFunctional& L);

struct DualityEntry {
  IntVector beta;
  IntVector image;
  bool passed = false;
  std::optional<std::pair<Exponent, Rational>> discrepancy;
};

struct DualityReport {
  std::vector<DualityEntry> entries;
  bool passed = false;
};

DualityReport duality_check(const Lattice& lat, const std::map<IntVector, RationalFunction>& f_by_beta);

struct GammaVerdict {
  bool applicable = false;
  Rational epsilon;
  IntVector beta_gamma;
  IntVector c_gamma;
  Exponent c0;
  LinearFunctional L_known;      // L_{gamma+eps}
  LinearFunctional L_candidate;  // L_{gamma-eps}
  ReexpandVerdict reexpand;
};

// eps = half the distance from gamma to the nearest other point of V_b + {0}.
Rational gamma_epsilon(const Lattice& lat, const Rational& gamma, const IntVector& b);

GammaVerdict cross_gamma_wall(const Lattice& lat, const RationalFunction& f, const Rational& gamma, const IntVector& b,
                              const LaurentSeries& s_plus_side, const LaurentSeries& s_minus_side,
                              std::int64_t max_period = 4, std::int64_t max_degree = 4);

}  // namespace dtwc
