#pragma once

#include <string>
#include <vector>

#include "dtwc/lattice.hpp"
#include "dtwc/quasipoly.hpp"
#include "dtwc/series.hpp"

namespace dtwc {

// (-1)^{sum d} prod (d+1): Behrend-weighted Euler characteristic of prod P^{d_i}.
Integer behrend_smooth(const std::vector<std::int64_t>& dims);

// Transverse A1 example: N1 = Z beta, N0 = Z[O_p+] + Z[O_p-], variables (q+, q-).
struct A1Model {
  LatticePtr lattice;
  // McKay images (d, (m, n)) of curve and point classes on the resolution.
  KClass C_h, C_v, point;
  RationalFunction f_Y;       // 3 q+^4 q-^4 / (1+q+)^2, the z^2 layer on the resolution
  RationalFunction f_X;       // 3 q+^4 q-^4 / (1+q+)^4, the z^2 DT layer on the orbifold
  RationalFunction dt0;       // (1+q+)^{-2}
  LinearFunctional L_plus;    // expansion at q+ = 0
  LinearFunctional L_minus;   // expansion at q+ = infinity
};

A1Model build_a1();

struct A1Row {
  std::int64_t m = 0;
  Rational x, y, diff;
};

struct A1Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct A1Report {
  std::int64_t window = 0;
  std::vector<A1Row> rows;         // m in [-window, window + 4]
  std::vector<Rational> dt0_coeffs;  // m = 0..window
  std::vector<A1Check> checks;
  std::optional<QuasiPolynomial> fit;
  ReexpandVerdict reexpand;
  bool passed = false;
};

A1Report run_a1(std::int64_t report_window);

}  // namespace dtwc
