#pragma once

#include "dtwc/lattice.hpp"
#include "oracles.hpp"

namespace fixture {

using dtwc::IntVector;
using dtwc::LatticeSpec;
using dtwc::Rational;

// Zero pairing, deg = 0 on N1 and 1 on N0, l = 1, twist e_i -> e_0, identity duality.
inline LatticeSpec basic(std::size_t rank1, std::size_t rank0) {
  LatticeSpec s;
  s.rank1 = rank1;
  s.rank0 = rank0;
  const std::size_t n = 1 + rank1 + rank0;
  s.pairing.assign(n, IntVector(n, 0));
  s.deg.assign(rank1 + rank0, 0);
  for (std::size_t j = 0; j < rank0; ++j) s.deg[rank1 + j] = 1;
  s.l.assign(rank1, 1);
  s.excdeg.assign(rank0, Rational(0));
  s.twistA.assign(rank1, IntVector(rank0, 0));
  for (auto& row : s.twistA) row[0] = 1;
  s.duality.assign(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) s.duality[i][i] = 1;
  for (std::size_t i = 0; i < rank1; ++i) {
    IntVector g(rank1, 0);
    g[i] = 1;
    s.effgens1.push_back(g);
  }
  s.sigma = 1;
  return s;
}

inline void antisymmetrize(LatticeSpec& s, oracle::Rng& rng, std::int64_t range) {
  const std::size_t n = s.pairing.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      s.pairing[i][j] = oracle::uniform(rng, -range, range);
      s.pairing[j][i] = -s.pairing[i][j];
    }
}

// Sets l(e_i) and makes twistA(e_i) = l_i * e_0 consistent with it.
inline void set_l(LatticeSpec& s, std::size_t i, std::int64_t l) {
  s.l[i] = l;
  s.twistA[i].assign(s.rank0, 0);
  s.twistA[i][0] = l;
}

inline std::size_t c_index(const LatticeSpec& s, std::size_t j) { return 1 + s.rank1 + j; }
inline std::size_t beta_index(std::size_t i) { return 1 + i; }

}  // namespace fixture
