// Copyright 2026 The nilsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef NILSEP_LATTICE_HPP
#define NILSEP_LATTICE_HPP

#include "nilsep/integer.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nilsep::lattice {

using Matrix = std::vector<IntVec>; // row-major, rows are vectors

struct BezoutResult {
  Int gcd;
  IntVec coeffs;
};

/// Bezout coefficients whose absolute values are at most max|a_j| / 2.
/// Throws InvalidArgument("degenerate input") when every entry is zero.
BezoutResult eff_bezout(std::span<const Int> a);

/// Signed word over S (each letter is +s or -s) evaluating to gcd(S).
/// Positive letters come first, in input order, then negative letters.
/// Length is at most n^2 where n bounds |s|.
std::vector<Int> generator_word(std::span<const Int> S, const Int& n);

struct IntLattice {
  Matrix basis;
  std::size_t ambient_rank = 0;
};

/// Row Hermite normal form: positive pivots, entries above each pivot
/// reduced into [0, pivot), zero rows dropped.
Matrix hnf(const Matrix& rows, std::size_t dim);

struct SaturationResult {
  Matrix hnf_basis;
  IntLattice saturation;
  Int index; // [saturation : L]
};

SaturationResult hnf_saturate(const IntLattice& L);

/// Membership of v in the row span of an HNF basis.
bool hnf_contains(const Matrix& hnf_rows, const IntVec& v);

/// Smith form of the row lattice spanned by `rows`: with the row vector
/// coordinate change c = v * V, the lattice becomes the direct sum of
/// invariants[i] * Z e_i for i < rank.
struct SmithResult {
  IntVec invariants; // nonzero, each divides the next
  Matrix V;          // dim x dim, unimodular
  Matrix V_inv;
  std::size_t dim = 0;
};

SmithResult smith(const Matrix& rows, std::size_t dim);

IntVec row_times(const IntVec& v, const Matrix& M);

/// Smallest m >= 2 not dividing g. Throws for g == 0.
Int min_nondivisor(const Int& g);

/// Largest e with p^e | m (m != 0).
unsigned long nu_p(const Int& m, const Int& p);

/// lcm(1, ..., m).
Int lcm_ladder(unsigned long m);

bool is_prime(const Int& n);
Int next_prime(const Int& n); // smallest prime > n

/// Smallest prime power q with q not dividing g (q = min_nondivisor(g)).
inline Int min_prime_power_nondivisor(const Int& g) { return min_nondivisor(g); }

} // namespace nilsep::lattice

#endif
