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


#include "nilsep/lattice.hpp"

#include <algorithm>
#include <utility>

namespace nilsep::lattice {

namespace {

struct ExtGcd {
  Int g, s, t; // g = s*a + t*b, g >= 0
};

ExtGcd ext_gcd(const Int& a, const Int& b) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int round_div(const Int& num, const Int& den) {
  // nearest integer to num/den, den > 0, ties toward -infinity
  Int twice = 2 * num + den;
  return floor_div(twice, 2 * den);
}

bool within_bound(const IntVec& x, const Int& max_abs) {
  for (const auto& v : x)
    if (2 * abs(v) > max_abs) return false;
  return true;
}

// Pairwise moves along the syzygy x_i += t*a_j/g, x_j -= t*a_i/g until no
// pair lowers sum(x^2).
void reduce_pairs(std::span<const Int> a, IntVec& x) {
  const std::size_t n = a.size();
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (a[j] == 0) continue;
        Int g = gcd_int(a[i], a[j]);
        Int si = a[j] / g, sj = -a[i] / g;
        Int den = si * si + sj * sj;
        Int t0 = round_div(-(x[i] * si + x[j] * sj), den);
        Int best_t = 0;
        Int best = x[i] * x[i] + x[j] * x[j];
        for (Int t = t0 - 1; t <= t0 + 1; ++t) {
          Int xi = x[i] + t * si, xj = x[j] + t * sj;
          Int v = xi * xi + xj * xj;
          if (v < best) {
            best = v;
            best_t = t;
          }
        }
        if (best_t != 0) {
          x[i] += best_t * si;
          x[j] += best_t * sj;
          improved = true;
        }
      }
    }
  }
}

// Moves that bring an out-of-box coefficient inside while keeping its
// partner inside; tried after the L2 descent stalls.
bool repair_box(std::span<const Int> a, IntVec& x, const Int& M) {
  const std::size_t n = a.size();
  for (int round = 0; round < 64; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (2 * abs(x[i]) <= M) continue;
      for (std::size_t j = 0; j < n && 2 * abs(x[i]) > M; ++j) {
        if (j == i || a[j] == 0 || a[i] == 0) continue;
        Int g = gcd_int(a[i], a[j]);
        Int si = a[j] / g, sj = -a[i] / g;
        // t near -x_i / s_i places x_i closest to zero
        Int t0 = si > 0 ? round_div(-x[i], si) : round_div(x[i], Int(-si));
        for (Int tt = t0 - 2; tt <= t0 + 2; ++tt) {
          Int xi = x[i] + tt * si, xj = x[j] + tt * sj;
          if (2 * abs(xi) <= M && 2 * abs(xj) <= M) {
            x[i] = xi;
            x[j] = xj;
            changed = true;
            break;
          }
        }
      }
    }
    if (within_bound(x, M)) return true;
    if (!changed) return false;
  }
  return within_bound(x, M);
}

Int round_q(const mpq_class& q) {
  Int num = 2 * q.get_num() + q.get_den();
  return floor_div(num, Int(2 * q.get_den()));
}

mpq_class dot_q(const std::vector<mpq_class>& u, const std::vector<mpq_class>& v) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

struct Gso {
  std::vector<std::vector<mpq_class>> star;
  std::vector<std::vector<mpq_class>> mu;
  std::vector<mpq_class> norm;
};

Gso gram_schmidt(const Matrix& B) {
  const std::size_t n = B.size(), d = n ? B[0].size() : 0;
  Gso g;
  g.star.assign(n, std::vector<mpq_class>(d));
  g.mu.assign(n, std::vector<mpq_class>(n));
  g.norm.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) g.star[i][k] = B[i][k];
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<mpq_class> bi(d);
      for (std::size_t k = 0; k < d; ++k) bi[k] = B[i][k];
      g.mu[i][j] = dot_q(bi, g.star[j]) / g.norm[j];
      for (std::size_t k = 0; k < d; ++k) g.star[i][k] -= g.mu[i][j] * g.star[j][k];
    }
    g.norm[i] = dot_q(g.star[i], g.star[i]);
  }
  return g;
}

// LLL with delta = 3/4 and exact rational Gram-Schmidt data.
void lll_reduce(Matrix& B) {
  const std::size_t n = B.size();
  if (n < 2) return;
  const mpq_class delta(3, 4);
  Gso g = gram_schmidt(B);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      Int q = round_q(g.mu[k][jj]);
      if (q == 0) continue;
      for (std::size_t t = 0; t < B[k].size(); ++t) B[k][t] -= q * B[jj][t];
      for (std::size_t i = 0; i < jj; ++i) g.mu[k][i] -= mpq_class(q) * g.mu[jj][i];
      g.mu[k][jj] -= mpq_class(q);
    }
    if (g.norm[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm[k - 1]) {
      ++k;
    } else {
      std::swap(B[k], B[k - 1]);
      g = gram_schmidt(B);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

// Nearest-plane reduction of x modulo the row lattice B.
void babai(const Matrix& B, IntVec& x) {
  if (B.empty()) return;
  Gso g = gram_schmidt(B);
  const std::size_t d = x.size();
  for (std::size_t k = B.size(); k-- > 0;) {
    std::vector<mpq_class> xv(d);
    for (std::size_t t = 0; t < d; ++t) xv[t] = x[t];
    Int c = round_q(dot_q(xv, g.star[k]) / g.norm[k]);
    if (c != 0)
      for (std::size_t t = 0; t < d; ++t) x[t] -= c * B[k][t];
  }
}

Int excess(const IntVec& x, const Int& box) {
  Int e = 0;
  for (const auto& v : x) {
    Int over = 2 * abs(v) - box;
    if (over > 0) e += over;
  }
  return e;
}

// Greedy descent on the total box violation using +-1 and +-2 multiples of
// the reduced syzygy vectors and their pairwise sums.
bool descend_box(const Matrix& B, IntVec& x, const Int& box) {
  std::vector<IntVec> moves;
  for (std::size_t i = 0; i < B.size(); ++i) {
    moves.push_back(B[i]);
    for (std::size_t j = i + 1; j < B.size(); ++j) {
      IntVec s(x.size()), t(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) {
        s[k] = B[i][k] + B[j][k];
        t[k] = B[i][k] - B[j][k];
      }
      moves.push_back(std::move(s));
      moves.push_back(std::move(t));
    }
  }
  Int cur = excess(x, box);
  while (cur > 0) {
    Int best = cur;
    IntVec best_x;
    for (const auto& m : moves)
      for (int c : {-2, -1, 1, 2}) {
        IntVec y = x;
        for (std::size_t k = 0; k < y.size(); ++k) y[k] += c * m[k];
        Int e = excess(y, box);
        if (e < best) {
          best = e;
          best_x = std::move(y);
        }
      }
    if (best_x.empty()) return false;
    x = std::move(best_x);
    cur = best;
  }
  return true;
}

// Exhaustive search over the coefficient box, lexicographic order.
bool box_search(std::span<const Int> a, const Int& g, const Int& M, IntVec& out) {
  const std::size_t n = a.size();
  const long half = static_cast<long>(floor_div(M, 2).get_si());
  std::vector<long> c(n, -half);
  while (true) {
    Int s = 0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * c[i];
    if (s == g) {
      out.assign(n, 0);
      for (std::size_t i = 0; i < n; ++i) out[i] = c[i];
      return true;
    }
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (c[k] < half) {
        ++c[k];
        break;
      }
      c[k] = -half;
      if (k == 0) return false;
    }
  }
}

} // namespace

BezoutResult eff_bezout(std::span<const Int> a) {
  if (a.empty()) throw InvalidArgument("degenerate input: empty vector");
  Int M = 0;
  for (const auto& v : a) M = std::max(M, Int(abs(v)));
  if (M == 0) throw InvalidArgument("degenerate input");
  // with max |a| = 1 some coefficient must have magnitude 1
  const Int box = M < 2 ? Int(2) : M;
  const std::size_t n = a.size();
  BezoutResult r;
  r.coeffs.assign(n, 0);
  if (n == 1) {
    r.gcd = abs(a[0]);
    r.coeffs[0] = a[0] > 0 ? 1 : -1;
    return r;
  }
  Int g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ExtGcd e = ext_gcd(g, a[i]);
    for (std::size_t k = 0; k < i; ++k) r.coeffs[k] *= e.s;
    r.coeffs[i] = e.t;
    g = e.g;
  }
  r.gcd = g;
  reduce_pairs(a, r.coeffs);
  if (within_bound(r.coeffs, box) || repair_box(a, r.coeffs, box)) return r;

  // row HNF of [a | I]: the first row carries (gcd, x), the rest span the syzygies
  Matrix aug(n, IntVec(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    aug[i][0] = a[i];
    aug[i][i + 1] = 1;
  }
  Matrix H = hnf(aug, n + 1);
  r.gcd = H[0][0];
  for (std::size_t i = 0; i < n; ++i) r.coeffs[i] = H[0][i + 1];
  Matrix syz;
  for (std::size_t row = 1; row < H.size(); ++row) syz.emplace_back(H[row].begin() + 1, H[row].end());
  lll_reduce(syz);
  babai(syz, r.coeffs);
  reduce_pairs(a, r.coeffs);
  if (within_bound(r.coeffs, box)) return r;
  if (repair_box(a, r.coeffs, box) || descend_box(syz, r.coeffs, box)) return r;
  IntVec found;
  Int volume = 1;
  for (std::size_t i = 0; i < n && volume <= 4000000; ++i) volume *= box + 1;
  if (volume <= 4000000 && box_search(a, r.gcd, box, found)) {
    r.coeffs = std::move(found);
    return r;
  }
  throw Error("eff_bezout: reducer failed to meet the coefficient bound");
  return r;
}

std::vector<Int> generator_word(std::span<const Int> S, const Int& n) {
  if (S.empty()) throw InvalidArgument("generator_word: empty generating set");
  IntVec uniq;
  for (const auto& s : S) {
    if (s == 0) continue;
    if (abs(s) > n) throw InvalidArgument("generator_word: |s| exceeds bound n");
    if (std::find(uniq.begin(), uniq.end(), s) == uniq.end()) uniq.push_back(s);
  }
  if (uniq.empty()) throw InvalidArgument("generator_word: only zero generators");
  BezoutResult b = eff_bezout(uniq);
  std::vector<Int> pos, neg;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    Int c = b.coeffs[i];
    for (Int k = 0; k < abs(c); ++k) (c > 0 ? pos : neg).push_back(c > 0 ? uniq[i] : Int(-uniq[i]));
  }
  pos.insert(pos.end(), neg.begin(), neg.end());
  return pos;
}

Matrix hnf(const Matrix& rows, std::size_t dim) {
  Matrix A;
  for (const auto& r : rows) {
    if (r.size() != dim) throw InvalidArgument("dimension mismatch in lattice basis");
    if (!is_zero(r)) A.push_back(r);
  }
  std::size_t prow = 0;
  for (std::size_t col = 0; col < dim && prow < A.size(); ++col) {
    for (std::size_t r = prow + 1; r < A.size(); ++r) {
      if (A[r][col] == 0) continue;
      ExtGcd e = ext_gcd(A[prow][col], A[r][col]);
      Int ap = A[prow][col] / e.g, ar = A[r][col] / e.g;
      IntVec np(dim), nr(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        np[k] = e.s * A[prow][k] + e.t * A[r][k];
        nr[k] = ap * A[r][k] - ar * A[prow][k];
      }
      A[prow] = std::move(np);
      A[r] = std::move(nr);
    }
    if (A[prow][col] == 0) continue;
    if (A[prow][col] < 0)
      for (auto& v : A[prow]) v = -v;
    for (std::size_t r = 0; r < prow; ++r) {
      Int q = floor_div(A[r][col], A[prow][col]);
      if (q != 0)
        for (std::size_t k = 0; k < dim; ++k) A[r][k] -= q * A[prow][k];
    }
    ++prow;
  }
  A.resize(prow);
  return A;
}

bool hnf_contains(const Matrix& H, const IntVec& v) {
  IntVec r = v;
  for (const auto& row : H) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    for (std::size_t k = 0; k < p; ++k)
      if (r[k] != 0) return false;
    if (!divides(row[p], r[p])) return false;
    Int q = r[p] / row[p];
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= q * row[k];
  }
  return is_zero(r);
}

SmithResult smith(const Matrix& rows, std::size_t dim) {
  Matrix A;
  for (const auto& r : rows) {
    if (r.size() != dim) throw InvalidArgument("dimension mismatch in lattice basis");
    A.push_back(r);
  }
  SmithResult res;
  res.dim = dim;
  res.V.assign(dim, IntVec(dim, 0));
  res.V_inv.assign(dim, IntVec(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) res.V[i][i] = res.V_inv[i][i] = 1;
  const std::size_t m = A.size();

  auto col_swap = [&](std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (auto& r : A) std::swap(r[c1], r[c2]);
    for (auto& r : res.V) std::swap(r[c1], r[c2]);
    std::swap(res.V_inv[c1], res.V_inv[c2]);
  };
  // columns (t, j): col_t <- s*col_t + u*col_j, col_j <- -(b/g) col_t + (a/g) col_j
  auto col_combine = [&](std::size_t t, std::size_t j) {
    Int a = A[t][t], b = A[t][j];
    ExtGcd e = ext_gcd(a, b);
    if (divides(a, b)) e = {abs(a), a > 0 ? Int(1) : Int(-1), 0};
    Int ag = a / e.g, bg = b / e.g;
    auto apply = [&](Matrix& M) {
      for (auto& r : M) {
        Int ct = r[t], cj = r[j];
        r[t] = e.s * ct + e.t * cj;
        r[j] = ag * cj - bg * ct;
      }
    };
    apply(A);
    apply(res.V);
    IntVec rt = res.V_inv[t], rj = res.V_inv[j];
    for (std::size_t k = 0; k < dim; ++k) {
      res.V_inv[t][k] = ag * rt[k] + bg * rj[k];
      res.V_inv[j][k] = -e.t * rt[k] + e.s * rj[k];
    }
  };
  auto row_combine = [&](std::size_t t, std::size_t i) {
    Int a = A[t][t], b = A[i][t];
    ExtGcd e = ext_gcd(a, b);
    if (divides(a, b)) e = {abs(a), a > 0 ? Int(1) : Int(-1), 0};
    Int ag = a / e.g, bg = b / e.g;
    for (std::size_t k = 0; k < dim; ++k) {
      Int rt = A[t][k], ri = A[i][k];
      A[t][k] = e.s * rt + e.t * ri;
      A[i][k] = ag * ri - bg * rt;
    }
  };

  for (std::size_t t = 0; t < std::min(m, dim); ++t) {
    // pivot: smallest nonzero entry in the remaining block
    std::size_t pi = m, pj = dim;
    Int best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < dim; ++j)
        if (A[i][j] != 0 && (best == 0 || abs(A[i][j]) < best)) {
          best = abs(A[i][j]);
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    std::swap(A[t], A[pi]);
    col_swap(t, pj);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (A[i][t] != 0) {
          row_combine(t, i);
          clean = false;
        }
      for (std::size_t j = t + 1; j < dim; ++j)
        if (A[t][j] != 0) {
          col_combine(t, j);
          clean = false;
        }
      if (!clean) continue;
      bool fixed = true;
      for (std::size_t i = t + 1; i < m && fixed; ++i)
        for (std::size_t j = t + 1; j < dim; ++j)
          if (!divides(A[t][t], A[i][j])) {
            for (std::size_t k = 0; k < dim; ++k) A[t][k] += A[i][k];
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (A[t][t] < 0)
      for (auto& v : A[t]) v = -v;
    res.invariants.push_back(A[t][t]);
  }
  return res;
}

IntVec row_times(const IntVec& v, const Matrix& M) {
  IntVec out(M.empty() ? 0 : M[0].size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += v[i] * M[i][k];
  }
  return out;
}

SaturationResult hnf_saturate(const IntLattice& L) {
  if (L.ambient_rank == 0) throw InvalidArgument("ambient rank must be positive");
  SaturationResult out;
  out.hnf_basis = hnf(L.basis, L.ambient_rank);
  SmithResult s = smith(out.hnf_basis, L.ambient_rank);
  Matrix sat_rows;
  out.index = 1;
  for (std::size_t i = 0; i < s.invariants.size(); ++i) {
    sat_rows.push_back(s.V_inv[i]);
    out.index *= s.invariants[i];
  }
  out.saturation.ambient_rank = L.ambient_rank;
  out.saturation.basis = hnf(sat_rows, L.ambient_rank);
  return out;
}

Int min_nondivisor(const Int& g) {
  if (g == 0) throw InvalidArgument("min_nondivisor: every integer divides 0");
  Int m = 2;
  while (divides(m, g)) ++m;
  return m;
}

unsigned long nu_p(const Int& m, const Int& p) {
  if (m == 0) throw InvalidArgument("nu_p: zero argument");
  if (p < 2) throw InvalidArgument("nu_p: p must be at least 2");
  unsigned long e = 0;
  Int r = m;
  while (divides(p, r)) {
    r /= p;
    ++e;
  }
  return e;
}

Int lcm_ladder(unsigned long m) {
  Int l = 1;
  for (unsigned long k = 2; k <= m; ++k) l = lcm_int(l, Int(k));
  return l;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int next_prime(const Int& n) {
  Int r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

} // namespace nilsep::lattice
