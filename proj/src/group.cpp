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


#include "nilsep/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace nilsep {

std::string family_name(Family f) {
  switch (f) {
  case Family::FreeAbelian: return "free_abelian";
  case Family::Unitriangular: return "unitriangular";
  case Family::Presentation: return "presentation";
  case Family::Quotient: return "quotient";
  }
  return "unknown";
}

void GroupLaw::mul_small(const std::int64_t*, const std::int64_t*, std::int64_t*, std::int64_t) const {
  throw Unsupported("frame unsupported: no fixed-width arithmetic for this group family");
}

void GroupLaw::inv_small(const std::int64_t*, std::int64_t*, std::int64_t) const {
  throw Unsupported("frame unsupported: no fixed-width arithmetic for this group family");
}

namespace {

std::int64_t reduce_mod(__int128 v, std::int64_t m) {
  if (m == 0) return static_cast<std::int64_t>(v);
  __int128 r = v % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

class AbelianLaw final : public GroupLaw {
public:
  explicit AbelianLaw(std::size_t d) : d_(d) {}
  Element mul(const Element& a, const Element& b) const override {
    Element r(d_);
    for (std::size_t k = 0; k < d_; ++k) r[k] = a[k] + b[k];
    return r;
  }
  Element inv(const Element& a) const override {
    Element r(d_);
    for (std::size_t k = 0; k < d_; ++k) r[k] = -a[k];
    return r;
  }
  bool has_small_arith() const override { return true; }
  void mul_small(const std::int64_t* a, const std::int64_t* b, std::int64_t* out,
                 std::int64_t m) const override {
    for (std::size_t k = 0; k < d_; ++k) out[k] = reduce_mod(static_cast<__int128>(a[k]) + b[k], m);
  }
  void inv_small(const std::int64_t* a, std::int64_t* out, std::int64_t m) const override {
    for (std::size_t k = 0; k < d_; ++k) out[k] = reduce_mod(-static_cast<__int128>(a[k]), m);
  }

private:
  std::size_t d_;
};

class MatrixLaw final : public GroupLaw {
public:
  explicit MatrixLaw(std::size_t n) : n_(n), pos_(unitriangular_positions(n)) {
    idx_.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t k = 0; k < pos_.size(); ++k) idx_[pos_[k].first][pos_[k].second] = k;
  }
  Element mul(const Element& a, const Element& b) const override {
    Element r(pos_.size());
    for (std::size_t k = 0; k < pos_.size(); ++k) {
      auto [i, j] = pos_[k];
      Int v = a[k] + b[k];
      for (std::size_t m = i + 1; m < j; ++m) v += a[idx_[i][m]] * b[idx_[m][j]];
      r[k] = std::move(v);
    }
    return r;
  }
  Element inv(const Element& a) const override {
    Element c(pos_.size());
    for (std::size_t k = 0; k < pos_.size(); ++k) {
      auto [i, j] = pos_[k];
      Int v = -a[k];
      for (std::size_t m = i + 1; m < j; ++m) v -= a[idx_[i][m]] * c[idx_[m][j]];
      c[k] = std::move(v);
    }
    return c;
  }
  bool has_small_arith() const override { return true; }
  void mul_small(const std::int64_t* a, const std::int64_t* b, std::int64_t* out,
                 std::int64_t m) const override {
    for (std::size_t k = 0; k < pos_.size(); ++k) {
      auto [i, j] = pos_[k];
      __int128 v = static_cast<__int128>(a[k]) + b[k];
      for (std::size_t t = i + 1; t < j; ++t) v += static_cast<__int128>(a[idx_[i][t]]) * b[idx_[t][j]];
      out[k] = reduce_mod(v, m);
    }
  }
  void inv_small(const std::int64_t* a, std::int64_t* out, std::int64_t m) const override {
    for (std::size_t k = 0; k < pos_.size(); ++k) {
      auto [i, j] = pos_[k];
      __int128 v = -static_cast<__int128>(a[k]);
      for (std::size_t t = i + 1; t < j; ++t) v -= static_cast<__int128>(a[idx_[i][t]]) * out[idx_[t][j]];
      out[k] = reduce_mod(v, m);
    }
  }

private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> pos_;
  std::vector<std::vector<std::size_t>> idx_;
};

// Collection from the left: w * x_k^e moves x_k^e past the tail of w in
// N_{k+1} using the automorphism y -> x_k^-1 y x_k of N_{k+1}.
class CollectionLaw final : public GroupLaw {
public:
  CollectionLaw(std::size_t h, const std::vector<Relation>& rels) : h_(h) {
    tails_.assign(h, std::vector<Element>(h, Element(h, 0)));
    for (const auto& r : rels) tails_[r.j][r.i] = r.tail;
    phi_.assign(h, std::vector<Element>(h, Element(h, 0)));
    phi_inv_.assign(h, std::vector<Element>(h, Element(h, 0)));
    for (std::size_t k = 0; k < h; ++k)
      for (std::size_t j = k + 1; j < h; ++j) {
        Element img = tails_[j][k];
        img[j] += 1;
        phi_[k][j] = std::move(img);
      }
    for (std::size_t kk = h; kk-- > 0;) {
      for (std::size_t j = h; j-- > kk + 1;) {
        Element y = apply(phi_inv_[kk], tails_[j][kk]);
        Element xj(h, 0);
        xj[j] = 1;
        phi_inv_[kk][j] = mul(xj, inv(y));
      }
    }
  }

  Element mul(const Element& a, const Element& b) const override {
    if (fast_) return eval(mul_poly_, mul_exp_, a, &b);
    Element w = a;
    for (std::size_t k = 0; k < h_; ++k)
      if (b[k] != 0) mul_gen_power(w, k, b[k]);
    return w;
  }

  Element inv(const Element& a) const override {
    if (fast_) return eval(inv_poly_, inv_exp_, a, nullptr);
    Element r(h_, 0);
    for (std::size_t k = h_; k-- > 0;)
      if (a[k] != 0) mul_gen_power(r, k, -a[k]);
    return r;
  }

private:
  // Coordinate l of a product (or inverse) is a_l (+ b_l) plus an
  // integer-valued polynomial in the earlier coordinates of weighted degree
  // at most the weight of l. Stored in the binomial basis prod_v C(x_v, e_v),
  // variables a_0..a_{h-1} then b_0..b_{h-1}.
  struct Term {
    std::vector<std::pair<std::size_t, unsigned>> vars;
    Int coeff;
  };
  using Poly = std::vector<std::vector<Term>>;

  static constexpr std::size_t kMaxTerms = 20000;

public:
  /// Switches to the interpolated polynomials once they reproduce the
  /// collection results; call only on a consistent presentation.
  void accelerate() {
    std::vector<unsigned> w(h_, 1);
    for (std::size_t l = 0; l < h_; ++l)
      for (std::size_t j = 0; j < l; ++j)
        for (std::size_t i = 0; i < j; ++i)
          if (tails_[j][i][l] != 0) w[l] = std::max(w[l], w[i] + w[j]);
    std::vector<unsigned> vw(2 * h_);
    for (std::size_t v = 0; v < 2 * h_; ++v) vw[v] = w[v % h_];
    std::map<std::vector<unsigned>, Element> mul_cache, inv_cache;
    auto point = [&](const std::vector<unsigned>& e, std::size_t n) {
      Element x(n, 0);
      for (std::size_t v = 0; v < n; ++v) x[v] = e[v];
      return x;
    };
    auto mul_at = [&](const std::vector<unsigned>& e) -> const Element& {
      auto it = mul_cache.find(e);
      if (it != mul_cache.end()) return it->second;
      Element x = point(e, 2 * h_);
      Element a(x.begin(), x.begin() + h_), b(x.begin() + h_, x.end());
      return mul_cache[e] = mul(a, b);
    };
    auto inv_at = [&](const std::vector<unsigned>& e) -> const Element& {
      auto it = inv_cache.find(e);
      if (it != inv_cache.end()) return it->second;
      return inv_cache[e] = inv(point(e, h_));
    };
    if (!interpolate(mul_poly_, mul_exp_, w, vw, 2 * h_, mul_at) ||
        !interpolate(inv_poly_, inv_exp_, w, vw, h_, inv_at))
      return;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int t = 0; t < 24; ++t) {
      Element a(h_), b(h_);
      for (std::size_t k = 0; k < h_; ++k) {
        a[k] = d(rng);
        b[k] = d(rng);
      }
      if (eval(mul_poly_, mul_exp_, a, &b) != mul(a, b) || eval(inv_poly_, inv_exp_, a, nullptr) != inv(a)) return;
    }
    fast_ = true;
  }

private:
  template <class At>
  bool interpolate(Poly& poly, std::vector<unsigned>& max_exp, const std::vector<unsigned>& w,
                   const std::vector<unsigned>& vw, std::size_t nvars, At&& at) {
    poly.assign(h_, {});
    max_exp.assign(nvars, 0);
    for (std::size_t l = 0; l < h_; ++l) {
      std::vector<std::size_t> vars;
      for (std::size_t v = 0; v < nvars; ++v)
        if (v % h_ < l) vars.push_back(v);
      std::vector<std::vector<unsigned>> alphas;
      std::vector<unsigned> cur(nvars, 0);
      bool overflow = false;
      std::function<void(std::size_t, unsigned)> rec = [&](std::size_t idx, unsigned budget) {
        if (overflow) return;
        if (idx == vars.size()) {
          alphas.push_back(cur);
          overflow = alphas.size() > kMaxTerms;
          return;
        }
        const std::size_t v = vars[idx];
        for (unsigned e = 0; e * vw[v] <= budget; ++e) {
          cur[v] = e;
          rec(idx + 1, budget - e * vw[v]);
        }
        cur[v] = 0;
      };
      rec(0, w[l]);
      if (overflow) return false;
      for (const auto& alpha : alphas) {
        // finite difference at 0 over the box below alpha
        Int c = 0;
        std::vector<unsigned> beta(nvars, 0);
        std::function<void(std::size_t, Int, int)> box = [&](std::size_t idx, Int weight, int sign) {
          if (idx == vars.size()) {
            c += sign * weight * at(beta)[l];
            return;
          }
          const std::size_t v = vars[idx];
          Int binom = 1;
          for (unsigned b = 0; b <= alpha[v]; ++b) {
            beta[v] = b;
            box(idx + 1, weight * binom, ((alpha[v] - b) % 2) ? -sign : sign);
            binom = binom * (alpha[v] - b) / (b + 1);
          }
          beta[v] = 0;
        };
        box(0, 1, 1);
        if (c == 0) continue;
        Term t;
        t.coeff = c;
        for (std::size_t v : vars)
          if (alpha[v]) {
            t.vars.emplace_back(v, alpha[v]);
            max_exp[v] = std::max(max_exp[v], alpha[v]);
          }
        if (t.vars.empty()) continue; // constant terms vanish at the identity
        poly[l].push_back(std::move(t));
      }
    }
    return true;
  }

  Element eval(const Poly& poly, const std::vector<unsigned>& max_exp, const Element& a, const Element* b) const {
    const std::size_t nvars = max_exp.size();
    std::vector<std::vector<Int>> binom(nvars);
    for (std::size_t v = 0; v < nvars; ++v) {
      const Int& x = v < h_ ? a[v] : (*b)[v - h_];
      auto& row = binom[v];
      row.resize(max_exp[v] + 1);
      row[0] = 1;
      for (unsigned k = 1; k <= max_exp[v]; ++k) {
        row[k] = row[k - 1] * (x - (k - 1));
        mpz_divexact_ui(row[k].get_mpz_t(), row[k].get_mpz_t(), k);
      }
    }
    Element r(h_);
    Int term;
    for (std::size_t l = 0; l < h_; ++l) {
      r[l] = b ? Int(a[l] + (*b)[l]) : Int(-a[l]);
      for (const auto& t : poly[l]) {
        term = t.coeff;
        for (const auto& [v, e] : t.vars) term *= binom[v][e];
        r[l] += term;
      }
    }
    return r;
  }

  Element power(const Element& g, const Int& n) const {
    Element base = n < 0 ? inv(g) : g;
    Int e = abs(n);
    Element r(h_, 0);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mul(r, base);
      e >>= 1;
      if (e > 0) base = mul(base, base);
    }
    return r;
  }

  Element apply(const std::vector<Element>& images, const Element& y) const {
    Element r(h_, 0);
    for (std::size_t j = 0; j < h_; ++j)
      if (y[j] != 0) r = mul(r, power(images[j], y[j]));
    return r;
  }

  Element aut_power(std::size_t k, const Int& e, const Element& y) const {
    const auto& base = e > 0 ? phi_[k] : phi_inv_[k];
    Int n = abs(e);
    if (n <= 8) {
      Element r = y;
      for (long t = 0; t < n.get_si(); ++t) r = apply(base, r);
      return r;
    }
    std::vector<Element> acc(h_, Element(h_, 0));
    for (std::size_t j = 0; j < h_; ++j) acc[j][j] = 1;
    std::vector<Element> sq = base;
    while (n > 0) {
      if (mpz_odd_p(n.get_mpz_t()))
        for (std::size_t j = k + 1; j < h_; ++j) acc[j] = apply(sq, acc[j]);
      n >>= 1;
      if (n > 0) {
        std::vector<Element> next(h_, Element(h_, 0));
        for (std::size_t j = k + 1; j < h_; ++j) next[j] = apply(sq, sq[j]);
        sq = std::move(next);
      }
    }
    return apply(acc, y);
  }

  void mul_gen_power(Element& w, std::size_t k, const Int& e) const {
    Element tail(h_, 0);
    bool nonzero = false;
    for (std::size_t j = k + 1; j < h_; ++j) {
      tail[j] = w[j];
      if (w[j] != 0) nonzero = true;
    }
    w[k] += e;
    if (!nonzero) return;
    Element c = aut_power(k, e, tail);
    for (std::size_t j = k + 1; j < h_; ++j) w[j] = c[j];
  }

  std::size_t h_;
  std::vector<std::vector<Element>> tails_;
  std::vector<std::vector<Element>> phi_, phi_inv_;
  bool fast_ = false;
  Poly mul_poly_, inv_poly_;
  std::vector<unsigned> mul_exp_, inv_exp_;
};

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) {
    if (k < 26)
      names.emplace_back(1, static_cast<char>('a' + k));
    else
      names.push_back("x" + std::to_string(k));
  }
  return names;
}

} // namespace

std::vector<std::pair<std::size_t, std::size_t>> unitriangular_positions(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i) pos.emplace_back(i, i + level);
  return pos;
}

GroupCtx::GroupCtx(GroupInit init)
    : family_(init.family), name_(std::move(init.name)), hirsch_(init.hirsch), degree_(init.degree),
      law_(std::move(init.law)), relations_(std::move(init.relations)), gens_(std::move(init.generating_set)),
      gen_names_(std::move(init.generator_names)) {
  if (!law_) throw InvalidArgument("group law missing");
  if (family_ == Family::Unitriangular) positions_ = unitriangular_positions(degree_);
  if (gens_.empty())
    for (std::size_t k = 0; k < hirsch_; ++k) gens_.push_back(basis(k));
  for (const auto& g : gens_) check(g);
  if (gen_names_.size() != gens_.size()) gen_names_ = default_names(gens_.size());

  // class: first weight whose left-normed basis commutators all vanish
  if (hirsch_ > 0) {
    std::vector<Element> layer;
    for (std::size_t k = 0; k < hirsch_; ++k) layer.push_back(basis(k));
    std::size_t c = 0;
    while (!layer.empty()) {
      ++c;
      if (c > hirsch_ + 1) throw InvalidArgument("presentation is not nilpotent");
      std::set<Element> next;
      for (std::size_t k = 0; k < hirsch_; ++k)
        for (const auto& w : layer) {
          Element cm = commutator(basis(k), w);
          if (!is_zero(cm)) next.insert(std::move(cm));
        }
      layer.assign(next.begin(), next.end());
    }
    class_ = c;
  }
}

GroupPtr GroupCtx::free_abelian(std::size_t rank) {
  GroupInit init;
  init.family = Family::FreeAbelian;
  init.name = "free_abelian(" + std::to_string(rank) + ")";
  init.hirsch = rank;
  init.degree = rank;
  init.law = std::make_shared<AbelianLaw>(rank);
  return std::make_shared<GroupCtx>(std::move(init));
}

GroupPtr GroupCtx::unitriangular(std::size_t degree) {
  if (degree < 3 || degree > 4)
    throw InvalidArgument("degree unsupported: unitriangular degree must be 3 or 4, got " + std::to_string(degree));
  GroupInit init;
  init.family = Family::Unitriangular;
  init.name = "unitriangular(" + std::to_string(degree) + ")";
  init.hirsch = degree * (degree - 1) / 2;
  init.degree = degree;
  init.law = std::make_shared<MatrixLaw>(degree);
  return std::make_shared<GroupCtx>(std::move(init));
}

GroupPtr GroupCtx::presentation(std::size_t hirsch, std::vector<Relation> relations) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& r : relations) {
    std::string where = "relation (j=" + std::to_string(r.j) + ", i=" + std::to_string(r.i) + ")";
    if (r.j >= hirsch || r.i >= r.j) throw InvalidArgument(where + ": need 0 <= i < j < hirsch");
    if (r.tail.size() != hirsch) throw InvalidArgument(where + ": tail length must equal hirsch");
    for (std::size_t k = 0; k <= r.j; ++k)
      if (r.tail[k] != 0) throw InvalidArgument(where + ": tail must vanish at positions <= j");
    if (!seen.insert({r.j, r.i}).second) throw InvalidArgument(where + ": duplicate");
  }
  GroupInit init;
  init.family = Family::Presentation;
  init.name = "presentation(" + std::to_string(hirsch) + ")";
  init.hirsch = hirsch;
  init.degree = hirsch;
  auto law = std::make_shared<CollectionLaw>(hirsch, relations);
  init.relations = relations;
  auto mul = [&](const Element& a, const Element& b) { return law->mul(a, b); };
  auto unit = [&](std::size_t k) {
    Element e(hirsch, 0);
    e[k] = 1;
    return e;
  };
  for (std::size_t k = 0; k < hirsch; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        if (mul(mul(unit(k), unit(j)), unit(i)) != mul(unit(k), mul(unit(j), unit(i))))
          throw InvalidArgument("inconsistent relations: associativity fails on basis triple (" + std::to_string(k) +
                                ", " + std::to_string(j) + ", " + std::to_string(i) + ")");
      }
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dist(-2, 2);
  for (int t = 0; t < 24; ++t) {
    Element x(hirsch), y(hirsch), z(hirsch);
    for (std::size_t k = 0; k < hirsch; ++k) {
      x[k] = dist(rng);
      y[k] = dist(rng);
      z[k] = dist(rng);
    }
    if (mul(mul(x, y), z) != mul(x, mul(y, z)))
      throw InvalidArgument("inconsistent relations: associativity fails on sampled elements " + element_to_string(x) +
                            ", " + element_to_string(y) + ", " + element_to_string(z));
    if (!is_zero(mul(x, law->inv(x)))) throw InvalidArgument("inconsistent relations: inverse check failed");
  }
  law->accelerate();
  init.law = law;
  return std::make_shared<GroupCtx>(std::move(init));
}

Element GroupCtx::basis(std::size_t k) const {
  if (k >= hirsch_) throw InvalidArgument("basis index out of range");
  Element e(hirsch_, 0);
  e[k] = 1;
  return e;
}

void GroupCtx::check(const Element& g) const {
  if (g.size() != hirsch_)
    throw InvalidArgument("element length mismatch: expected " + std::to_string(hirsch_) + " coordinates, got " +
                          std::to_string(g.size()));
}

Element GroupCtx::mul(const Element& a, const Element& b) const {
  check(a);
  check(b);
  return law_->mul(a, b);
}

Element GroupCtx::inv(const Element& a) const {
  check(a);
  return law_->inv(a);
}

Element GroupCtx::pow(const Element& a, const Int& n) const {
  check(a);
  Element base = n < 0 ? law_->inv(a) : a;
  Int e = abs(n);
  Element r = identity();
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = law_->mul(r, base);
    e >>= 1;
    if (e > 0) base = law_->mul(base, base);
  }
  return r;
}

Element GroupCtx::commutator(const Element& g, const Element& h) const {
  return mul(mul(g, h), inv(mul(h, g)));
}

Element GroupCtx::conjugate(const Element& g, const Element& h) const { return mul(mul(h, g), inv(h)); }

Element GroupCtx::product(std::span<const Element> factors) const {
  Element r = identity();
  for (const auto& f : factors) r = mul(r, f);
  return r;
}

std::size_t GroupCtx::depth(const Element& g) const {
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g[k] != 0) return k;
  return g.size();
}

namespace unitriangular_nf {

Element from_matrix_coords(std::size_t degree, const Element& m) {
  MatrixLaw law(degree);
  Element cur = m, e(m.size(), 0);
  for (std::size_t k = 0; k < m.size(); ++k) {
    e[k] = cur[k];
    if (e[k] == 0) continue;
    Element step(m.size(), 0);
    step[k] = -e[k];
    cur = law.mul(step, cur);
  }
  return e;
}

Element to_matrix_coords(std::size_t degree, const Element& e) {
  MatrixLaw law(degree);
  Element cur(e.size(), 0);
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    Element step(e.size(), 0);
    step[k] = e[k];
    cur = law.mul(cur, step);
  }
  return cur;
}

std::vector<Relation> relations(std::size_t degree) {
  MatrixLaw law(degree);
  const std::size_t h = degree * (degree - 1) / 2;
  std::vector<Relation> rels;
  for (std::size_t j = 0; j < h; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      Element xi(h, 0), xj(h, 0);
      xi[i] = 1;
      xj[j] = 1;
      Element t = law.mul(law.inv(law.mul(xi, xj)), law.mul(xj, xi));
      Element tail = from_matrix_coords(degree, t);
      if (!is_zero(tail)) rels.push_back({j, i, tail});
    }
  return rels;
}

} // namespace unitriangular_nf

std::string element_to_string(const Element& g) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k) os << ',';
    os << g[k].get_str();
  }
  os << ']';
  return os.str();
}

} // namespace nilsep
