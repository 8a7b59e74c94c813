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


#include "nilsep/subgroup.hpp"

#include "nilsep/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace nilsep {

namespace {

struct Gcdext {
  Int d, x, y;
};

Gcdext gcdext(const Int& a, const Int& b) {
  Gcdext r;
  mpz_gcdext(r.d.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

} // namespace

Subgroup Subgroup::induce(GroupPtr G, std::vector<Element> gens) {
  Subgroup H;
  const std::size_t h = G->hirsch();
  for (const auto& g : gens) G->check(g);
  H.G_ = G;
  H.gens_ = std::move(gens);
  H.slots_.assign(h, std::nullopt);
  std::deque<Element> queue(H.gens_.begin(), H.gens_.end());
  auto queue_commutators = [&](std::size_t k) {
    for (std::size_t j = 0; j < h; ++j)
      if (j != k && H.slots_[j]) queue.push_back(G->commutator(*H.slots_[k], *H.slots_[j]));
  };
  while (!queue.empty()) {
    Element g = std::move(queue.front());
    queue.pop_front();
    while (true) {
      const std::size_t k = G->depth(g);
      if (k == h) break;
      if (g[k] < 0) g = G->inv(g);
      auto& slot = H.slots_[k];
      if (!slot) {
        slot = std::move(g);
        queue_commutators(k);
        break;
      }
      const Int a = (*slot)[k], b = g[k];
      if (divides(a, b)) {
        g = G->mul(g, G->pow(*slot, -(b / a)));
        continue;
      }
      Gcdext e = gcdext(a, b);
      Element s = *slot;
      Element fresh = G->mul(G->pow(s, e.x), G->pow(g, e.y));
      queue.push_back(G->mul(s, G->pow(fresh, -(a / e.d))));
      queue.push_back(G->mul(g, G->pow(fresh, -(b / e.d))));
      slot = std::move(fresh);
      queue_commutators(k);
      break;
    }
  }
  // reduce coordinates at later pivot depths into [0, lead)
  for (std::size_t k = 0; k < h; ++k) {
    if (!H.slots_[k]) continue;
    for (std::size_t j = k + 1; j < h; ++j) {
      if (!H.slots_[j]) continue;
      Int q = floor_div((*H.slots_[k])[j], (*H.slots_[j])[j]);
      if (q != 0) H.slots_[k] = G->mul(*H.slots_[k], G->pow(*H.slots_[j], -q));
    }
  }
  return H;
}

Subgroup Subgroup::whole(GroupPtr G) {
  std::vector<Element> b;
  for (std::size_t k = 0; k < G->hirsch(); ++k) b.push_back(G->basis(k));
  return induce(std::move(G), std::move(b));
}

Subgroup Subgroup::trivial(GroupPtr G) { return induce(std::move(G), {}); }

std::vector<Element> Subgroup::induced_seq() const {
  std::vector<Element> out;
  for (const auto& s : slots_)
    if (s) out.push_back(*s);
  return out;
}

std::vector<std::size_t> Subgroup::pivot_depths() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < slots_.size(); ++k)
    if (slots_[k]) out.push_back(k);
  return out;
}

Int Subgroup::lead(std::size_t depth) const { return slots_[depth] ? (*slots_[depth])[depth] : Int(0); }

Element Subgroup::sift(const Element& g) const {
  G_->check(g);
  Element r = g;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] == 0) continue;
    if (!slots_[k] || !divides((*slots_[k])[k], r[k])) return r;
    r = G_->mul(r, G_->pow(*slots_[k], -(r[k] / (*slots_[k])[k])));
  }
  return r;
}

bool Subgroup::contains(const Element& g) const { return is_zero(sift(g)); }

bool Subgroup::contains(const Subgroup& K) const {
  for (const auto& s : K.slots_)
    if (s && !contains(*s)) return false;
  return true;
}

bool Subgroup::is_trivial() const {
  return std::none_of(slots_.begin(), slots_.end(), [](const auto& s) { return s.has_value(); });
}

std::size_t Subgroup::hirsch() const {
  return static_cast<std::size_t>(std::count_if(slots_.begin(), slots_.end(), [](const auto& s) { return s.has_value(); }));
}

std::optional<Int> Subgroup::index() const {
  Int idx = 1;
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    if (!slots_[k]) return std::nullopt;
    idx *= (*slots_[k])[k];
  }
  return idx;
}

bool Subgroup::is_normal() const {
  for (const auto& s : slots_) {
    if (!s) continue;
    for (std::size_t k = 0; k < G_->hirsch(); ++k)
      if (!contains(G_->conjugate(*s, G_->basis(k)))) return false;
  }
  return true;
}

Subgroup Subgroup::truncate(std::size_t i) const {
  if (i > slots_.size()) throw InvalidArgument("series index out of range");
  Subgroup K;
  K.G_ = G_;
  K.slots_.assign(slots_.size(), std::nullopt);
  for (std::size_t k = i; k < slots_.size(); ++k) {
    K.slots_[k] = slots_[k];
    if (slots_[k]) K.gens_.push_back(*slots_[k]);
  }
  return K;
}

Subgroup Subgroup::join(const Subgroup& K) const {
  std::vector<Element> g = induced_seq();
  for (auto& s : K.induced_seq()) g.push_back(std::move(s));
  return induce(G_, std::move(g));
}

namespace {

// Depth-first search for g with g_{<k} = 0, g_k = b and g^m in s * J, one
// coordinate at a time: after sifting through J the coordinate j of
// s^-1 g^m is m * g_j + (terms in earlier coordinates).
bool find_root(const GroupCtx& G, const Subgroup& J, const Element& s_inv, const Int& m, std::size_t j,
               Element& g) {
  const std::size_t h = G.hirsch();
  if (j == h) return true;
  for (std::size_t t = j; t < h; ++t) g[t] = 0;
  Element w = G.mul(s_inv, G.pow(g, m));
  for (std::size_t i = 0; i < j; ++i) {
    if (w[i] == 0) continue;
    const Int c = J.lead(i);
    if (c == 0 || !divides(c, w[i])) return false;
    w = G.mul(w, G.pow(*J.slot(i), -(w[i] / c)));
  }
  const Int Q = w[j];
  const Int c = J.lead(j);
  if (c == 0) {
    if (!divides(m, Q)) return false;
    g[j] = -Q / m;
    return find_root(G, J, s_inv, m, j + 1, g);
  }
  // m x + Q = 0 (mod c)
  Gcdext e = gcdext(m, c);
  if (!divides(e.d, Q)) return false;
  const Int step = c / e.d;
  const Int x0 = mod_pos(-(Q / e.d) * e.x, step);
  for (Int t = 0; t < e.d; ++t) {
    g[j] = x0 + t * step;
    if (find_root(G, J, s_inv, m, j + 1, g)) return true;
  }
  return false;
}

std::vector<Int> divisors(const Int& a) {
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= a; ++d)
    if (divides(d, a)) {
      small.push_back(d);
      if (d * d != a) large.push_back(a / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

} // namespace

Subgroup isolator(const Subgroup& H) {
  const GroupPtr& G = H.group();
  const std::size_t h = G->hirsch();
  Subgroup J = Subgroup::trivial(G);
  // sqrt(H) cap N_k = sqrt(H cap N_k), built from the bottom of the series
  for (std::size_t k = h; k-- > 0;) {
    if (!H.slot(k)) continue;
    const Element& s = *H.slot(k);
    const Int a = s[k];
    if (a > Int("1000000000000")) throw Unsupported("isolator: leading exponent too large to factor");
    const Element s_inv = G->inv(s);
    for (const Int& b : divisors(a)) {
      Element g(h, 0);
      g[k] = b;
      if (b == a) {
        g = s;
      } else if (!find_root(*G, J, s_inv, a / b, k + 1, g)) {
        continue;
      }
      std::vector<Element> gens = J.induced_seq();
      gens.push_back(g);
      gens.push_back(s);
      J = Subgroup::induce(G, std::move(gens));
      break;
    }
  }
  return J;
}

std::vector<TrackedElement> gamma2_generators(const GroupCtx& G, const std::vector<TrackedElement>& T,
                                              std::size_t c) {
  std::vector<TrackedElement> out;
  std::set<Element> seen;
  std::vector<TrackedElement> layer = T;
  for (std::size_t w = 2; w <= c; ++w) {
    std::vector<TrackedElement> next;
    std::set<Element> in_layer;
    for (const auto& t : T)
      for (const auto& x : layer) {
        Element cm = G.commutator(t.g, x.g);
        if (is_zero(cm) || !in_layer.insert(cm).second) continue;
        Int len = 2 * (t.length + x.length);
        next.push_back({cm, len});
        if (!seen.count(cm) && !seen.count(G.inv(cm))) {
          seen.insert(cm);
          out.push_back({std::move(cm), len});
        }
      }
    layer = std::move(next);
    if (layer.empty()) break;
  }
  return out;
}

std::vector<Element> gamma2_generators(const GroupCtx& G, const std::vector<Element>& T, std::size_t c) {
  std::vector<TrackedElement> tracked;
  for (const auto& t : T) tracked.push_back({t, 1});
  std::vector<Element> out;
  for (auto& e : gamma2_generators(G, tracked, c)) out.push_back(std::move(e.g));
  return out;
}

namespace {

// Shortest-first greedy removal of generators already in the span of the kept ones.
std::vector<TrackedElement> prune(const GroupPtr& G, std::vector<TrackedElement> T) {
  std::sort(T.begin(), T.end(), [](const TrackedElement& x, const TrackedElement& y) {
    return x.length != y.length ? x.length < y.length : x.g < y.g;
  });
  std::vector<TrackedElement> kept;
  Subgroup span = Subgroup::trivial(G);
  for (auto& t : T) {
    if (is_zero(t.g) || span.contains(t.g)) continue;
    kept.push_back(std::move(t));
    std::vector<Element> gens;
    for (const auto& k : kept) gens.push_back(k.g);
    span = Subgroup::induce(G, std::move(gens));
  }
  return kept;
}

} // namespace

IntersectionResult intersect_series(const Subgroup& H, std::size_t i) {
  const GroupPtr& G = H.group();
  if (i > G->hirsch()) throw InvalidArgument("series index out of range");
  std::vector<TrackedElement> T;
  for (const auto& g : H.gens())
    if (!is_zero(g)) T.push_back({g, 1});
  if (i > 0) T = prune(G, std::move(T));
  const std::size_t c = G->nilpotency_class();
  for (std::size_t level = 0; level < i; ++level) {
    IntVec values;
    Int n = 0;
    for (const auto& t : T)
      if (t.g[level] != 0) {
        values.push_back(t.g[level]);
        n = std::max<Int>(n, abs(t.g[level]));
      }
    if (values.empty()) continue;
    // t0 projects onto a generator of the image of H cap N_level
    Element t0 = G->identity();
    Int len0 = 0;
    for (const Int& letter : lattice::generator_word(values, n)) {
      auto it = std::find_if(T.begin(), T.end(), [&](const TrackedElement& t) { return t.g[level] == letter; });
      if (it != T.end()) {
        t0 = G->mul(t0, it->g);
        len0 += it->length;
      } else {
        it = std::find_if(T.begin(), T.end(), [&](const TrackedElement& t) { return t.g[level] == -letter; });
        t0 = G->mul(t0, G->inv(it->g));
        len0 += it->length;
      }
    }
    const Int d = t0[level];
    std::vector<TrackedElement> next;
    for (const auto& t : T) {
      const Int q = t.g[level] / d;
      next.push_back({G->mul(t.g, G->pow(t0, -q)), t.length + abs(q) * len0});
    }
    for (auto& e : gamma2_generators(*G, T, c)) next.push_back(std::move(e));
    T = prune(G, std::move(next));
  }
  std::vector<Element> gens;
  for (const auto& t : T) gens.push_back(t.g);
  return {Subgroup::induce(G, std::move(gens)), std::move(T)};
}

SchreierResult schreier_generators(const Subgroup& K, const std::vector<Element>& S) {
  const GroupPtr& G = K.group();
  auto idx = K.index();
  if (!idx) throw InvalidArgument("schreier_generators: subgroup has infinite index");
  if (*idx > 1000000) throw Unsupported("schreier_generators: index exceeds 10^6");
  // right coset Kg is determined by the reduced left coset g^-1 K
  auto key = [&](const Element& g) {
    Element r = G->inv(g);
    for (std::size_t k = 0; k < r.size(); ++k) {
      const Int q = floor_div(r[k], K.lead(k));
      if (q != 0) r = G->mul(r, G->pow(*K.slot(k), -q));
    }
    return r;
  };
  std::vector<Element> letters = S;
  for (const auto& s : S) letters.push_back(G->inv(s));
  SchreierResult out;
  std::vector<std::size_t> depth;
  std::map<Element, std::size_t> where;
  out.transversal.push_back(G->identity());
  depth.push_back(0);
  where[key(G->identity())] = 0;
  for (std::size_t q = 0; q < out.transversal.size(); ++q)
    for (const auto& s : letters) {
      Element v = G->mul(out.transversal[q], s);
      if (where.emplace(key(v), out.transversal.size()).second) {
        out.transversal.push_back(std::move(v));
        depth.push_back(depth[q] + 1);
      }
    }
  std::set<Element> seen;
  for (std::size_t q = 0; q < out.transversal.size(); ++q)
    for (const auto& s : S) {
      Element w = G->mul(out.transversal[q], s);
      const std::size_t r = where.at(key(w));
      Element gen = G->mul(w, G->inv(out.transversal[r]));
      if (is_zero(gen) || !seen.insert(gen).second) continue;
      out.generators.push_back(std::move(gen));
      out.lengths.push_back(depth[q] + 1 + depth[r]);
    }
  return out;
}

namespace {

// G/H for normal H whose induced sequence has unit leads: coordinates are
// the non-pivot coordinates of the reduced coset representative.
class QuotientLaw final : public GroupLaw {
public:
  explicit QuotientLaw(Subgroup H) : H_(std::move(H)) {
    for (std::size_t k = 0; k < H_.group()->hirsch(); ++k)
      if (!H_.slot(k)) free_.push_back(k);
  }
  std::size_t rank() const { return free_.size(); }
  Element project(const Element& g) const {
    const GroupCtx& G = *H_.group();
    Element r = g;
    for (std::size_t k = 0; k < r.size(); ++k)
      if (H_.slot(k) && r[k] != 0) r = G.mul(r, G.pow(*H_.slot(k), -r[k]));
    Element q(free_.size());
    for (std::size_t t = 0; t < free_.size(); ++t) q[t] = r[free_[t]];
    return q;
  }
  Element embed(const Element& q) const {
    Element g = H_.group()->identity();
    for (std::size_t t = 0; t < free_.size(); ++t) g[free_[t]] = q[t];
    return g;
  }
  Element mul(const Element& a, const Element& b) const override {
    return project(H_.group()->mul(embed(a), embed(b)));
  }
  Element inv(const Element& a) const override { return project(H_.group()->inv(embed(a))); }

private:
  Subgroup H_;
  std::vector<std::size_t> free_;
};

std::vector<Element> projected_generators(const GroupCtx& G, const std::function<Element(const Element&)>& pi) {
  std::vector<Element> out;
  for (const auto& s : G.generating_set()) {
    Element q = pi(s);
    if (!is_zero(q) && std::find(out.begin(), out.end(), q) == out.end()) out.push_back(std::move(q));
  }
  return out;
}

GroupPtr abelian_with_gens(std::size_t rank, std::vector<Element> gens, const std::string& name) {
  GroupPtr base = GroupCtx::free_abelian(rank);
  GroupInit init;
  init.family = Family::FreeAbelian;
  init.name = name;
  init.hirsch = rank;
  init.degree = rank;
  init.law = base->law_ptr();
  init.generating_set = std::move(gens);
  return std::make_shared<GroupCtx>(std::move(init));
}

} // namespace

Quotient quotient_by_isolated_normal(const Subgroup& H) {
  const GroupPtr& G = H.group();
  if (!H.is_normal()) throw InvalidArgument("quotient: subgroup is not normal");
  if (!(isolator(H) == H)) throw InvalidArgument("quotient: subgroup is not isolated (pass its isolator)");
  const std::string name = G->name() + "/H";
  const std::size_t h = G->hirsch();

  bool unit_leads = true;
  for (std::size_t k = 0; k < h; ++k)
    if (H.slot(k) && H.lead(k) != 1) unit_leads = false;

  if (unit_leads) {
    auto law = std::make_shared<QuotientLaw>(H);
    std::function<Element(const Element&)> pi = [law](const Element& g) { return law->project(g); };
    bool abelian = true;
    for (std::size_t i = 0; i < law->rank() && abelian; ++i)
      for (std::size_t j = 0; j < i && abelian; ++j) {
        Element ei(law->rank(), 0), ej(law->rank(), 0);
        ei[i] = 1;
        ej[j] = 1;
        if (law->mul(ei, ej) != law->mul(ej, ei)) abelian = false;
      }
    std::vector<Element> gens = projected_generators(*G, pi);
    if (abelian) return {abelian_with_gens(law->rank(), std::move(gens), name), pi};
    GroupInit init;
    init.family = Family::Quotient;
    init.name = name;
    init.hirsch = law->rank();
    init.degree = law->rank();
    init.law = law;
    init.generating_set = std::move(gens);
    return {std::make_shared<GroupCtx>(std::move(init)), pi};
  }

  bool contains_gamma2 = true;
  for (std::size_t i = 0; i < h && contains_gamma2; ++i)
    for (std::size_t j = 0; j < i && contains_gamma2; ++j)
      if (!H.contains(G->commutator(G->basis(i), G->basis(j)))) contains_gamma2 = false;
  if (!contains_gamma2 || G->family() == Family::Quotient)
    throw Unsupported("quotient unsupported: non-abelian quotient by a subgroup with non-unit leads");

  // G/H is abelian: a linear map on coordinates modulo the relation lattice
  const bool matrix = G->family() == Family::Unitriangular;
  const auto positions = G->matrix_positions();
  auto vec = [matrix, positions, h](const Element& g) {
    Element v = g;
    if (matrix)
      for (std::size_t k = 0; k < h; ++k)
        if (positions[k].second != positions[k].first + 1) v[k] = 0;
    return v;
  };
  lattice::Matrix rel;
  for (const auto& s : H.induced_seq()) rel.push_back(vec(s));
  for (const auto& r : G->relations()) rel.push_back(r.tail);
  auto snf = std::make_shared<lattice::SmithResult>(lattice::smith(rel, h));
  const std::size_t rank = snf->invariants.size();
  for (const auto& inv : snf->invariants)
    if (inv != 1) throw InvalidArgument("quotient: subgroup is not isolated");
  std::function<Element(const Element&)> pi = [snf, vec, rank, h](const Element& g) {
    Element c = lattice::row_times(vec(g), snf->V);
    return Element(c.begin() + static_cast<std::ptrdiff_t>(rank), c.begin() + static_cast<std::ptrdiff_t>(h));
  };
  return {abelian_with_gens(h - rank, projected_generators(*G, pi), name), pi};
}

} // namespace nilsep
