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


#include "nilsep/separability.hpp"

#include "nilsep/lattice.hpp"

namespace nilsep {

using lattice::is_prime;
using lattice::next_prime;
using lattice::nu_p;

unsigned long kpc_constant(const Int& p, std::size_t c) {
  if (!is_prime(p)) throw InvalidArgument("kpc: p must be prime");
  if (c < 1) throw InvalidArgument("kpc: class must be positive");
  Int f = 1;
  for (std::size_t i = 2; i <= c; ++i) f *= Int(static_cast<unsigned long>(i));
  unsigned long k = 0;
  for (Int pw = p; pw <= f; pw *= p) ++k;
  return k;
}

namespace {

Subgroup coordinate_subgroup(const GroupPtr& G, std::size_t k) {
  std::vector<Element> gens;
  for (std::size_t j = k; j < G->hirsch(); ++j) gens.push_back(G->basis(j));
  return Subgroup::induce(G, gens);
}

// sift through K at depths below limit; empty when a pivot blocks
std::optional<Element> sift_above(const Subgroup& K, Element x, std::size_t limit) {
  const GroupCtx& G = *K.group();
  for (std::size_t k = 0; k < limit; ++k) {
    if (x[k] == 0) continue;
    const auto& s = K.slot(k);
    if (!s || !divides((*s)[k], x[k])) return std::nullopt;
    x = G.mul(x, G.pow(*s, -(x[k] / (*s)[k])));
  }
  return x;
}

void require_outside(const Subgroup& H, const Element& g) {
  H.group()->check(g);
  if (H.contains(g)) throw InvalidArgument("element lies in the subgroup");
}

const Int kMaxLevel = Int(1) << 31;

struct Core {
  const Subgroup& H;
  const GroupPtr& G;
  std::size_t h;
  std::size_t j = 0;

  // is x outside <image of sub, N_{j+1}> in the frame at level L
  bool separated(const Element& x, const Subgroup& sub, const Int& L) const {
    auto F = std::make_shared<const Frame>(G, to_int64(L));
    std::vector<FElem> gens;
    for (const auto& s : sub.induced_seq()) gens.push_back(F->project(s));
    for (std::size_t k = j + 1; k < h; ++k) gens.push_back(F->basis(k));
    return !FiniteSubgroup::induce(F, gens).contains(F->project(x));
  }

  DepthCertificate certificate(const Element& g, const Int& L) const {
    auto F = std::make_shared<const Frame>(G, to_int64(L));
    DepthCertificate c;
    c.modulus = L;
    c.quotient_order = pow_int(L, j + 1);
    for (std::size_t k = j + 1; k < h; ++k) {
      IntVec v(h, 0);
      v[k] = 1;
      c.normal_gens.push_back(v);
    }
    c.kind = c.normal_gens.empty() ? CertKind::CongruenceLevel : CertKind::Refined;
    auto conv = [](const FElem& x) {
      IntVec v;
      for (auto e : x) v.push_back(Int(static_cast<long>(e)));
      return v;
    };
    c.g_image = conv(F->project(g));
    for (const auto& s : H.induced_seq()) c.h_images.push_back(conv(F->project(s)));
    return c;
  }
};

Separation run_core(const Subgroup& H, const Element& g) {
  const GroupPtr& G = H.group();
  Core core{H, G, G->hirsch()};
  Separation out;
  const std::size_t h = core.h;
  std::size_t j = h - 1;
  while (j > 0 && !H.join(coordinate_subgroup(G, j)).contains(g)) --j;
  core.j = j;
  out.layer = j;
  const Subgroup K = H.join(coordinate_subgroup(G, j + 1));
  auto r = sift_above(K, g, j);
  if (!r) throw Error("separation: layer sift failed");
  out.z = G->inv(*r);

  if (G->nilpotency_class() <= 1) {
    auto cert = DepthOracle(H, {kMaxLevel, 4096, {}}).abelian_depth(g);
    if (!cert) throw Error("separation: abelian branch found no modulus");
    Int q = cert->modulus;
    for (Int p = 2;; p = next_prime(p))
      if (divides(p, q)) {
        out.prime = p;
        out.exponent = nu_p(q, p);
        break;
      }
    out.trace.push_back({j, q});
    out.certificate = std::move(cert);
    return out;
  }
  if (!G->supports_frames()) throw Unsupported("frame unsupported for family " + family_name(G->family()));

  const Int d1 = abs(out.z[j]);
  const Int d2 = abs(K.lead(j));
  Int p = 2;
  if (d2 != 0)
    for (;; p = next_prime(p))
      if (nu_p(d2, p) > nu_p(d1, p)) break;
  const unsigned long kpc = kpc_constant(p, G->nilpotency_class());
  Int L = pow_int(p, nu_p(d1, p) + 1);
  for (std::size_t i = j + 1; i-- > 0;) {
    const Subgroup Hi = H.truncate(i);
    if (L >= kMaxLevel) break;
    if (!core.separated(out.z, Hi, L)) {
      Int d = H.lead(i) == 0 ? Int(1) : abs(H.lead(i));
      L *= pow_int(p, kpc + nu_p(d, p));
      for (int n = 0; n < 64 && L < kMaxLevel && !core.separated(out.z, Hi, L); ++n) L *= p;
    }
    out.trace.push_back({i, L});
  }
  if (L >= kMaxLevel || !core.separated(g, H, L)) {
    out.note = "level ascent exceeded frame range";
    return out;
  }
  for (Int q = 2; q <= p; q = next_prime(q))
    for (Int Q = q; Q <= L; Q *= q)
      if (core.separated(g, H, Q)) {
        out.prime = q;
        out.exponent = nu_p(Q, q);
        out.certificate = core.certificate(g, Q);
        return out;
      }
  throw Error("separation: ladder search lost the ascent level");
}

} // namespace

CosetWitness central_coset_witness(const Subgroup& H, const Element& g) {
  require_outside(H, g);
  const GroupCtx& G = *H.group();
  const std::size_t h = G.hirsch();
  auto r = sift_above(H, g, h - 1);
  if (!r) throw InvalidArgument("not in coset");
  CosetWitness w;
  w.z = G.inv(*r);
  w.h = G.mul(g, w.z);
  if (!H.contains(w.h)) throw Error("coset witness: g z outside H");
  return w;
}

Separation separate_central(const Subgroup& H, const Element& x) {
  require_outside(H, x);
  const GroupCtx& G = *H.group();
  for (std::size_t k = 0; k < G.hirsch(); ++k)
    if (!G.is_identity(G.commutator(x, G.basis(k)))) throw InvalidArgument("element is not central");
  return run_core(H, x);
}

Separation separate(const Subgroup& H, const Element& g) {
  require_outside(H, g);
  return run_core(H, g);
}

std::string ReductionReport::describe() const {
  auto s = [](const std::optional<Int>& v) { return v ? to_string(*v) : std::string("none"); };
  return "D_G=" + s(depth_in_group) + " D_G/H=" + s(depth_in_quotient) + (equal ? " equal" : " differ");
}

ReductionReport normal_depth_reduction(const Subgroup& H, const Element& g, const DepthOptions& opt) {
  require_outside(H, g);
  if (!H.is_normal()) throw InvalidArgument("subgroup is not normal");
  DepthOptions o = opt;
  if (o.levels.empty()) o.levels = congruence_levels(H.group()->hirsch(), o.cap);
  DepthOracle O(H, o);
  ReductionReport rep;
  const Int bound = o.budget + 1;
  if (auto c = O.scan_depth(g, bound)) rep.depth_in_group = c->quotient_order;
  if (auto c = O.scan_depth(g, bound, true)) rep.depth_in_quotient = c->quotient_order;
  rep.equal = rep.depth_in_group == rep.depth_in_quotient;
  return rep;
}

std::optional<unsigned> phi_registry(const GroupCtx& G) {
  if (G.nilpotency_class() <= 1) return 1;
  if (G.family() == Family::Unitriangular && G.degree() == 3) return 3;
  return std::nullopt;
}

std::optional<unsigned> psi_constant(const Subgroup& H) {
  if (!H.is_normal()) throw InvalidArgument("subgroup is not normal");
  Subgroup R = isolator(H);
  if (R.is_trivial()) return phi_registry(*H.group());
  try {
    return phi_registry(*quotient_by_isolated_normal(R).group);
  } catch (const Unsupported&) {
    return std::nullopt;
  }
}

} // namespace nilsep
