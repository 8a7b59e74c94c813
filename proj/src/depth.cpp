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


#include "nilsep/depth.hpp"

#include <algorithm>
#include "json.hpp"

namespace nilsep {

using lattice::Matrix;
using lattice::min_nondivisor;
using lattice::next_prime;
using lattice::nu_p;
using lattice::row_times;
using lattice::smith;

std::string cert_kind_name(CertKind k) {
  switch (k) {
  case CertKind::AbelianModulus: return "abelian_modulus";
  case CertKind::CongruenceLevel: return "congruence_level";
  case CertKind::Refined: return "refined";
  }
  return "?";
}

std::string depth_mode_name(DepthMode m) { return m == DepthMode::Exact ? "exact" : "congruence"; }

std::string DepthResult::describe() const { return value ? to_string(*value) : "> " + to_string(budget); }

std::vector<std::int64_t> congruence_levels(std::size_t hirsch, std::size_t cap) {
  std::vector<std::int64_t> out;
  if (hirsch == 0) return out;
  const Int C(static_cast<unsigned long>(cap));
  for (Int p = 2; pow_int(p, hirsch) <= C; p = next_prime(p)) {
    Int q = p;
    while (pow_int(q * p, hirsch) <= C) q *= p;
    out.push_back(to_int64(q));
  }
  return out;
}

namespace {

bool abelian_like(const GroupCtx& G) { return G.nilpotency_class() <= 1; }

// coordinates carrying the abelianization, or empty when unsupported
std::optional<std::vector<std::size_t>> abelianization_coords(const GroupCtx& G) {
  std::vector<std::size_t> c;
  if (abelian_like(G)) {
    for (std::size_t k = 0; k < G.hirsch(); ++k) c.push_back(k);
    return c;
  }
  if (G.family() == Family::Unitriangular) {
    for (std::size_t k = 0; k + 1 < G.degree(); ++k) c.push_back(k);
    return c;
  }
  return std::nullopt;
}

IntVec restrict_to(const Element& g, const std::vector<std::size_t>& coords) {
  IntVec v;
  v.reserve(coords.size());
  for (auto k : coords) v.push_back(g[k]);
  return v;
}

Int dot_mod(const IntVec& f, const Element& g, const Int& m) {
  Int s = 0;
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * g[k];
  return mod_pos(s, m);
}

IntVec felem_to_int(const FElem& x) {
  IntVec v;
  for (auto e : x) v.push_back(Int(static_cast<long>(e)));
  return v;
}

std::optional<FElem> int_to_felem(const IntVec& v, const Frame& F) {
  if (v.size() != F.hirsch()) return std::nullopt;
  FElem x;
  for (const auto& e : v) {
    if (e < 0 || e >= F.level()) return std::nullopt;
    x.push_back(e.get_si());
  }
  return x;
}

} // namespace

Validation validate_certificate(const Subgroup& H, const Element& g, const DepthCertificate& c) {
  auto fail = [](std::string r) { return Validation{false, std::move(r)}; };
  try {
    const GroupCtx& G = *H.group();
    if (g.size() != G.hirsch()) return fail("element length mismatch");
    if (c.modulus < 2) return fail("modulus below 2");
    if (c.quotient_order < 1) return fail("order not positive");
    const auto hs = H.induced_seq();
    if (c.h_images.size() != hs.size()) return fail("witness mismatch: subgroup image count");

    if (c.kind == CertKind::AbelianModulus) {
      const Int& m = c.modulus;
      if (c.functional.size() != G.hirsch()) return fail("functional length mismatch");
      auto ab = abelianization_coords(G);
      if (!ab) return fail("abelian functional unsupported for family " + family_name(G.family()));
      std::vector<char> allowed(G.hirsch(), 0);
      for (auto k : *ab) allowed[k] = 1;
      Int content = m;
      for (std::size_t k = 0; k < G.hirsch(); ++k) {
        if (!allowed[k] && mod_pos(c.functional[k], m) != 0) return fail("functional is not a morphism");
        content = gcd_int(content, c.functional[k]);
      }
      if (c.g_image != IntVec{dot_mod(c.functional, g, m)}) return fail("witness mismatch: image of g");
      Int d = m;
      for (std::size_t i = 0; i < hs.size(); ++i) {
        Int im = dot_mod(c.functional, hs[i], m);
        if (c.h_images[i] != IntVec{im}) return fail("witness mismatch: image of subgroup");
        d = gcd_int(d, im);
      }
      if (divides(d, c.g_image[0])) return fail("image of g lies in image of H");
      if (m / content != c.quotient_order) return fail("order mismatch");
      return {true, ""};
    }

    if (c.kind == CertKind::CongruenceLevel && !c.normal_gens.empty())
      return fail("congruence certificate carries normal generators");
    if (!G.supports_frames()) return fail("frame unsupported for family " + family_name(G.family()));
    if (!fits_int64(c.modulus) || c.modulus >= (Int(1) << 31)) return fail("modulus out of range");
    auto F = std::make_shared<const Frame>(H.group(), to_int64(c.modulus));
    std::vector<FElem> ngens;
    for (const auto& v : c.normal_gens) {
      auto x = int_to_felem(v, *F);
      if (!x) return fail("malformed normal generator");
      ngens.push_back(*x);
    }
    FiniteSubgroup N = FiniteSubgroup::induce(F, ngens);
    if (!N.is_normal()) return fail("normal subgroup not normal");
    if (felem_to_int(F->project(g)) != c.g_image) return fail("witness mismatch: image of g");
    std::vector<FElem> himg;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      FElem x = F->project(hs[i]);
      if (felem_to_int(x) != c.h_images[i]) return fail("witness mismatch: image of subgroup");
      himg.push_back(std::move(x));
    }
    if (N.join(himg).contains(F->project(g))) return fail("image of g lies in image of H");
    if (N.index() != c.quotient_order) return fail("order mismatch");
    return {true, ""};
  } catch (const std::exception& e) {
    return fail(std::string("malformed certificate: ") + e.what());
  }
}

namespace {

using nlohmann::json;

json vec_json(const IntVec& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(to_string(e));
  return a;
}

IntVec json_vec(const json& a) {
  if (!a.is_array()) throw InvalidArgument("certificate: expected array");
  IntVec v;
  for (const auto& e : a) {
    if (e.is_string()) v.push_back(parse_int(e.get<std::string>()));
    else if (e.is_number_integer()) v.push_back(Int(static_cast<long>(e.get<std::int64_t>())));
    else throw InvalidArgument("certificate: expected integer");
  }
  return v;
}

Int json_int(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("certificate: missing field ") + key);
  const json& e = j.at(key);
  if (e.is_string()) return parse_int(e.get<std::string>());
  if (e.is_number_integer()) return Int(static_cast<long>(e.get<std::int64_t>()));
  throw InvalidArgument(std::string("certificate: bad field ") + key);
}

} // namespace

std::string certificate_to_json(const DepthCertificate& c) {
  json j;
  j["kind"] = cert_kind_name(c.kind);
  j["modulus"] = to_string(c.modulus);
  j["quotient_order"] = to_string(c.quotient_order);
  j["functional"] = vec_json(c.functional);
  j["normal_gens"] = json::array();
  for (const auto& v : c.normal_gens) j["normal_gens"].push_back(vec_json(v));
  json w;
  w["g_image"] = vec_json(c.g_image);
  w["h_images"] = json::array();
  for (const auto& v : c.h_images) w["h_images"].push_back(vec_json(v));
  j["witness_check"] = w;
  return j.dump();
}

DepthCertificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("certificate: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("certificate: expected object");
  DepthCertificate c;
  const std::string kind = j.value("kind", "");
  if (kind == "abelian_modulus") c.kind = CertKind::AbelianModulus;
  else if (kind == "congruence_level") c.kind = CertKind::CongruenceLevel;
  else if (kind == "refined") c.kind = CertKind::Refined;
  else throw InvalidArgument("certificate: unknown kind '" + kind + "'");
  c.modulus = json_int(j, "modulus");
  c.quotient_order = json_int(j, "quotient_order");
  if (j.contains("functional")) c.functional = json_vec(j["functional"]);
  if (j.contains("normal_gens"))
    for (const auto& v : j["normal_gens"]) c.normal_gens.push_back(json_vec(v));
  if (!j.contains("witness_check")) throw InvalidArgument("certificate: missing field witness_check");
  const json& w = j["witness_check"];
  c.g_image = json_vec(w.at("g_image"));
  for (const auto& v : w.at("h_images")) c.h_images.push_back(json_vec(v));
  return c;
}

DepthOracle::DepthOracle(Subgroup H, DepthOptions opt)
    : H_(std::move(H)), opt_(std::move(opt)), mu_(std::make_unique<std::mutex>()) {
  const GroupPtr& G = H_.group();
  if (!G) throw InvalidArgument("depth: subgroup without group");
  abelian_ = abelian_like(*G);
  auto ab = abelianization_coords(*G);
  if (!ab || (!abelian_ && !G->supports_frames()))
    throw Unsupported("frame unsupported for family " + family_name(G->family()));
  ab_coords_ = *ab;
  Matrix rows;
  for (const auto& h : H_.induced_seq()) rows.push_back(restrict_to(h, ab_coords_));
  ab_snf_ = smith(rows, ab_coords_.size());

  if (abelian_ && opt_.levels.empty()) return;
  std::vector<std::int64_t> lv = opt_.levels.empty() ? congruence_levels(G->hirsch(), opt_.cap) : opt_.levels;
  for (auto m : lv) {
    Level L;
    L.frame = std::make_shared<const Frame>(G, m);
    L.normals = enumerate_normal_subgroups(L.frame, opt_.cap);
    for (const auto& h : H_.induced_seq()) L.h_images.push_back(L.frame->project(h));
    for (const auto& N : *L.normals) L.index.push_back(N.index());
    L.joins.resize(L.normals->size());
    L.contains_h.assign(L.normals->size(), -1);
    levels_.push_back(std::move(L));
  }
}

const FiniteSubgroup& DepthOracle::join_at(const Level& L, std::size_t i) const {
  std::lock_guard<std::mutex> lock(*mu_);
  if (!L.joins[i]) L.joins[i] = (*L.normals)[i].join(L.h_images);
  return *L.joins[i];
}

std::optional<DepthCertificate> DepthOracle::abelian_depth(const Element& g) const {
  const GroupCtx& G = *H_.group();
  const std::size_t d = ab_coords_.size();
  const std::size_t r = ab_snf_.invariants.size();
  const IntVec c = row_times(restrict_to(g, ab_coords_), ab_snf_.V);
  std::optional<Int> best;
  IntVec phi_c(d, 0);
  // free part: smallest prime power missing the content
  Int content = 0;
  for (std::size_t i = r; i < d; ++i) content = gcd_int(content, c[i]);
  if (content != 0) {
    Int q = min_nondivisor(content);
    best = q;
    for (std::size_t i = r; i < d; ++i)
      if (!divides(q, c[i])) {
        phi_c[i] = 1;
        break;
      }
  }
  // torsion part: p^(v_p(c_i)+1) for primes with v_p(t_i) > v_p(c_i)
  const Int cap = opt_.budget + 1;
  for (std::size_t i = 0; i < r; ++i) {
    const Int& t = ab_snf_.invariants[i];
    Int ci = mod_pos(c[i], t);
    if (ci == 0) continue;
    for (Int p = 2; p <= t && (!best || p < *best) && p <= cap; p = next_prime(p)) {
      unsigned long vt = nu_p(t, p);
      unsigned long vc = nu_p(ci, p);
      if (vt <= vc) continue;
      Int q = pow_int(p, vc + 1);
      if (!best || q < *best) {
        best = q;
        std::fill(phi_c.begin(), phi_c.end(), Int(0));
        phi_c[i] = q / gcd_int(q, t);
      }
    }
  }
  if (!best) return std::nullopt;
  const Int& q = *best;
  DepthCertificate cert;
  cert.kind = CertKind::AbelianModulus;
  cert.modulus = q;
  cert.functional.assign(G.hirsch(), 0);
  Int cont = q;
  for (std::size_t a = 0; a < d; ++a) {
    Int s = 0;
    for (std::size_t b = 0; b < d; ++b) s += ab_snf_.V[a][b] * phi_c[b];
    s = mod_pos(s, q);
    cert.functional[ab_coords_[a]] = s;
    cont = gcd_int(cont, s);
  }
  cert.quotient_order = q / cont;
  cert.g_image = {dot_mod(cert.functional, g, q)};
  for (const auto& h : H_.induced_seq()) cert.h_images.push_back({dot_mod(cert.functional, h, q)});
  return cert;
}

std::optional<DepthCertificate> DepthOracle::scan_depth(const Element& g, const Int& bound,
                                                        bool kernel_contains_h) const {
  Int best = bound;
  std::optional<DepthCertificate> cert;
  for (const auto& L : levels_) {
    const FElem gi = L.frame->project(g);
    for (std::size_t i = 0; i < L.normals->size(); ++i) {
      if (L.index[i] >= best) break;
      const FiniteSubgroup& N = (*L.normals)[i];
      bool separates;
      if (kernel_contains_h) {
        if (L.contains_h[i] < 0) {
          bool all = true;
          for (const auto& x : L.h_images) all = all && N.contains(x);
          std::lock_guard<std::mutex> lock(*mu_);
          L.contains_h[i] = all ? 1 : 0;
        }
        separates = L.contains_h[i] == 1 && !N.contains(gi);
      } else {
        separates = !join_at(L, i).contains(gi);
      }
      if (!separates) continue;
      best = L.index[i];
      DepthCertificate c;
      c.modulus = L.frame->level();
      c.quotient_order = best;
      for (const auto& x : N.induced_seq()) c.normal_gens.push_back(felem_to_int(x));
      c.kind = c.normal_gens.empty() ? CertKind::CongruenceLevel : CertKind::Refined;
      c.g_image = felem_to_int(gi);
      for (const auto& x : L.h_images) c.h_images.push_back(felem_to_int(x));
      cert = std::move(c);
      break;
    }
  }
  return cert;
}

DepthResult DepthOracle::depth(const Element& g) const {
  H_.group()->check(g);
  if (H_.contains(g)) throw InvalidArgument("element lies in the subgroup");
  DepthResult res;
  res.budget = opt_.budget;
  std::optional<DepthCertificate> cert = abelian_depth(g);
  if (!abelian_) {
    Int bound = opt_.budget + 1;
    if (cert && cert->quotient_order < bound) bound = cert->quotient_order;
    if (auto s = scan_depth(g, bound)) cert = std::move(s);
  }
  if (cert) {
    res.witness = cert;
    if (cert->quotient_order <= opt_.budget) res.value = cert->quotient_order;
  }
  res.mode = abelian_ || (res.value && *res.value <= 8) ? DepthMode::Exact : DepthMode::Congruence;
  return res;
}

DepthResult depth(const Subgroup& H, const Element& g, const DepthOptions& opt) {
  return DepthOracle(H, opt).depth(g);
}

} // namespace nilsep
