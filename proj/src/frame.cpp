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


#include "nilsep/frame.hpp"

#include "nilsep/lattice.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

namespace nilsep {

namespace {

std::int64_t modp(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}


// inverse of a unit modulo m (m > 1)
std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, r = modp(a, m), y = 1;
  while (r != 0) {
    std::int64_t q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, y) = std::make_pair(y, x - q * y);
  }
  return modp(x, m);
}

} // namespace

Frame::Frame(GroupPtr G, std::int64_t level) : G_(std::move(G)), m_(level) {
  if (!G_) throw InvalidArgument("frame: null group");
  if (!G_->supports_frames())
    throw Unsupported("frame unsupported for family " + family_name(G_->family()));
  if (m_ < 1 || m_ >= (std::int64_t(1) << 31)) throw InvalidArgument("frame level out of range");
  h_ = G_->hirsch();
}

Int Frame::order() const { return pow_int(Int(m_), h_); }

FElem Frame::project(const Element& g) const {
  G_->check(g);
  FElem x(h_);
  Int mm(m_);
  for (std::size_t k = 0; k < h_; ++k) x[k] = to_int64(mod_pos(g[k], mm));
  return x;
}

Element Frame::lift(const FElem& x) const {
  Element g(h_);
  for (std::size_t k = 0; k < h_; ++k) g[k] = Int(static_cast<long>(x[k]));
  return g;
}

FElem Frame::basis(std::size_t k) const {
  FElem x(h_, 0);
  x.at(k) = m_ == 1 ? 0 : 1;
  return x;
}

FElem Frame::mul(const FElem& a, const FElem& b) const {
  FElem out(h_);
  G_->law().mul_small(a.data(), b.data(), out.data(), m_);
  return out;
}

FElem Frame::inv(const FElem& a) const {
  FElem out(h_);
  G_->law().inv_small(a.data(), out.data(), m_);
  return out;
}

FElem Frame::pow(const FElem& a, std::int64_t e) const {
  FElem base = e < 0 ? inv(a) : a;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  FElem acc = identity();
  while (n) {
    if (n & 1) acc = mul(acc, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return acc;
}

FElem Frame::commutator(const FElem& a, const FElem& b) const {
  return mul(mul(a, b), mul(inv(a), inv(b)));
}

FElem Frame::conjugate(const FElem& a, const FElem& by) const { return mul(mul(by, a), inv(by)); }

std::size_t Frame::depth(const FElem& a) const {
  for (std::size_t k = 0; k < h_; ++k)
    if (a[k] != 0) return k;
  return h_;
}

bool Frame::is_identity(const FElem& a) const { return depth(a) == h_; }

std::uint64_t Frame::encode(const FElem& a) const {
  std::uint64_t c = 0;
  for (std::size_t k = 0; k < h_; ++k) c = c * static_cast<std::uint64_t>(m_) + static_cast<std::uint64_t>(a[k]);
  return c;
}

FElem Frame::decode(std::uint64_t code) const {
  FElem a(h_);
  for (std::size_t k = h_; k-- > 0;) {
    a[k] = static_cast<std::int64_t>(code % static_cast<std::uint64_t>(m_));
    code /= static_cast<std::uint64_t>(m_);
  }
  return a;
}

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

// x^w with x[k] = gcd(x[k], m) afterwards
FElem normalize_lead(const Frame& F, const FElem& x, std::size_t k) {
  std::int64_t m = F.level(), u = x[k];
  std::int64_t d = gcd64(u, m);
  if (u == d) return x;
  std::int64_t mp = m / d, up = u / d;
  std::int64_t w = mp == 1 ? 1 : inv_mod(up, mp);
  while (gcd64(w, m) != 1) w += mp;
  return F.pow(x, w);
}

void ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& g, std::int64_t& s, std::int64_t& t) {
  std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  g = r0;
  s = s0;
  t = t0;
}

} // namespace

void FiniteSubgroup::absorb(std::vector<FElem> queue) {
  const Frame& F = *F_;
  const std::size_t h = F.hirsch();
  const std::int64_t m = F.level();
  if (slots_.size() != h) slots_.assign(h, FElem{});
  auto closure_of = [&](const FElem& x, std::size_t k) {
    queue.push_back(F.pow(x, m / x[k]));
    for (std::size_t j = 0; j < h; ++j)
      if (j != k && !slots_[j].empty()) queue.push_back(F.commutator(x, slots_[j]));
  };
  for (;;) {
    while (!queue.empty()) {
      FElem x = std::move(queue.back());
      queue.pop_back();
      for (std::size_t k = F.depth(x); k < h; k = F.depth(x)) {
        FElem& s = slots_[k];
        if (s.empty()) {
          s = normalize_lead(F, x, k);
          closure_of(s, k);
          break;
        }
        if (x[k] % s[k] == 0) {
          x = F.mul(x, F.pow(s, -(x[k] / s[k])));
          continue;
        }
        std::int64_t g, al, be;
        ext_gcd(s[k], x[k], g, al, be);
        FElem nw = normalize_lead(F, F.mul(F.pow(s, al), F.pow(x, be)), k);
        queue.push_back(s);
        queue.push_back(x);
        s = nw;
        closure_of(s, k);
        break;
      }
    }
    // closure audit
    for (std::size_t i = 0; i < h; ++i) {
      if (slots_[i].empty()) continue;
      FElem p = F.pow(slots_[i], m / slots_[i][i]);
      if (!contains(p)) queue.push_back(p);
      for (std::size_t j = i + 1; j < h; ++j) {
        if (slots_[j].empty()) continue;
        FElem c = F.commutator(slots_[i], slots_[j]);
        if (!contains(c)) queue.push_back(c);
      }
    }
    if (queue.empty()) break;
  }
  for (std::size_t i = 0; i < h; ++i) {
    if (slots_[i].empty()) continue;
    for (std::size_t j = i + 1; j < h; ++j) {
      if (slots_[j].empty()) continue;
      std::int64_t q = slots_[i][j] / slots_[j][j];
      if (q != 0) slots_[i] = F.mul(slots_[i], F.pow(slots_[j], -q));
    }
  }
}

FiniteSubgroup FiniteSubgroup::induce(FramePtr F, const std::vector<FElem>& gens) {
  if (!F) throw InvalidArgument("finite subgroup: null frame");
  FiniteSubgroup S;
  S.F_ = std::move(F);
  for (const auto& g : gens)
    if (g.size() != S.F_->hirsch()) throw InvalidArgument("frame element length mismatch");
  S.absorb(gens);
  return S;
}

FiniteSubgroup FiniteSubgroup::normal_closure(FramePtr F, const std::vector<FElem>& gens) {
  FiniteSubgroup S = induce(std::move(F), gens);
  const Frame& Fr = *S.F_;
  for (;;) {
    std::vector<FElem> extra;
    for (const auto& s : S.slots_) {
      if (s.empty()) continue;
      for (std::size_t k = 0; k < Fr.hirsch(); ++k) {
        FElem c = Fr.conjugate(s, Fr.basis(k));
        if (!S.contains(c)) extra.push_back(std::move(c));
      }
    }
    if (extra.empty()) return S;
    S.absorb(std::move(extra));
  }
}

FiniteSubgroup FiniteSubgroup::coordinate_term(FramePtr F, std::size_t k) {
  std::vector<FElem> gens;
  for (std::size_t j = k; j < F->hirsch(); ++j) gens.push_back(F->basis(j));
  return induce(std::move(F), gens);
}

std::vector<FElem> FiniteSubgroup::induced_seq() const {
  std::vector<FElem> out;
  for (const auto& s : slots_)
    if (!s.empty()) out.push_back(s);
  return out;
}

bool FiniteSubgroup::contains(const FElem& y) const {
  const Frame& F = *F_;
  FElem x = y;
  for (std::size_t k = F.depth(x); k < F.hirsch(); k = F.depth(x)) {
    const FElem& s = slots_[k];
    if (s.empty() || x[k] % s[k] != 0) return false;
    x = F.mul(x, F.pow(s, -(x[k] / s[k])));
  }
  return true;
}

Int FiniteSubgroup::order() const {
  Int o = 1;
  for (std::size_t k = 0; k < slots_.size(); ++k)
    if (!slots_[k].empty()) o *= Int(static_cast<long>(F_->level() / slots_[k][k]));
  return o;
}

bool FiniteSubgroup::is_normal() const {
  for (const auto& s : slots_) {
    if (s.empty()) continue;
    for (std::size_t k = 0; k < F_->hirsch(); ++k)
      if (!contains(F_->conjugate(s, F_->basis(k)))) return false;
  }
  return true;
}

FiniteSubgroup FiniteSubgroup::join(const std::vector<FElem>& gens) const {
  FiniteSubgroup S = *this;
  S.absorb(gens);
  return S;
}

FiniteSubgroup FiniteSubgroup::join(const FiniteSubgroup& K) const { return join(K.induced_seq()); }

std::shared_ptr<const std::vector<FiniteSubgroup>> enumerate_normal_subgroups(const FramePtr& F,
                                                                             std::size_t cap) {
  using Key = std::tuple<std::string, std::int64_t, std::size_t>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const std::vector<FiniteSubgroup>>> cache;
  if (!F) throw InvalidArgument("enumerate: null frame");
  const Int order = F->order();
  if (order > Int(static_cast<unsigned long>(cap)))
    throw Unsupported("frame of order " + to_string(order) + " exceeds enumeration cap " + std::to_string(cap));
  Key key{F->group()->name(), F->level(), cap};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const std::uint64_t n = order.get_ui();
  const std::int64_t m = F->level();
  std::vector<char> done(n, 0);
  std::set<FiniteSubgroup> seen;
  std::vector<FiniteSubgroup> cyclic;
  for (std::uint64_t code = 0; code < n; ++code) {
    if (done[code]) continue;
    FElem x = F->decode(code);
    for (std::int64_t u = 1; u <= std::max<std::int64_t>(m, 1); ++u)
      if (gcd64(u, m) == 1 || m == 1) done[F->encode(F->pow(x, u))] = 1;
    FiniteSubgroup N = FiniteSubgroup::normal_closure(F, {x});
    if (seen.insert(N).second) cyclic.push_back(std::move(N));
  }
  std::vector<FiniteSubgroup> all = cyclic;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& C : cyclic) {
      bool inside = true;
      for (const auto& g : C.induced_seq())
        if (!all[i].contains(g)) {
          inside = false;
          break;
        }
      if (inside) continue;
      FiniteSubgroup J = all[i].join(C);
      if (seen.insert(J).second) all.push_back(std::move(J));
    }
  }
  std::sort(all.begin(), all.end(), [](const FiniteSubgroup& a, const FiniteSubgroup& b) {
    Int ia = a.index(), ib = b.index();
    if (ia != ib) return ia < ib;
    return a < b;
  });
  auto result = std::make_shared<const std::vector<FiniteSubgroup>>(std::move(all));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, result);
  return result;
}

} // namespace nilsep
