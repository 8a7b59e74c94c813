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


#include "nilsep/word_metric.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace nilsep {

std::size_t ElementHash::operator()(const Element& g) const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& v : g) {
    std::size_t x = static_cast<std::size_t>(mpz_sgn(v.get_mpz_t()) + 1);
    for (std::size_t i = 0; i < mpz_size(v.get_mpz_t()); ++i)
      x = x * 0x100000001b3ULL ^ static_cast<std::size_t>(mpz_getlimbn(v.get_mpz_t(), static_cast<mp_size_t>(i)));
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<Element> symmetrize(const GroupCtx& G, const std::vector<Element>& S) {
  std::vector<Element> out;
  auto add = [&](Element g) {
    if (!G.is_identity(g) && std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
  };
  for (const auto& s : S) add(s);
  for (const auto& s : S) add(G.inv(s));
  return out;
}

Ball::Ball(GroupPtr G, std::vector<Element> S, std::size_t radius)
    : G_(std::move(G)), letters_(symmetrize(*G_, S)), radius_(radius) {
  elements_.push_back(G_->identity());
  length_.push_back(0);
  parent_.push_back(0);
  via_.push_back(0);
  index_.emplace(elements_[0], 0);
  shell_end_.push_back(1);
  std::size_t begin = 0;
  for (std::size_t r = 1; r <= radius; ++r) {
    const std::size_t end = elements_.size();
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t l = 0; l < letters_.size(); ++l) {
        Element v = G_->mul(elements_[i], letters_[l]);
        if (index_.count(v)) continue;
        index_.emplace(v, elements_.size());
        elements_.push_back(std::move(v));
        length_.push_back(r);
        parent_.push_back(i);
        via_.push_back(l);
      }
    shell_end_.push_back(elements_.size());
    begin = end;
  }
}

std::size_t Ball::size_within(std::size_t r) const { return shell_end_[std::min(r, radius_)]; }

std::optional<std::size_t> Ball::length_of(const Element& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return length_[it->second];
}

std::optional<std::vector<std::size_t>> Ball::geodesic(const Element& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  std::vector<std::size_t> word;
  for (std::size_t i = it->second; i != 0; i = parent_[i]) word.push_back(via_[i]);
  std::reverse(word.begin(), word.end());
  return word;
}

std::string WordLength::describe() const {
  return length ? std::to_string(*length) : "budget exceeded, length > " + std::to_string(budget);
}

std::string SubgroupNorm::describe() const {
  return norm ? std::to_string(*norm) : "norm > " + std::to_string(budget);
}

WordLength word_length(const GroupPtr& G, const Element& g, const std::vector<Element>& S, std::size_t budget) {
  G->check(g);
  WordLength out;
  out.budget = budget;
  if (G->is_identity(g)) {
    out.length = 0;
    return out;
  }
  const auto letters = symmetrize(*G, S);
  std::unordered_set<Element, ElementHash> seen{G->identity()};
  std::vector<Element> shell{G->identity()};
  for (std::size_t r = 1; r <= budget; ++r) {
    std::vector<Element> next;
    for (const auto& x : shell)
      for (const auto& s : letters) {
        Element v = G->mul(x, s);
        if (!seen.insert(v).second) continue;
        if (v == g) {
          out.length = r;
          return out;
        }
        next.push_back(std::move(v));
      }
    shell = std::move(next);
  }
  return out;
}

SubgroupNorm subgroup_norm(const Subgroup& H, const std::vector<Element>& S, std::size_t budget) {
  const GroupPtr& G = H.group();
  SubgroupNorm out;
  out.budget = budget;
  if (H.is_trivial()) {
    out.norm = 0;
    return out;
  }
  const auto letters = symmetrize(*G, S);
  Subgroup J = Subgroup::trivial(G);
  std::unordered_set<Element, ElementHash> seen{G->identity()};
  std::vector<Element> shell{G->identity()};
  for (std::size_t r = 1; r <= budget; ++r) {
    std::vector<Element> next;
    for (const auto& x : shell)
      for (const auto& s : letters) {
        Element v = G->mul(x, s);
        if (!seen.insert(v).second) continue;
        if (H.contains(v) && !J.contains(v)) {
          out.witnesses.push_back(v);
          J = Subgroup::induce(G, out.witnesses);
        }
        next.push_back(std::move(v));
      }
    if (J == H) {
      out.norm = r;
      return out;
    }
    shell = std::move(next);
  }
  out.witnesses.clear();
  return out;
}

namespace {

using Key = std::array<std::int64_t, 6>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : k) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

} // namespace

void layered_bfs(const GroupCtx& G, const std::vector<Element>& S, std::size_t radius,
                 const std::function<void(const std::vector<std::int64_t>&, std::size_t)>& visit) {
  if (!G.law().has_small_arith()) throw Unsupported("layered BFS needs fixed-width arithmetic");
  const std::size_t h = G.hirsch();
  if (h > 6) throw Unsupported("layered BFS supports Hirsch length up to 6");
  std::vector<Key> letters;
  for (const auto& s : symmetrize(G, S)) {
    Key k{};
    for (std::size_t i = 0; i < h; ++i) {
      if (!fits_int64(s[i])) throw Unsupported("generator coordinates exceed 64 bits");
      k[i] = to_int64(s[i]);
    }
    letters.push_back(k);
  }
  std::vector<std::int64_t> coords(h);
  auto emit = [&](const Key& k, std::size_t r) {
    std::copy(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(h), coords.begin());
    visit(coords, r);
  };
  std::unordered_set<Key, KeyHash> prev, cur{Key{}};
  emit(Key{}, 0);
  for (std::size_t r = 1; r <= radius; ++r) {
    std::unordered_set<Key, KeyHash> next;
    next.reserve(cur.size() * 3);
    Key out{};
    for (const auto& x : cur)
      for (const auto& s : letters) {
        G.law().mul_small(x.data(), s.data(), out.data(), 0);
        if (prev.count(out) || cur.count(out)) continue;
        if (next.insert(out).second) emit(out, r);
      }
    prev = std::move(cur);
    cur = std::move(next);
  }
}

ComparisonReport compare_generating_sets(const Subgroup& H, const std::vector<Element>& S1,
                                         const std::vector<Element>& S2, std::size_t budget) {
  const GroupPtr& G = H.group();
  ComparisonReport rep;
  auto n1 = subgroup_norm(H, S1, budget), n2 = subgroup_norm(H, S2, budget);
  if (!n1.norm || !n2.norm) throw Unsupported("subgroup norm exceeds budget " + std::to_string(budget));
  rep.norm1 = *n1.norm;
  rep.norm2 = *n2.norm;
  for (const auto& s : S1) {
    auto w = word_length(G, s, S2, budget);
    if (!w.length) throw Unsupported("generator not reached within budget");
    rep.C = std::max(rep.C, *w.length);
  }
  for (const auto& s : S2) {
    auto w = word_length(G, s, S1, budget);
    if (!w.length) throw Unsupported("generator not reached within budget");
    rep.C = std::max(rep.C, *w.length);
  }
  rep.within = rep.norm2 <= rep.C * rep.norm1 && rep.norm1 <= rep.C * rep.norm2;
  return rep;
}

} // namespace nilsep
