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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nilsep/lattice.hpp"
#include "nilsep/series.hpp"
#include "nilsep/subgroup.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace nilsep;

namespace {

GroupPtr H3() { return GroupCtx::unitriangular(3); }

Element random_word(const GroupCtx& G, std::mt19937_64& rng, std::size_t max_len) {
  const auto& S = G.generating_set();
  std::uniform_int_distribution<std::size_t> len(1, max_len), pick(0, 2 * S.size() - 1);
  Element g = G.identity();
  for (std::size_t n = len(rng); n > 0; --n) {
    std::size_t k = pick(rng);
    g = G.mul(g, k < S.size() ? S[k] : G.inv(S[k - S.size()]));
  }
  return g;
}

// Membership in H3 without sifting: H cap <c> is generated by commutators of
// generators and by lifts of relations among their images in Z^2.
bool h3_member_oracle(const GroupCtx& G, const std::vector<Element>& gens, const Element& g) {
  const std::size_t m = gens.size();
  if (m == 0) return G.is_identity(g);
  lattice::Matrix aug(m, IntVec(2 + m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    aug[i][0] = gens[i][0];
    aug[i][1] = gens[i][1];
    aug[i][2 + i] = 1;
  }
  lattice::Matrix H = lattice::hnf(aug, 2 + m);
  auto word = [&](const IntVec& row) {
    Element w = G.identity();
    for (std::size_t i = 0; i < m; ++i) w = G.mul(w, G.pow(gens[i], row[2 + i]));
    return w;
  };
  Int d = 0;
  for (const auto& row : H)
    if (row[0] == 0 && row[1] == 0) d = gcd_int(d, word(row)[2]);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < i; ++j) d = gcd_int(d, G.commutator(gens[i], gens[j])[2]);
  // express the projection of g through the image rows
  Element r = g;
  for (const auto& row : H) {
    std::size_t p = row[0] != 0 ? 0 : (row[1] != 0 ? 1 : 2);
    if (p == 2) break;
    if (p == 0 && r[0] == 0) continue;
    if (!divides(row[p], r[p])) return false;
    r = G.mul(G.inv(G.pow(word(row), r[p] / row[p])), r);
  }
  if (r[0] != 0 || r[1] != 0) return false;
  return d == 0 ? r[2] == 0 : divides(d, r[2]);
}

} // namespace

TEST_CASE("induce worked examples") {
  auto G = H3();
  auto H = Subgroup::induce(G, {{0, 1, 4}, {0, 2, 0}});
  CHECK(H.pivot_depths() == std::vector<std::size_t>{1, 2});
  CHECK(H.lead(1) == 1);
  CHECK(H.lead(2) == 8);
  CHECK(H.contains(Element{0, 0, 8}));
  CHECK_FALSE(H.contains(Element{0, 0, 4}));
  CHECK(H.contains(G->identity()));

  auto Z2 = GroupCtx::free_abelian(2);
  auto L = Subgroup::induce(Z2, {{1, 2}, {2, 0}});
  CHECK(L.induced_seq() == std::vector<Element>{{1, 2}, {0, 4}});
  CHECK(L.index() == Int(4));
  CHECK(Subgroup::induce(Z2, {}).induced_seq().empty());
}

TEST_CASE("canonical form is independent of generator order") {
  std::mt19937_64 rng(21);
  for (auto G : {H3(), GroupCtx::unitriangular(4), GroupCtx::free_abelian(3)}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<Element> gens;
      for (int k = 0; k < 3; ++k) gens.push_back(random_word(*G, rng, 5));
      auto H = Subgroup::induce(G, gens);
      for (int s = 0; s < 10; ++s) {
        std::shuffle(gens.begin(), gens.end(), rng);
        CHECK(Subgroup::induce(G, gens) == H);
      }
      // an equal subgroup from different generators
      std::vector<Element> more = gens;
      more.push_back(G->mul(gens[0], gens[1]));
      CHECK(Subgroup::induce(G, more) == H);
    }
  }
}

TEST_CASE("membership agrees with an independent H3 oracle") {
  auto G = H3();
  std::mt19937_64 rng(8);
  std::vector<Element> box;
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -6; z <= 6; ++z) box.push_back({x, y, z});
  for (int t = 0; t < 30; ++t) {
    std::vector<Element> gens;
    for (int k = 0; k < 2 + t % 2; ++k) gens.push_back(random_word(*G, rng, 4));
    auto H = Subgroup::induce(G, gens);
    for (const auto& g : box) REQUIRE(H.contains(g) == h3_member_oracle(*G, gens, g));
    for (int k = 0; k < 50; ++k) {
      Element p = G->identity();
      for (int r = 0; r < 6; ++r) {
        const auto& s = gens[rng() % gens.size()];
        p = G->mul(p, rng() % 2 ? s : G->inv(s));
      }
      CHECK(H.contains(p));
    }
  }
}

TEST_CASE("isolator") {
  auto Z2 = GroupCtx::free_abelian(2);
  CHECK(isolator(Subgroup::induce(Z2, {{2, 4}})) == Subgroup::induce(Z2, {{1, 2}}));
  auto G = H3();
  auto H = Subgroup::induce(G, {{0, 1, 4}, {0, 2, 0}});
  auto I = isolator(H);
  CHECK(I == Subgroup::induce(G, {{0, 1, 0}, {0, 0, 1}}));
  CHECK(I.lead(1) * I.lead(2) * 8 == H.lead(1) * H.lead(2));
  CHECK(isolator(Subgroup::whole(G)) == Subgroup::whole(G));
  CHECK(isolator(I) == I);
  // a^2 c is its own isolator
  auto A = Subgroup::induce(G, {{2, 0, 1}});
  CHECK(isolator(A) == A);

  // brute force: g in sqrt(H) iff g^n in H for some n <= 24
  std::mt19937_64 rng(4);
  for (auto Gp : {H3(), GroupCtx::unitriangular(4)}) {
    for (int t = 0; t < 8; ++t) {
      std::vector<Element> gens;
      for (int k = 0; k < 2; ++k) gens.push_back(Gp->pow(random_word(*Gp, rng, 3), 1 + rng() % 4));
      auto K = Subgroup::induce(Gp, gens);
      auto R = isolator(K);
      CHECK(R.contains(K));
      CHECK(isolator(R) == R);
      // g^n in K for some n <= [R : K] whenever g in R
      Int rk = 1;
      for (std::size_t d : K.pivot_depths()) rk *= K.lead(d) / R.lead(d);
      REQUIRE(K.pivot_depths() == R.pivot_depths());
      for (int s = 0; s < 60; ++s) {
        Element g = random_word(*Gp, rng, 4);
        bool brute = false;
        for (Int n = 1; n <= rk && !brute; ++n) brute = K.contains(Gp->pow(g, n));
        CHECK(brute == R.contains(g));
      }
      for (const auto& r : R.induced_seq()) {
        bool some = false;
        for (int n = 1; n <= 720 && !some; ++n) some = K.contains(Gp->pow(r, n));
        CHECK(some);
      }
    }
  }
}

TEST_CASE("gamma2 generators") {
  auto G = H3();
  CHECK(gamma2_generators(*G, std::vector<Element>{{1, 0, 0}, {0, 1, 0}}, 2) == std::vector<Element>{{0, 0, 1}});
  auto Z3 = GroupCtx::free_abelian(3);
  CHECK(gamma2_generators(*Z3, std::vector<Element>{{1, 0, 0}, {0, 1, 0}}, 1).empty());
  auto U4 = GroupCtx::unitriangular(4);
  std::vector<Element> T{U4->basis(0), U4->basis(1), U4->basis(2)};
  auto g2 = gamma2_generators(*U4, T, 3);
  auto gamma2 = Subgroup::induce(U4, {U4->basis(3), U4->basis(4), U4->basis(5)});
  CHECK(Subgroup::induce(U4, g2) == gamma2);
  std::vector<TrackedElement> tracked;
  for (const auto& t : T) tracked.push_back({t, 1});
  for (const auto& e : gamma2_generators(*U4, tracked, 3)) CHECK(e.length <= 3 * 8);
}

TEST_CASE("intersect_series agrees with pivot truncation") {
  auto G = H3();
  auto H = Subgroup::induce(G, {{0, 1, 4}, {0, 2, 0}});
  CHECK(intersect_series(H, 2).subgroup == Subgroup::induce(G, {{0, 0, 8}}));
  CHECK(intersect_series(H, 0).subgroup == H);
  CHECK_THROWS_AS(intersect_series(H, 4), InvalidArgument);
  auto Z2 = GroupCtx::free_abelian(2);
  for (long p : {2, 3, 5}) {
    auto Hp = Subgroup::induce(Z2, {{1, p}, {p, 0}});
    CHECK(intersect_series(Hp, 1).subgroup == Subgroup::induce(Z2, {{0, p * p}}));
  }
  std::mt19937_64 rng(13);
  for (auto Gp : {Z2, H3(), GroupCtx::unitriangular(4)}) {
    for (int t = 0; t < 12; ++t) {
      std::vector<Element> gens;
      for (int k = 0; k < 3; ++k) gens.push_back(random_word(*Gp, rng, 4));
      auto K = Subgroup::induce(Gp, gens);
      for (std::size_t i = 0; i <= Gp->hirsch(); ++i) {
        auto r = intersect_series(K, i);
        CHECK(r.subgroup == K.truncate(i));
        for (const auto& e : r.generators) CHECK(Gp->depth(e.g) >= i);
      }
    }
  }
}

TEST_CASE("schreier generators") {
  auto Z = GroupCtx::free_abelian(1);
  auto twoZ = Subgroup::induce(Z, {{2}});
  CHECK(schreier_generators(twoZ, {{1}}).generators == std::vector<Element>{{2}});
  auto G = H3();
  auto whole = Subgroup::whole(G);
  CHECK(schreier_generators(whole, G->generating_set()).generators == G->generating_set());
  auto K = Subgroup::induce(G, {{1, 0, 0}, {0, 2, 0}, {0, 0, 1}});
  auto sr = schreier_generators(K, G->generating_set());
  CHECK(sr.transversal == std::vector<Element>{{0, 0, 0}, {0, 1, 0}});
  CHECK(sr.generators == std::vector<Element>{{1, 0, 0}, {0, 0, 1}, {1, 0, -1}, {0, 2, 0}});
  CHECK(Subgroup::induce(G, sr.generators) == K);
  for (auto len : sr.lengths) CHECK(len <= 2 * 2 + 1);
  CHECK_THROWS_AS(schreier_generators(Subgroup::induce(G, {{0, 0, 1}}), G->generating_set()), InvalidArgument);
  // random finite-index subgroups
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    auto F = Subgroup::induce(G, {G->pow(G->basis(0), 1 + rng() % 3), G->pow(G->basis(1), 1 + rng() % 3),
                                  G->pow(G->basis(2), 1 + rng() % 4)});
    auto r = schreier_generators(F, G->generating_set());
    CHECK(Subgroup::induce(G, r.generators) == F);
    CHECK(Int(r.transversal.size()) == *F.index());
  }
}

TEST_CASE("quotients by isolated normal subgroups") {
  auto G = H3();
  auto q1 = quotient_by_isolated_normal(Subgroup::induce(G, {{0, 0, 1}}));
  CHECK(q1.group->family() == Family::FreeAbelian);
  CHECK(q1.group->hirsch() == 2);
  CHECK(q1.project({3, -2, 7}) == Element{3, -2});
  auto q2 = quotient_by_isolated_normal(Subgroup::induce(G, {{0, 1, 0}, {0, 0, 1}}));
  CHECK(q2.group->hirsch() == 1);
  CHECK(q2.project({5, 1, 1}) == Element{5});
  auto q3 = quotient_by_isolated_normal(Subgroup::whole(G));
  CHECK(q3.group->hirsch() == 0);
  CHECK_THROWS_AS(quotient_by_isolated_normal(Subgroup::induce(G, {{0, 0, 2}})), InvalidArgument);
  CHECK_THROWS_AS(quotient_by_isolated_normal(Subgroup::induce(G, {{1, 0, 0}})), InvalidArgument);

  auto Z2 = GroupCtx::free_abelian(2);
  auto q4 = quotient_by_isolated_normal(Subgroup::induce(Z2, {{2, 1}}));
  CHECK(q4.group->hirsch() == 1);
  // the projection is a homomorphism with kernel <(2,1)>
  CHECK(q4.project({2, 1}) == Element{0});
  CHECK(abs(q4.project({1, 0})[0]) == 1);

  auto U4 = GroupCtx::unitriangular(4);
  auto Z = Subgroup::induce(U4, {U4->basis(5)});
  auto q5 = quotient_by_isolated_normal(Z);
  CHECK(q5.group->hirsch() == 5);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    Element x = random_word(*U4, rng, 6), y = random_word(*U4, rng, 6);
    CHECK(q5.project(U4->mul(x, y)) == q5.group->mul(q5.project(x), q5.project(y)));
  }
}

TEST_CASE("maximal central series") {
  auto s = maximal_central_series(H3());
  CHECK(s.terms.size() == 4);
  CHECK(s.center_index == std::size_t{2});
  CHECK(is_maximal_central(s));
  CHECK(s.terms[1] == Subgroup::induce(H3(), {{0, 1, 0}, {0, 0, 1}}));
  auto z = maximal_central_series(GroupCtx::free_abelian(2));
  CHECK(z.center_index == std::size_t{0});
  CHECK(z.terms[1] == Subgroup::induce(GroupCtx::free_abelian(2), {{0, 1}}));
  auto u = maximal_central_series(GroupCtx::unitriangular(4));
  CHECK(u.terms.size() == 7);
  CHECK(u.center_index == std::size_t{5});
  CHECK(is_maximal_central(u));
}
