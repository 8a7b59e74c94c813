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
#include "nilsep/profiler.hpp"

#include <cmath>
#include <sstream>

using namespace nilsep;

namespace {

Element E(std::initializer_list<long> xs) {
  Element e;
  for (long x : xs) e.push_back(Int(x));
  return e;
}

Element parse_coords(const std::string& s) {
  Element e;
  std::string body = s.substr(1, s.size() - 2);
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) e.push_back(parse_int(tok));
  return e;
}

std::vector<std::string> values(const ProfileSeries& s) {
  std::vector<std::string> v;
  for (const auto& r : s.rows) v.push_back(r.value ? to_string(*r.value) : r.sentinel);
  return v;
}

void check_rows_revalidate(const Subgroup& H, const ProfileSeries& s) {
  for (const auto& r : s.rows) {
    if (!r.value) continue;
    REQUIRE(r.certificate);
    auto v = validate_certificate(H, parse_coords(r.witness_element), *r.certificate);
    CHECK_MESSAGE(v.ok, v.reason);
    CHECK(r.certificate->quotient_order == *r.value);
  }
}

void check_monotone(const ProfileSeries& s) {
  for (std::size_t i = 1; i < s.rows.size(); ++i)
    if (s.rows[i].value && s.rows[i - 1].value) CHECK(*s.rows[i - 1].value <= *s.rows[i].value);
}

} // namespace

TEST_CASE("farb profile examples") {
  auto Z = GroupCtx::free_abelian(1);
  auto H = Subgroup::trivial(Z);
  auto f = farb_profile(H, Z->generating_set(), 12);
  CHECK(values(f) == std::vector<std::string>{"2", "3", "3", "3", "3", "4", "4", "4", "4", "4", "4", "5"});
  check_rows_revalidate(H, f);
  check_monotone(f);
  auto Z2 = GroupCtx::free_abelian(2);
  auto B = Subgroup::induce(Z2, {E({1, 0})});
  auto f2 = farb_profile(B, Z2->generating_set(), 6);
  CHECK(f2.rows.back().value == Int(4));
  CHECK(farb_profile(H, Z->generating_set(), 0).rows.empty());

  auto H3 = GroupCtx::unitriangular(3);
  auto A = Subgroup::induce(H3, {E({1, 0, 0})});
  auto f3 = farb_profile(A, H3->generating_set(), 4);
  check_rows_revalidate(A, f3);
  check_monotone(f3);
}

TEST_CASE("arithmetic farb matches breadth-first rows") {
  auto Z = GroupCtx::free_abelian(1);
  auto brute = farb_profile(Subgroup::trivial(Z), Z->generating_set(), 80);
  for (std::size_t n = 1; n <= 80; ++n) CHECK(brute.rows[n - 1].value == farb_cyclic_value(Int(static_cast<unsigned long>(n))));
  auto Z3 = GroupCtx::free_abelian(3);
  auto B = Subgroup::induce(Z3, {E({1, 0, 0}), E({0, 0, 1})});
  auto a = farb_cyclic_arithmetic(B, {1, 6, 12, 720720});
  CHECK(values(a) == std::vector<std::string>{"2", "4", "5", "17"});
  check_rows_revalidate(B, a);
  CHECK_THROWS_AS(farb_cyclic_arithmetic(Subgroup::induce(Z3, {E({2, 0, 0}), E({0, 0, 1})}), {3}), Unsupported);
  CHECK_THROWS_AS(farb_cyclic_arithmetic(Subgroup::trivial(GroupCtx::unitriangular(3)), {3}), Unsupported);
}

TEST_CASE("sub profile over Z") {
  auto Z = GroupCtx::free_abelian(1);
  auto s = sub_profile(Z, Z->generating_set(), 97);
  check_monotone(s);
  CHECK(*s.rows[0].value == 2);
  CHECK(*s.rows[1].value == 3);
  CHECK(*s.rows[2].value == 3);
  CHECK(*s.rows[4].value == 5);
  for (std::size_t n = 3; n <= 97; ++n)
    if (lattice::is_prime(Int(static_cast<unsigned long>(n)))) {
      CHECK(s.rows[n - 1].value == Int(static_cast<unsigned long>(n)));
      CHECK(s.rows[n - 1].mode == DepthMode::Exact);
    }
}

TEST_CASE("sub profile caps give sentinels") {
  auto H3 = GroupCtx::unitriangular(3);
  SubOptions o;
  o.max_subgroups = 5;
  auto s = sub_profile(H3, H3->generating_set(), 2, o);
  REQUIRE(s.rows.size() == 2);
  CHECK_FALSE(s.rows[0].value);
  CHECK(s.rows[0].sentinel == "cap exceeded");
}

TEST_CASE("lower bound families") {
  auto Z = GroupCtx::free_abelian(1);
  auto rf = lower_bound_family(LowerBoundKind::RfLcm, Z, E({1}), {Int(5)});
  CHECK(rf[0].element == E({12}));
  CHECK(rf[0].depth.value == Int(5));
  CHECK(rf[0].pass);
  std::vector<Int> primes;
  for (Int p = 2; p <= 97; p = lattice::next_prime(p)) primes.push_back(p);
  for (const auto& inst : lower_bound_family(LowerBoundKind::SubPower, Z, E({1}), primes)) {
    CHECK(inst.pass);
    CHECK(inst.depth.value == inst.p);
  }
  for (const auto& inst : lower_bound_family(LowerBoundKind::RfLcm, Z, E({1}), primes)) CHECK(inst.pass);
  auto H3 = GroupCtx::unitriangular(3);
  auto sp = lower_bound_family(LowerBoundKind::SubPower, H3, E({1, 0, 0}), {Int(2), Int(3), Int(5)});
  for (const auto& inst : sp) {
    CHECK(inst.pass);
    CHECK(inst.depth.value == inst.p);
  }
  CHECK_THROWS_AS(lower_bound_family(LowerBoundKind::SubPower, Z, E({0}), {Int(2)}), InvalidArgument);
}

TEST_CASE("scaling report") {
  ProfileSeries sq, flat;
  for (std::size_t n = 1; n <= 10; ++n) {
    ProfileRow r;
    r.n = n;
    r.value = Int(static_cast<unsigned long>(n * n));
    sq.rows.push_back(r);
    r.value = Int(7);
    flat.rows.push_back(r);
  }
  CHECK(std::abs(scaling_report(sq, ScalingModel::PolyInN).slope - 2.0) < 1e-9);
  CHECK(std::abs(scaling_report(flat, ScalingModel::PolyInN).slope) < 1e-9);
  std::vector<std::size_t> ns;
  for (std::size_t n = 10; n <= 1000000; n *= 10) ns.push_back(n);
  auto Z = GroupCtx::free_abelian(1);
  auto fz = farb_cyclic_arithmetic(Subgroup::trivial(Z), ns);
  double slope = scaling_report(fz, ScalingModel::PolyInLogN).slope;
  CHECK(slope >= 0.5);
  CHECK(slope <= 2.0);
  ProfileSeries tiny;
  tiny.rows = {sq.rows[0], sq.rows[1], sq.rows[2]};
  CHECK_THROWS_AS(scaling_report(tiny, ScalingModel::PolyInN), InvalidArgument);
}

TEST_CASE("csv and json round trips") {
  auto Z2 = GroupCtx::free_abelian(2);
  auto B = Subgroup::induce(Z2, {E({1, 0})});
  DepthOptions o;
  o.budget = 4;
  auto f = farb_profile(B, Z2->generating_set(), 12, o);
  CHECK(f.rows.back().sentinel == "> 4");
  auto csv = f.to_csv();
  CHECK(csv.find("n,value,mode,witness,certificate_id\n") != std::string::npos);
  CHECK(csv.find("# budget=4") != std::string::npos);
  CHECK(ProfileSeries::from_csv(csv).to_csv() == csv);
  auto js = f.to_json();
  auto back = ProfileSeries::from_json(js);
  CHECK(back.to_json() == js);
  check_rows_revalidate(B, back);
  CHECK_THROWS_AS(ProfileSeries::from_csv("a,b\n1,2\n"), InvalidArgument);
}

TEST_CASE("presets") {
  for (long p : {2, 3, 5}) {
    auto r = preset_experiment("ex6.3", p);
    CHECK_MESSAGE(r.pass, r.text());
  }
  for (const char* name : {"ex6.4", "prop6.1", "cor1.2", "dist_check"}) {
    auto r = preset_experiment(name);
    CHECK_MESSAGE(r.pass, r.text());
    CHECK_FALSE(r.partial);
  }
  auto r3 = preset_experiment("ex6.4", 3);
  CHECK(r3.partial);
  CHECK_THROWS_AS(preset_experiment("nope"), InvalidArgument);
  CHECK_THROWS_AS(preset_experiment("ex6.3", 4), InvalidArgument);
}
