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


#ifndef NILSEP_PROFILER_HPP
#define NILSEP_PROFILER_HPP

#include "nilsep/depth.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilsep {

enum class ProfileKind { Farb, Sub, CentralProfile };
std::string profile_kind_name(ProfileKind k);

struct ProfileRow {
  std::size_t n = 0;
  std::optional<Int> value; // empty: budget or cap bound
  std::string sentinel;     // "> B" or "cap exceeded" when value is empty
  DepthMode mode = DepthMode::Exact;
  std::string witness_element;
  std::string witness_subgroup;
  std::optional<DepthCertificate> certificate;
  std::string certificate_id;
};

struct ProfileSeries {
  ProfileKind kind = ProfileKind::Farb;
  std::vector<ProfileRow> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  /// Metadata as leading "# key=value" lines, then the header
  /// n,value,mode,witness,certificate_id.
  std::string to_csv() const;
  std::string to_json() const;
  static ProfileSeries from_csv(const std::string& text);
  static ProfileSeries from_json(const std::string& text);
};

/// Row n: max depth over g outside H with |g|_S <= n.
ProfileSeries farb_profile(const Subgroup& H, const std::vector<Element>& S, std::size_t n_max,
                           const DepthOptions& opt = {});

/// Farb rows for Z^d relative to the span of all basis vectors but one,
/// with the basis as generating set: the largest prime power q with
/// lcm(1..q-1) <= n. Throws for other instances.
ProfileSeries farb_cyclic_arithmetic(const Subgroup& H, const std::vector<std::size_t>& ns);

/// Largest prime power q with lcm(1..q-1) <= n (n >= 1).
Int farb_cyclic_value(const Int& n);

struct SubOptions {
  DepthOptions depth;
  std::size_t max_ball = 100000;
  std::size_t max_subgroups = 10000;
};

/// Row n: max depth over subgroups generated inside B_n and g in B_n
/// outside them.
ProfileSeries sub_profile(const GroupPtr& G, const std::vector<Element>& S, std::size_t n_max,
                          const SubOptions& opt = {});

enum class LowerBoundKind { RfLcm, SubPower };

struct LowerBoundInstance {
  Int p;
  Element element;
  std::vector<Element> subgroup_gens;
  DepthResult depth;
  bool pass = false;
};

/// rf_lcm: g^{lcm(1..p-1)} against the trivial subgroup, depth >= p.
/// sub_power: g against <g^p>, depth = p in exact mode, >= p otherwise.
std::vector<LowerBoundInstance> lower_bound_family(LowerBoundKind kind, const GroupPtr& G, const Element& g,
                                                   const std::vector<Int>& primes, const DepthOptions& opt = {});

struct ScalingFit {
  double slope = 0;
  double intercept = 0;
  std::vector<double> residuals;
  std::size_t points = 0;
};

enum class ScalingModel { PolyInN, PolyInLogN };

/// Least squares of log(value) against log(n) or log(log(n)) over
/// non-sentinel rows; needs at least four usable rows.
ScalingFit scaling_report(const ProfileSeries& series, ScalingModel model);

struct PresetReport {
  std::string name;
  bool pass = false;
  bool partial = false;
  std::vector<std::string> lines;
  std::string text() const;
};

/// Scripted scenarios: ex6.3, ex6.4, prop6.1, prop6.2, cor1.2, dist_check.
PresetReport preset_experiment(const std::string& name, long p = 0);
const std::vector<std::string>& preset_names();

/// Worker count from NILSEP_THREADS, else hardware concurrency.
unsigned worker_count();

} // namespace nilsep

#endif
