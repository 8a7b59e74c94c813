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


#ifndef NILSEP_SERIES_HPP
#define NILSEP_SERIES_HPP

#include "nilsep/subgroup.hpp"

#include <optional>
#include <vector>

namespace nilsep {

/// N_0 = G >= N_1 >= ... >= N_h = 1 with N_k the elements whose first k
/// coordinates vanish. Z_last = N_{h-1} is the minimal nontrivial term.
struct CentralSeries {
  std::vector<Subgroup> terms;
  /// i0 with N_{i0} = Z(G), when the series passes through the center.
  std::optional<std::size_t> center_index;
};

CentralSeries maximal_central_series(GroupPtr G, bool center_adapted = true);

/// Checks [G, N_i] <= N_{i+1} on generators and that every factor is
/// infinite cyclic.
bool is_maximal_central(const CentralSeries& s);

/// Smallest i such that N_i is central.
std::size_t first_central_term(const GroupCtx& G);

} // namespace nilsep

#endif
