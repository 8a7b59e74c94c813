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


#ifndef NILSEP_SEPARABILITY_HPP
#define NILSEP_SEPARABILITY_HPP

#include "nilsep/depth.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilsep {

/// floor(log_p(c!)).
unsigned long kpc_constant(const Int& p, std::size_t c);

struct CosetWitness {
  Element z; // in the last series term, outside H
  Element h; // g z, in H
};

/// For g outside H with g in H N_{h-1}: z in N_{h-1} with g z in H.
CosetWitness central_coset_witness(const Subgroup& H, const Element& g);

struct SeparationStep {
  std::size_t series_index = 0; // i for H_i = H cap N_i
  Int level;                    // level reached after this step
};

struct Separation {
  std::optional<DepthCertificate> certificate; // empty: ascent budget exhausted
  Int prime = 0;
  unsigned long exponent = 0;
  std::size_t layer = 0; // largest j with g in H N_j
  Element z;             // central witness modulo N_{layer+1}
  std::vector<SeparationStep> trace;
  std::string note;
};

/// Prime-power separation of a central element from H.
Separation separate_central(const Subgroup& H, const Element& x);

/// Separation of an arbitrary g outside H, working modulo N_{j+1} for
/// the largest j with g in H N_j.
Separation separate(const Subgroup& H, const Element& g);

struct ReductionReport {
  std::optional<Int> depth_in_group;    // min over frame quotients separating g from H
  std::optional<Int> depth_in_quotient; // min over frame quotients killing H, not g
  bool equal = false;
  std::string describe() const;
};

/// Both sides of D_G(H,g) = D_{G/H}(1, gH) over the oracle's frame family.
ReductionReport normal_depth_reduction(const Subgroup& H, const Element& g, const DepthOptions& opt = {});

/// Registered Phi values; empty when the family is not registered.
std::optional<unsigned> phi_registry(const GroupCtx& G);

/// Phi of G / isolator(H); empty when unregistered.
std::optional<unsigned> psi_constant(const Subgroup& H);

} // namespace nilsep

#endif
