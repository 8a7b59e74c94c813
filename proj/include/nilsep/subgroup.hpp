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


#ifndef NILSEP_SUBGROUP_HPP
#define NILSEP_SUBGROUP_HPP

#include "nilsep/group.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace nilsep {

/// Subgroup given by generators plus its canonical induced sequence: one
/// element per pivot depth, positive leading exponents, and coordinates at
/// later pivot depths reduced into [0, lead).
class Subgroup {
public:
  Subgroup() = default;
  static Subgroup induce(GroupPtr G, std::vector<Element> gens);
  static Subgroup whole(GroupPtr G);
  static Subgroup trivial(GroupPtr G);

  const GroupPtr& group() const { return G_; }
  const std::vector<Element>& gens() const { return gens_; }
  /// Induced sequence ordered by pivot depth.
  std::vector<Element> induced_seq() const;
  std::vector<std::size_t> pivot_depths() const;
  /// Element of the induced sequence at `depth`, if any.
  const std::optional<Element>& slot(std::size_t depth) const { return slots_[depth]; }
  /// Leading exponent at `depth`, or 0 when there is no pivot there.
  Int lead(std::size_t depth) const;

  /// Residue of g after sifting; the identity iff g is a member.
  Element sift(const Element& g) const;
  bool contains(const Element& g) const;
  bool contains(const Subgroup& K) const;
  bool operator==(const Subgroup& other) const { return slots_ == other.slots_; }

  bool is_trivial() const;
  std::size_t hirsch() const; // number of pivots
  /// Finite iff every depth carries a pivot; then the product of the leads.
  std::optional<Int> index() const;
  bool is_normal() const;

  /// H cap N_i by truncating the induced sequence at depth i.
  Subgroup truncate(std::size_t i) const;
  Subgroup join(const Subgroup& K) const;

private:
  GroupPtr G_;
  std::vector<Element> gens_;
  std::vector<std::optional<Element>> slots_;
};

/// Smallest isolated subgroup containing H.
Subgroup isolator(const Subgroup& H);

/// Iterated left-normed commutators [t_1,[t_2,...,[t_{k-1},t_k]...]] of
/// weight 2..c, trivial ones and inverse duplicates dropped. Each carries
/// its formal word length over T, given word lengths of T.
struct TrackedElement {
  Element g;
  Int length; // formal length over the original generating list
};
std::vector<TrackedElement> gamma2_generators(const GroupCtx& G, const std::vector<TrackedElement>& T,
                                              std::size_t c);
std::vector<Element> gamma2_generators(const GroupCtx& G, const std::vector<Element>& T, std::size_t c);

/// H cap N_i built by the projection / Bezout / commutator recursion, with
/// the constructive generators and their formal lengths over H's generators.
struct IntersectionResult {
  Subgroup subgroup;
  std::vector<TrackedElement> generators;
};
IntersectionResult intersect_series(const Subgroup& H, std::size_t i);

/// Schreier generators of a finite-index K from a BFS coset transversal
/// over S; throws InvalidArgument when the index is infinite.
struct SchreierResult {
  std::vector<Element> generators;
  std::vector<Element> transversal;
  std::vector<std::size_t> lengths; // word length over S of each generator, as built
};
SchreierResult schreier_generators(const Subgroup& K, const std::vector<Element>& S);

/// G/H for isolated normal H, with the projection map.
struct Quotient {
  GroupPtr group;
  std::function<Element(const Element&)> project;
};
Quotient quotient_by_isolated_normal(const Subgroup& H);

} // namespace nilsep

#endif
