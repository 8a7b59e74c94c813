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


#ifndef NILSEP_FRAME_HPP
#define NILSEP_FRAME_HPP

#include "nilsep/group.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace nilsep {

/// Element of a congruence frame: coordinates reduced into [0, m).
using FElem = std::vector<std::int64_t>;

/// Congruence quotient of an abelian or unitriangular group at level m:
/// coordinates mod m with the same multiplication law.
class Frame {
public:
  Frame(GroupPtr G, std::int64_t level);

  const GroupPtr& group() const { return G_; }
  std::int64_t level() const { return m_; }
  std::size_t hirsch() const { return h_; }
  Int order() const;

  FElem project(const Element& g) const;
  Element lift(const FElem& x) const;
  FElem identity() const { return FElem(h_, 0); }
  FElem basis(std::size_t k) const;
  FElem mul(const FElem& a, const FElem& b) const;
  FElem inv(const FElem& a) const;
  FElem pow(const FElem& a, std::int64_t e) const;
  FElem commutator(const FElem& a, const FElem& b) const;
  FElem conjugate(const FElem& a, const FElem& by) const; // by a by^-1
  std::size_t depth(const FElem& a) const;
  bool is_identity(const FElem& a) const;

  /// Mixed-radix code, valid when order() fits in 63 bits.
  std::uint64_t encode(const FElem& a) const;
  FElem decode(std::uint64_t code) const;

private:
  GroupPtr G_;
  std::int64_t m_;
  std::size_t h_;
};

using FramePtr = std::shared_ptr<const Frame>;

/// Subgroup of a frame by its canonical induced sequence: leads divide m,
/// coordinates at later pivots reduced below the pivot lead.
class FiniteSubgroup {
public:
  FiniteSubgroup() = default;
  static FiniteSubgroup induce(FramePtr F, const std::vector<FElem>& gens);
  static FiniteSubgroup normal_closure(FramePtr F, const std::vector<FElem>& gens);
  /// N_k image: elements whose first k coordinates vanish.
  static FiniteSubgroup coordinate_term(FramePtr F, std::size_t k);

  const FramePtr& frame() const { return F_; }
  std::vector<FElem> induced_seq() const;
  bool contains(const FElem& x) const;
  Int order() const;
  Int index() const { return F_->order() / order(); }
  bool is_normal() const;
  FiniteSubgroup join(const FiniteSubgroup& K) const;
  FiniteSubgroup join(const std::vector<FElem>& gens) const;
  bool operator==(const FiniteSubgroup& o) const { return slots_ == o.slots_; }
  bool operator<(const FiniteSubgroup& o) const { return slots_ < o.slots_; }

private:
  void absorb(std::vector<FElem> queue);
  FramePtr F_;
  std::vector<FElem> slots_; // empty vector marks a missing pivot
};

/// All normal subgroups of a frame of order at most `cap`, ordered by
/// index then canonical form. Cached per (group, level, cap).
std::shared_ptr<const std::vector<FiniteSubgroup>> enumerate_normal_subgroups(const FramePtr& F,
                                                                             std::size_t cap = 4096);

} // namespace nilsep

#endif
