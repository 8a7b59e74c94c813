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


#ifndef NILSEP_WORD_METRIC_HPP
#define NILSEP_WORD_METRIC_HPP

#include "nilsep/subgroup.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

namespace nilsep {

struct ElementHash {
  std::size_t operator()(const Element& g) const;
};

/// S together with the inverses of its elements, duplicates and the
/// identity removed, original order first.
std::vector<Element> symmetrize(const GroupCtx& G, const std::vector<Element>& S);

/// B_r(S) with BFS parent pointers.
class Ball {
public:
  Ball(GroupPtr G, std::vector<Element> S, std::size_t radius);

  std::size_t radius() const { return radius_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<Element>& letters() const { return letters_; }
  std::size_t size() const { return elements_.size(); }
  /// Number of elements of length <= r.
  std::size_t size_within(std::size_t r) const;
  std::size_t length_at(std::size_t i) const { return length_[i]; }
  std::optional<std::size_t> length_of(const Element& g) const;
  /// Letters (indices into letters()) of a geodesic spelling g.
  std::optional<std::vector<std::size_t>> geodesic(const Element& g) const;

private:
  GroupPtr G_;
  std::vector<Element> letters_;
  std::size_t radius_;
  std::vector<Element> elements_;
  std::vector<std::size_t> length_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> via_;
  std::vector<std::size_t> shell_end_;
  std::unordered_map<Element, std::size_t, ElementHash> index_;
};

/// Word length bounded by a budget: `length` is empty when the element is
/// not reached within `budget` steps ("budget exceeded, length > budget").
struct WordLength {
  std::optional<std::size_t> length;
  std::size_t budget = 0;
  std::string describe() const;
};

WordLength word_length(const GroupPtr& G, const Element& g, const std::vector<Element>& S, std::size_t budget);

/// Minimal r with <H cap B_r> = H; empty when r would exceed the budget.
/// The trivial subgroup has norm 0.
struct SubgroupNorm {
  std::optional<std::size_t> norm;
  std::size_t budget = 0;
  std::vector<Element> witnesses; // H cap B_norm elements that generate H
  std::string describe() const;
};

SubgroupNorm subgroup_norm(const Subgroup& H, const std::vector<Element>& S, std::size_t budget);

/// Layered BFS on fixed-width coordinates that keeps three shells only.
/// Calls visit(coords, length) once per element of B_radius. Requires a
/// group with fixed-width arithmetic.
void layered_bfs(const GroupCtx& G, const std::vector<Element>& S, std::size_t radius,
                 const std::function<void(const std::vector<std::int64_t>&, std::size_t)>& visit);

/// Per-instance Lemma-style comparison of subgroup norms over two
/// generating sets: ratio must lie in [1/C, C], C = max cross word length.
struct ComparisonReport {
  std::size_t norm1 = 0, norm2 = 0;
  std::size_t C = 0;
  bool within = false;
};
ComparisonReport compare_generating_sets(const Subgroup& H, const std::vector<Element>& S1,
                                         const std::vector<Element>& S2, std::size_t budget);

} // namespace nilsep

#endif
