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


#include "nilsep/series.hpp"

namespace nilsep {

std::size_t first_central_term(const GroupCtx& G) {
  const std::size_t h = G.hirsch();
  std::size_t i = h;
  while (i > 0) {
    bool central = true;
    for (std::size_t k = 0; k < h && central; ++k)
      if (!G.is_identity(G.commutator(G.basis(i - 1), G.basis(k)))) central = false;
    if (!central) break;
    --i;
  }
  return i;
}

CentralSeries maximal_central_series(GroupPtr G, bool center_adapted) {
  CentralSeries s;
  const std::size_t h = G->hirsch();
  for (std::size_t i = 0; i <= h; ++i) {
    std::vector<Element> gens;
    for (std::size_t k = i; k < h; ++k) gens.push_back(G->basis(k));
    s.terms.push_back(Subgroup::induce(G, std::move(gens)));
  }
  if (center_adapted) s.center_index = first_central_term(*G);
  return s;
}

bool is_maximal_central(const CentralSeries& s) {
  if (s.terms.empty()) return false;
  const GroupPtr& G = s.terms.front().group();
  const std::size_t h = G->hirsch();
  if (s.terms.size() != h + 1 || !s.terms.back().is_trivial()) return false;
  for (std::size_t i = 0; i < h; ++i) {
    const Subgroup& Ni = s.terms[i];
    const Subgroup& Nj = s.terms[i + 1];
    // infinite cyclic factor: exactly one more pivot, with lead 1
    if (Ni.hirsch() != Nj.hirsch() + 1 || !Ni.contains(Nj)) return false;
    for (std::size_t k = 0; k < h; ++k)
      if (Ni.lead(k) != (k >= i ? 1 : 0)) return false;
    for (const auto& n : Ni.induced_seq())
      for (std::size_t k = 0; k < h; ++k)
        if (!Nj.contains(G->commutator(G->basis(k), n))) return false;
  }
  return true;
}

} // namespace nilsep
