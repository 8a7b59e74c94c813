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


#ifndef NILSEP_GROUPSPEC_HPP
#define NILSEP_GROUPSPEC_HPP

#include "nilsep/group.hpp"

#include <string>
#include <vector>

namespace nilsep {

/// Group from a JSON document:
/// {"family": "free_abelian" | "unitriangular" | "presentation",
///  "rank": d | "degree": n,
///  "presentation": {"hirsch": h, "relations": [{"j":, "i":, "tail": [...]}]},
///  "generating_set": [[coords] | "word", ...]}
GroupPtr parse_group_spec(const std::string& json_text);

/// Canonical JSON for a group; parse_group_spec inverts it.
std::string emit_group_spec(const GroupCtx& G);

/// Shorthand (z, z2, free_abelian:d, ut3, h3, ut4), inline JSON, or a
/// path to a JSON file.
GroupPtr resolve_group(const std::string& arg);

/// Same group with a different generating set, which must generate.
GroupPtr with_generating_set(const GroupPtr& G, std::vector<Element> gens, std::vector<std::string> names = {});

/// "[x,y,z]" or a word such as "a b a^-1 b^-1" over the generator names.
Element parse_element(const GroupCtx& G, const std::string& text);

/// Comma-separated list of elements; commas inside brackets do not split.
std::vector<Element> parse_element_list(const GroupCtx& G, const std::string& text);

} // namespace nilsep

#endif
