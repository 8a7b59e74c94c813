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


#ifndef NILSEP_DEPTH_HPP
#define NILSEP_DEPTH_HPP

#include "nilsep/frame.hpp"
#include "nilsep/lattice.hpp"
#include "nilsep/subgroup.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace nilsep {

enum class CertKind { AbelianModulus, CongruenceLevel, Refined };
std::string cert_kind_name(CertKind k);

/// Witness that g survives outside H in an explicit finite quotient.
/// AbelianModulus: x -> functional . x mod modulus, a morphism onto a
/// cyclic group. CongruenceLevel: the frame at level modulus. Refined:
/// that frame modulo the normal closure of normal_gens.
struct DepthCertificate {
  CertKind kind = CertKind::CongruenceLevel;
  Int modulus = 0;
  Int quotient_order = 0;
  IntVec functional;
  std::vector<IntVec> normal_gens;
  IntVec g_image;
  std::vector<IntVec> h_images;
};

std::string certificate_to_json(const DepthCertificate& c);
DepthCertificate certificate_from_json(const std::string& text);

struct Validation {
  bool ok = false;
  std::string reason;
};

Validation validate_certificate(const Subgroup& H, const Element& g, const DepthCertificate& c);

enum class DepthMode { Exact, Congruence };
std::string depth_mode_name(DepthMode m);

struct DepthResult {
  std::optional<Int> value; // empty: exceeds budget
  DepthMode mode = DepthMode::Exact;
  Int budget = 0;
  std::optional<DepthCertificate> witness;
  std::string describe() const; // "512" or "> 1024"
};

struct DepthOptions {
  Int budget = 1024;
  std::size_t cap = 4096;
  std::vector<std::int64_t> levels; // empty: congruence_levels(h, cap)
};

/// Largest prime-power level per prime whose frame fits under cap.
std::vector<std::int64_t> congruence_levels(std::size_t hirsch, std::size_t cap);

/// Depth oracle for a fixed subgroup. Abelian groups get the exact
/// lattice formula; unitriangular groups take the minimum of the
/// abelianization formula and a scan of frame quotients.
class DepthOracle {
public:
  explicit DepthOracle(Subgroup H, DepthOptions opt = {});

  const Subgroup& subgroup() const { return H_; }
  const DepthOptions& options() const { return opt_; }

  DepthResult depth(const Element& g) const;
  /// Minimal separating quotient through the abelianization.
  std::optional<DepthCertificate> abelian_depth(const Element& g) const;
  /// Minimal separating frame quotient [F : N] over the configured levels,
  /// ignoring candidates of order >= bound. With kernel_contains_h only
  /// normal subgroups containing the image of H are admitted.
  std::optional<DepthCertificate> scan_depth(const Element& g, const Int& bound,
                                             bool kernel_contains_h = false) const;

private:
  struct Level {
    FramePtr frame;
    std::shared_ptr<const std::vector<FiniteSubgroup>> normals;
    std::vector<FElem> h_images;
    std::vector<Int> index;
    mutable std::vector<std::optional<FiniteSubgroup>> joins;
    mutable std::vector<signed char> contains_h; // -1 unknown
  };
  const FiniteSubgroup& join_at(const Level& L, std::size_t i) const;

  Subgroup H_;
  DepthOptions opt_;
  bool abelian_ = false;
  // abelianization data
  std::vector<std::size_t> ab_coords_;
  lattice::SmithResult ab_snf_;
  std::vector<Level> levels_;
  std::unique_ptr<std::mutex> mu_;
};

DepthResult depth(const Subgroup& H, const Element& g, const DepthOptions& opt = {});

} // namespace nilsep

#endif
