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


#ifndef NILSEP_GROUP_HPP
#define NILSEP_GROUP_HPP

#include "nilsep/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nilsep {

/// Mal'cev exponent vector. The identity is the zero vector.
using Element = IntVec;

enum class Family { FreeAbelian, Unitriangular, Presentation, Quotient };

std::string family_name(Family f);

/// x_j x_i = x_i x_j * tail, for j > i; tail is zero at positions <= j.
struct Relation {
  std::size_t j = 0;
  std::size_t i = 0;
  IntVec tail;
};

/// Multiplication law behind a GroupCtx. Every law uses coordinates in which
/// N_k = {g : g_0 = ... = g_{k-1} = 0} is a central series with infinite
/// cyclic factors read off coordinate k.
class GroupLaw {
public:
  virtual ~GroupLaw() = default;
  virtual Element mul(const Element& a, const Element& b) const = 0;
  virtual Element inv(const Element& a) const = 0;
  /// Fixed-width arithmetic (optionally modulo `modulus`); only abelian and
  /// matrix laws provide it.
  virtual bool has_small_arith() const { return false; }
  virtual void mul_small(const std::int64_t* a, const std::int64_t* b, std::int64_t* out,
                         std::int64_t modulus) const;
  virtual void inv_small(const std::int64_t* a, std::int64_t* out, std::int64_t modulus) const;
};

class GroupCtx;
using GroupPtr = std::shared_ptr<const GroupCtx>;

struct GroupInit {
  Family family = Family::Presentation;
  std::string name;
  std::size_t hirsch = 0;
  std::size_t degree = 0; // rank for free abelian, n for unitriangular
  std::shared_ptr<const GroupLaw> law;
  std::vector<Relation> relations;
  std::vector<Element> generating_set; // empty: basis elements
  std::vector<std::string> generator_names;
};

class GroupCtx {
public:
  explicit GroupCtx(GroupInit init);

  static GroupPtr free_abelian(std::size_t rank);
  static GroupPtr unitriangular(std::size_t degree);
  /// Validates the relations by collection-based associativity on every
  /// basis triple and on sampled elements.
  static GroupPtr presentation(std::size_t hirsch, std::vector<Relation> relations);

  Family family() const { return family_; }
  const std::string& name() const { return name_; }
  std::size_t hirsch() const { return hirsch_; }
  std::size_t nilpotency_class() const { return class_; }
  std::size_t degree() const { return degree_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::vector<Element>& generating_set() const { return gens_; }
  const std::vector<std::string>& generator_names() const { return gen_names_; }
  const GroupLaw& law() const { return *law_; }
  std::shared_ptr<const GroupLaw> law_ptr() const { return law_; }

  /// Congruence frames exist for abelian and matrix families.
  bool supports_frames() const { return law_->has_small_arith(); }

  Element identity() const { return Element(hirsch_, 0); }
  Element basis(std::size_t k) const;
  bool is_identity(const Element& g) const { return is_zero(g); }

  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  Element pow(const Element& a, const Int& n) const;
  /// [g, h] = g h g^-1 h^-1
  Element commutator(const Element& g, const Element& h) const;
  /// h g h^-1
  Element conjugate(const Element& g, const Element& h) const;
  Element product(std::span<const Element> factors) const;

  /// Index of the first nonzero coordinate, or hirsch() for the identity.
  std::size_t depth(const Element& g) const;

  void check(const Element& g) const;

  /// For unitriangular groups: coordinate k sits at matrix entry (row, col).
  const std::vector<std::pair<std::size_t, std::size_t>>& matrix_positions() const { return positions_; }

private:
  Family family_;
  std::string name_;
  std::size_t hirsch_;
  std::size_t degree_;
  std::size_t class_ = 0;
  std::shared_ptr<const GroupLaw> law_;
  std::vector<Relation> relations_;
  std::vector<Element> gens_;
  std::vector<std::string> gen_names_;
  std::vector<std::pair<std::size_t, std::size_t>> positions_;
};

/// Level-ordered superdiagonal positions of U_n: level 1 first, then level 2...
std::vector<std::pair<std::size_t, std::size_t>> unitriangular_positions(std::size_t degree);

/// Mal'cev normal form x_0^{e_0} ... x_{h-1}^{e_{h-1}} (x_k elementary
/// matrices in level order) versus matrix-entry coordinates, plus the
/// presentation of U_n in normal-form coordinates. Used to cross-check
/// collection against matrix arithmetic.
namespace unitriangular_nf {
Element from_matrix_coords(std::size_t degree, const Element& m);
Element to_matrix_coords(std::size_t degree, const Element& e);
std::vector<Relation> relations(std::size_t degree);
} // namespace unitriangular_nf

std::string element_to_string(const Element& g);

} // namespace nilsep

#endif
