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

#ifndef NILSEP_INTEGER_HPP
#define NILSEP_INTEGER_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nilsep {

using Int = mpz_class;
using IntVec = std::vector<Int>;

/// Base class of every error raised by the library. The C API maps the
/// concrete subclasses onto status codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong lengths, unparsable text, violated preconditions.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// The request is well-formed but outside what the library can realize
/// (e.g. congruence frames for a group given only by a presentation).
class Unsupported : public Error {
public:
  using Error::Error;
};

inline Int abs_int(const Int& a) { return abs(a); }

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Floor division (rounds toward negative infinity).
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Non-negative residue of a modulo m (m > 0).
inline Int mod_pos(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline bool fits_int64(const Int& a) {
  return mpz_fits_slong_p(a.get_mpz_t()) != 0 && sizeof(long) == 8;
}

inline std::int64_t to_int64(const Int& a) {
  if (!fits_int64(a)) throw InvalidArgument("integer out of 64-bit range: " + a.get_str());
  return a.get_si();
}

inline Int parse_int(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  s = s.substr(i);
  if (!s.empty() && s[0] == '+') s = s.substr(1);
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw InvalidArgument("not an integer: '" + std::string(text) + "'");
  return v;
}

inline std::string to_string(const Int& a) { return a.get_str(); }

inline bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

} // namespace nilsep

#endif
