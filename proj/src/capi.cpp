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


#include "nilsep/nilsep.h"

#include "nilsep/depth.hpp"
#include "nilsep/groupspec.hpp"
#include "nilsep/lattice.hpp"
#include "nilsep/profiler.hpp"
#include "nilsep/separability.hpp"
#include "nilsep/subgroup.hpp"
#include "nilsep/word_metric.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct nilsep_group {
  nilsep::GroupPtr G;
};

struct nilsep_subgroup {
  nilsep::Subgroup H;
};

namespace {

using nilsep::Int;
using ojson = nlohmann::ordered_json;

thread_local std::string last_error;

/// Parse failures inside a parsing stage are reported as NILSEP_ERR_PARSE.
struct ParseError : nilsep::Error {
  using nilsep::Error::Error;
};

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F> auto parsing(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nilsep::InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

template <class F> nilsep_status guard(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const ParseError& e) {
    last_error = e.what();
    return NILSEP_ERR_PARSE;
  } catch (const nilsep::Unsupported& e) {
    last_error = e.what();
    return NILSEP_ERR_UNSUPPORTED;
  } catch (const nilsep::InvalidArgument& e) {
    last_error = e.what();
    return NILSEP_ERR_DOMAIN;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return NILSEP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NILSEP_ERR_INTERNAL;
  }
}

nilsep_status bad(const char* what) {
  last_error = what;
  return NILSEP_ERR_INVALID_ARGUMENT;
}

Int parse_budget(const char* budget) {
  if (!budget || !*budget) return Int(1024);
  Int b = parsing([&] { return nilsep::parse_int(budget); });
  if (b < 1) throw ParseError("budget must be positive");
  return b;
}

ojson element_json(const nilsep::Element& e) {
  ojson v = ojson::array();
  for (const auto& x : e) v.push_back(nilsep::to_string(x));
  return v;
}

nilsep::Element element_arg(const nilsep::GroupCtx& G, const char* text) {
  return parsing([&] { return nilsep::parse_element(G, text); });
}

} // namespace

extern "C" {

const char* nilsep_version(void) { return "0.1.0"; }

const char* nilsep_status_name(nilsep_status s) {
  switch (s) {
  case NILSEP_OK: return "ok";
  case NILSEP_ERR_INVALID_ARGUMENT: return "invalid_argument";
  case NILSEP_ERR_PARSE: return "parse";
  case NILSEP_ERR_DOMAIN: return "domain";
  case NILSEP_ERR_UNSUPPORTED: return "unsupported";
  case NILSEP_ERR_BUDGET: return "budget";
  case NILSEP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* nilsep_last_error(void) { return last_error.c_str(); }

void nilsep_string_free(char* s) { std::free(s); }

nilsep_status nilsep_group_open(const char* spec, nilsep_group** out) {
  if (!spec || !out) return bad("null argument");
  *out = nullptr;
  return guard([&] {
    auto G = parsing([&] { return nilsep::resolve_group(spec); });
    *out = new nilsep_group{std::move(G)};
    return NILSEP_OK;
  });
}

void nilsep_group_free(nilsep_group* g) { delete g; }

nilsep_status nilsep_group_spec(const nilsep_group* g, char** json_out) {
  if (!g || !json_out) return bad("null argument");
  return guard([&] {
    *json_out = dup(nilsep::emit_group_spec(*g->G));
    return NILSEP_OK;
  });
}

size_t nilsep_group_hirsch(const nilsep_group* g) { return g ? g->G->hirsch() : 0; }

nilsep_status nilsep_subgroup_new(const nilsep_group* g, const char* gens, nilsep_subgroup** out) {
  if (!g || !gens || !out) return bad("null argument");
  *out = nullptr;
  return guard([&] {
    auto list = parsing([&] { return nilsep::parse_element_list(*g->G, gens); });
    *out = new nilsep_subgroup{nilsep::Subgroup::induce(g->G, std::move(list))};
    return NILSEP_OK;
  });
}

void nilsep_subgroup_free(nilsep_subgroup* h) { delete h; }

nilsep_status nilsep_bezout(const char* const* values, size_t n, char** json_out) {
  if ((!values && n) || !json_out) return bad("null argument");
  if (n == 0) return bad("bezout needs at least one integer");
  return guard([&] {
    nilsep::IntVec a;
    for (size_t i = 0; i < n; ++i) a.push_back(parsing([&] { return nilsep::parse_int(values[i]); }));
    auto r = nilsep::lattice::eff_bezout(a);
    Int max_abs = 0;
    for (const auto& x : a) max_abs = std::max(max_abs, Int(abs(x)));
    Int bound = std::max(Int(1), Int(max_abs / 2));
    bool within = true;
    for (const auto& x : r.coeffs) within = within && abs(x) <= bound;
    ojson j;
    j["gcd"] = nilsep::to_string(r.gcd);
    j["coefficients"] = element_json(r.coeffs);
    j["bound"] = nilsep::to_string(bound);
    j["within_bound"] = within;
    std::vector<Int> nonzero;
    for (const auto& x : a)
      if (x != 0) nonzero.push_back(x);
    if (!nonzero.empty()) {
      j["word_length"] = std::to_string(nilsep::lattice::generator_word(nonzero, max_abs).size());
      j["word_bound"] = nilsep::to_string(Int(max_abs * max_abs));
    }
    *json_out = dup(j.dump());
    return NILSEP_OK;
  });
}

nilsep_status nilsep_depth(const nilsep_subgroup* h, const char* element, const char* budget, char** json_out) {
  if (!h || !element || !json_out) return bad("null argument");
  return guard([&] {
    auto g = element_arg(*h->H.group(), element);
    nilsep::DepthOptions opt;
    opt.budget = parse_budget(budget);
    auto r = nilsep::depth(h->H, g, opt);
    ojson j;
    j["value"] = r.describe();
    j["mode"] = nilsep::depth_mode_name(r.mode);
    j["budget"] = nilsep::to_string(r.budget);
    j["certificate"] = r.witness ? ojson::parse(nilsep::certificate_to_json(*r.witness)) : ojson(nullptr);
    *json_out = dup(j.dump());
    return NILSEP_OK;
  });
}

nilsep_status nilsep_separate(const nilsep_subgroup* h, const char* element, char** json_out) {
  if (!h || !element || !json_out) return bad("null argument");
  return guard([&] {
    auto g = element_arg(*h->H.group(), element);
    auto s = nilsep::separate(h->H, g);
    if (!s.certificate) {
      last_error = "separation budget exhausted" + (s.note.empty() ? std::string() : ": " + s.note);
      return NILSEP_ERR_BUDGET;
    }
    ojson j;
    j["prime"] = nilsep::to_string(s.prime);
    j["exponent"] = s.exponent;
    j["layer"] = s.layer;
    j["modulus"] = nilsep::to_string(s.certificate->modulus);
    j["order"] = nilsep::to_string(s.certificate->quotient_order);
    j["certificate"] = ojson::parse(nilsep::certificate_to_json(*s.certificate));
    *json_out = dup(j.dump());
    return NILSEP_OK;
  });
}

nilsep_status nilsep_validate(const nilsep_subgroup* h, const char* element, const char* certificate, int* valid,
                              char** reason_out) {
  if (!h || !element || !certificate || !valid) return bad("null argument");
  return guard([&] {
    auto g = element_arg(*h->H.group(), element);
    auto c = parsing([&] { return nilsep::certificate_from_json(certificate); });
    auto v = nilsep::validate_certificate(h->H, g, c);
    *valid = v.ok ? 1 : 0;
    if (reason_out) *reason_out = dup(v.reason);
    return NILSEP_OK;
  });
}

nilsep_status nilsep_norm(const nilsep_subgroup* h, size_t radius, char** json_out) {
  if (!h || !json_out) return bad("null argument");
  return guard([&] {
    const auto& G = h->H.group();
    auto r = nilsep::subgroup_norm(h->H, G->generating_set(), radius);
    ojson j;
    j["norm"] = r.norm ? ojson(std::to_string(*r.norm)) : ojson("> " + std::to_string(radius));
    j["budget"] = std::to_string(radius);
    j["witnesses"] = ojson::array();
    for (const auto& w : r.witnesses) j["witnesses"].push_back(element_json(w));
    *json_out = dup(j.dump());
    return NILSEP_OK;
  });
}

nilsep_status nilsep_farb_csv(const nilsep_subgroup* h, size_t n_max, const char* budget, char** csv_out) {
  if (!h || !csv_out) return bad("null argument");
  if (n_max == 0) return bad("n_max must be positive");
  return guard([&] {
    nilsep::DepthOptions opt;
    opt.budget = parse_budget(budget);
    auto series = nilsep::farb_profile(h->H, h->H.group()->generating_set(), n_max, opt);
    *csv_out = dup(series.to_csv());
    return NILSEP_OK;
  });
}

nilsep_status nilsep_sub_csv(const nilsep_group* g, size_t n_max, const char* budget, size_t max_subgroups,
                             char** csv_out) {
  if (!g || !csv_out) return bad("null argument");
  if (n_max == 0) return bad("n_max must be positive");
  return guard([&] {
    nilsep::SubOptions opt;
    opt.depth.budget = parse_budget(budget);
    if (max_subgroups) opt.max_subgroups = max_subgroups;
    auto series = nilsep::sub_profile(g->G, g->G->generating_set(), n_max, opt);
    *csv_out = dup(series.to_csv());
    return NILSEP_OK;
  });
}

nilsep_status nilsep_verify(const char* suite, long p, int* passed, char** report_out) {
  if (!suite || !passed) return bad("null argument");
  if (p < 0) return bad("p must be non-negative");
  return guard([&] {
    std::vector<std::string> names;
    const auto& known = nilsep::preset_names();
    if (std::string(suite) == "all") {
      names = known;
    } else if (std::find(known.begin(), known.end(), suite) != known.end()) {
      names.push_back(suite);
    } else {
      last_error = std::string("unknown suite '") + suite + "'";
      return NILSEP_ERR_INVALID_ARGUMENT;
    }
    bool ok = true;
    std::string text;
    for (const auto& n : names) {
      auto r = nilsep::preset_experiment(n, p);
      ok = ok && r.pass;
      text += r.text();
    }
    *passed = ok ? 1 : 0;
    if (report_out) *report_out = dup(text);
    return NILSEP_OK;
  });
}

} // extern "C"
