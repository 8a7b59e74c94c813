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


#include "nilsep/groupspec.hpp"

#include "nilsep/subgroup.hpp"

#include "json.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace nilsep {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

Int json_integer(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Int(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) {
    try {
      return parse_int(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InvalidArgument("field '" + field + "': expected an integer");
}

std::size_t json_size(const json& doc, const std::string& field) {
  if (!doc.contains(field)) throw InvalidArgument("field '" + field + "': missing");
  Int v = json_integer(doc.at(field), field);
  if (v < 0 || v > 64) throw InvalidArgument("field '" + field + "': out of range");
  return v.get_ui();
}

} // namespace

Element parse_element(const GroupCtx& G, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw InvalidArgument("empty element");
  if (t.front() == '[') {
    if (t.back() != ']') throw InvalidArgument("element '" + t + "': missing ']'");
    Element e;
    std::stringstream ss(t.substr(1, t.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        e.push_back(parse_int(trim(tok)));
      } catch (const std::exception&) {
        throw InvalidArgument("element '" + t + "': bad coordinate '" + trim(tok) + "'");
      }
    }
    if (e.size() != G.hirsch())
      throw InvalidArgument("element '" + t + "': expected " + std::to_string(G.hirsch()) + " coordinates");
    return e;
  }
  if (t == "1") return G.identity();
  std::vector<Element> factors;
  std::stringstream ss(t);
  std::string tok;
  while (ss >> tok) {
    std::string name = tok;
    Int exp = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      name = tok.substr(0, caret);
      try {
        exp = parse_int(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw InvalidArgument("word letter '" + tok + "': bad exponent");
      }
    }
    const auto& names = G.generator_names();
    std::size_t k = 0;
    while (k < names.size() && names[k] != name) ++k;
    if (k == names.size()) throw InvalidArgument("word letter '" + name + "': unknown generator");
    factors.push_back(G.pow(G.generating_set()[k], exp));
  }
  return G.product(factors);
}

std::vector<Element> parse_element_list(const GroupCtx& G, const std::string& text) {
  std::vector<Element> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      if (!trim(cur).empty()) out.push_back(parse_element(G, cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(parse_element(G, cur));
  return out;
}

GroupPtr with_generating_set(const GroupPtr& G, std::vector<Element> gens, std::vector<std::string> names) {
  if (gens.empty()) throw InvalidArgument("field 'generating_set': empty");
  for (const auto& g : gens) G->check(g);
  if (!(Subgroup::induce(G, gens) == Subgroup::whole(G)))
    throw InvalidArgument("field 'generating_set': does not generate the group");
  GroupInit init;
  init.family = G->family();
  init.name = G->name();
  init.hirsch = G->hirsch();
  init.degree = G->degree();
  init.law = G->law_ptr();
  init.relations = G->relations();
  init.generating_set = std::move(gens);
  init.generator_names = std::move(names);
  return std::make_shared<GroupCtx>(std::move(init));
}

GroupPtr parse_group_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("group spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("group spec must be a JSON object");
  if (!doc.contains("family") || !doc["family"].is_string()) throw InvalidArgument("field 'family': missing");
  const std::string family = doc["family"].get<std::string>();
  GroupPtr G;
  if (family == "free_abelian") {
    G = GroupCtx::free_abelian(json_size(doc, "rank"));
  } else if (family == "unitriangular") {
    G = GroupCtx::unitriangular(json_size(doc, "degree"));
  } else if (family == "presentation") {
    if (!doc.contains("presentation") || !doc["presentation"].is_object())
      throw InvalidArgument("field 'presentation': missing");
    const json& p = doc["presentation"];
    const std::size_t h = json_size(p, "hirsch");
    std::vector<Relation> rels;
    if (p.contains("relations")) {
      if (!p["relations"].is_array()) throw InvalidArgument("field 'relations': expected an array");
      for (const auto& r : p["relations"]) {
        if (!r.is_object()) throw InvalidArgument("field 'relations': expected objects");
        Relation rel;
        rel.j = json_size(r, "j");
        rel.i = json_size(r, "i");
        if (!r.contains("tail") || !r["tail"].is_array()) throw InvalidArgument("field 'tail': expected an array");
        for (const auto& v : r["tail"]) rel.tail.push_back(json_integer(v, "tail"));
        rels.push_back(std::move(rel));
      }
    }
    G = GroupCtx::presentation(h, std::move(rels));
  } else {
    throw InvalidArgument("field 'family': unknown family '" + family + "'");
  }
  if (doc.contains("generating_set")) {
    const json& gs = doc["generating_set"];
    if (!gs.is_array()) throw InvalidArgument("field 'generating_set': expected an array");
    std::vector<Element> gens;
    for (const auto& g : gs) {
      if (g.is_string()) {
        gens.push_back(parse_element(*G, g.get<std::string>()));
      } else if (g.is_array()) {
        Element e;
        for (const auto& v : g) e.push_back(json_integer(v, "generating_set"));
        if (e.size() != G->hirsch()) throw InvalidArgument("field 'generating_set': coordinate count mismatch");
        gens.push_back(std::move(e));
      } else {
        throw InvalidArgument("field 'generating_set': expected coordinate arrays or words");
      }
    }
    G = with_generating_set(G, std::move(gens));
  }
  return G;
}

std::string emit_group_spec(const GroupCtx& G) {
  ordered_json j;
  switch (G.family()) {
  case Family::FreeAbelian:
    j["family"] = "free_abelian";
    j["rank"] = G.hirsch();
    break;
  case Family::Unitriangular:
    j["family"] = "unitriangular";
    j["degree"] = G.degree();
    break;
  case Family::Presentation: {
    j["family"] = "presentation";
    ordered_json p;
    p["hirsch"] = G.hirsch();
    p["relations"] = ordered_json::array();
    for (const auto& r : G.relations()) {
      ordered_json o;
      o["j"] = r.j;
      o["i"] = r.i;
      o["tail"] = ordered_json::array();
      for (const auto& v : r.tail) o["tail"].push_back(to_string(v));
      p["relations"].push_back(o);
    }
    j["presentation"] = p;
    break;
  }
  case Family::Quotient:
    throw Unsupported("quotient groups have no group spec");
  }
  bool basis = G.generating_set().size() == G.hirsch();
  for (std::size_t k = 0; basis && k < G.hirsch(); ++k) basis = G.generating_set()[k] == G.basis(k);
  if (!basis) {
    j["generating_set"] = ordered_json::array();
    for (const auto& g : G.generating_set()) {
      ordered_json v = ordered_json::array();
      for (const auto& x : g) v.push_back(to_string(x));
      j["generating_set"].push_back(v);
    }
  }
  return j.dump();
}

GroupPtr resolve_group(const std::string& arg) {
  const std::string a = trim(arg);
  if (a == "z") return GroupCtx::free_abelian(1);
  if (a == "z2") return GroupCtx::free_abelian(2);
  if (a == "z3") return GroupCtx::free_abelian(3);
  if (a == "ut3" || a == "h3") return GroupCtx::unitriangular(3);
  if (a == "ut4") return GroupCtx::unitriangular(4);
  if (a.rfind("free_abelian:", 0) == 0) {
    Int d = parse_int(a.substr(13));
    if (d < 0 || d > 64) throw InvalidArgument("free_abelian rank out of range");
    return GroupCtx::free_abelian(d.get_ui());
  }
  if (!a.empty() && a.front() == '{') return parse_group_spec(a);
  std::ifstream in(a);
  if (!in) throw InvalidArgument("group '" + a + "': not a shorthand, JSON document or readable file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_spec(ss.str());
}

} // namespace nilsep
