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


// Command-line front end over the C API.

#include "nilsep/nilsep.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

bool json_errors = false;

struct Failure {
  nilsep_status status;
  std::string message;
};

void check(nilsep_status s) {
  if (s != NILSEP_OK) throw Failure{s, nilsep_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  nilsep_string_free(s);
  return out;
}

using GroupHandle = std::unique_ptr<nilsep_group, decltype(&nilsep_group_free)>;
using SubgroupHandle = std::unique_ptr<nilsep_subgroup, decltype(&nilsep_subgroup_free)>;

GroupHandle open_group(const std::string& spec) {
  nilsep_group* g = nullptr;
  check(nilsep_group_open(spec.c_str(), &g));
  return GroupHandle(g, nilsep_group_free);
}

SubgroupHandle open_subgroup(const nilsep_group* g, const std::string& gens) {
  nilsep_subgroup* h = nullptr;
  check(nilsep_subgroup_new(g, gens.c_str(), &h));
  return SubgroupHandle(h, nilsep_subgroup_free);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Failure{NILSEP_ERR_INVALID_ARGUMENT, "cannot write '" + out_path + "'"};
  out << text;
}

std::string plain(const nlohmann::ordered_json& j) {
  std::string text;
  for (const auto& [k, v] : j.items()) {
    if (k == "certificate" || k == "witnesses") continue;
    text += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  }
  return text;
}

int report(const Failure& f) {
  if (json_errors) {
    nlohmann::ordered_json j;
    j["status"] = nilsep_status_name(f.status);
    j["code"] = static_cast<int>(f.status);
    j["message"] = f.message;
    std::cerr << j.dump() << "\n";
  } else {
    std::cerr << "error (" << nilsep_status_name(f.status) << "): " << f.message << "\n";
  }
  return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability, depth and profiles in torsion-free nilpotent groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", json_errors, "JSON on stdout and machine-readable errors on stderr");
  app.set_version_flag("--version", nilsep_version());

  std::string group, subgroup, element, budget, out, suite = "all";
  std::size_t nmax = 10, radius = 10, max_subgroups = 10000;
  long p = 0;
  std::vector<std::string> ints;

  auto* bezout = app.add_subcommand("bezout", "Effective Bezout coefficients for a1 a2 ...");
  bezout->add_option("values", ints, "Integers")->required();

  auto add_instance = [&](CLI::App* c) {
    c->add_option("--group", group, "Group: shorthand, JSON or file")->required();
    c->add_option("--subgroup", subgroup, "Comma separated generators")->required();
    c->add_option("--element", element, "Element as [x,y,...] or a word")->required();
  };
  auto* depth = app.add_subcommand("depth", "Depth of an element relative to a subgroup");
  add_instance(depth);
  depth->add_option("--budget", budget, "Quotient order budget")->default_str("1024");
  auto* separate = app.add_subcommand("separate", "Separating quotient certificate (JSON)");
  add_instance(separate);

  auto* farb = app.add_subcommand("farb", "Farb profile as CSV");
  farb->add_option("--group", group)->required();
  farb->add_option("--subgroup", subgroup)->required();
  farb->add_option("--nmax", nmax)->default_val(10);
  farb->add_option("--budget", budget)->default_str("1024");
  farb->add_option("--out", out, "CSV path, stdout if absent");

  auto* sub = app.add_subcommand("sub", "Sub profile as CSV");
  sub->add_option("--group", group)->required();
  sub->add_option("--nmax", nmax)->default_val(10);
  sub->add_option("--budget", budget)->default_str("1024");
  sub->add_option("--max-subgroups", max_subgroups)->default_val(10000);
  sub->add_option("--out", out, "CSV path, stdout if absent");

  auto* verify = app.add_subcommand("verify", "Run scripted verification suites");
  verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"ex6.3", "ex6.4", "prop6.1", "prop6.2", "cor1.2", "dist_check", "all"}))
      ->default_val("all");
  verify->add_option("--p", p, "Prime parameter")->check(CLI::NonNegativeNumber);

  auto* norm = app.add_subcommand("norm", "Subgroup norm with respect to the group's generating set");
  norm->add_option("--group", group)->required();
  norm->add_option("--subgroup", subgroup)->required();
  norm->add_option("--budget", radius, "Ball radius bound")->default_val(10);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return e.get_exit_code() == 0 ? rc : kExitUsage;
  }

  try {
    if (*bezout) {
      std::vector<const char*> v;
      for (const auto& s : ints) v.push_back(s.c_str());
      char* res = nullptr;
      check(nilsep_bezout(v.data(), v.size(), &res));
      auto j = nlohmann::ordered_json::parse(take(res));
      emit(json_errors ? j.dump() : plain(j), "");
      return kExitOk;
    }
    if (*depth || *separate) {
      auto G = open_group(group);
      auto H = open_subgroup(G.get(), subgroup);
      char* res = nullptr;
      if (*depth) {
        check(nilsep_depth(H.get(), element.c_str(), budget.c_str(), &res));
        auto j = nlohmann::ordered_json::parse(take(res));
        emit(json_errors ? j.dump() : plain(j), "");
      } else {
        check(nilsep_separate(H.get(), element.c_str(), &res));
        emit(take(res), "");
      }
      return kExitOk;
    }
    if (*farb) {
      auto G = open_group(group);
      auto H = open_subgroup(G.get(), subgroup);
      char* csv = nullptr;
      check(nilsep_farb_csv(H.get(), nmax, budget.c_str(), &csv));
      emit(take(csv), out);
      return kExitOk;
    }
    if (*sub) {
      auto G = open_group(group);
      char* csv = nullptr;
      check(nilsep_sub_csv(G.get(), nmax, budget.c_str(), max_subgroups, &csv));
      emit(take(csv), out);
      return kExitOk;
    }
    if (*norm) {
      auto G = open_group(group);
      auto H = open_subgroup(G.get(), subgroup);
      char* res = nullptr;
      check(nilsep_norm(H.get(), radius, &res));
      auto j = nlohmann::ordered_json::parse(take(res));
      emit(json_errors ? j.dump() : plain(j), "");
      return kExitOk;
    }
    if (*verify) {
      int passed = 0;
      char* text = nullptr;
      check(nilsep_verify(suite.c_str(), p, &passed, &text));
      std::string body = take(text);
      body += std::string("suite ") + suite + ": " + (passed ? "pass" : "fail") + "\n";
      emit(body, "");
      return passed ? kExitOk : kExitVerifyFailed;
    }
  } catch (const Failure& f) {
    return report(f);
  }
  return kExitUsage;
}
