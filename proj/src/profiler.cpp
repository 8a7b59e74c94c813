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


#include "nilsep/profiler.hpp"

#include "nilsep/lattice.hpp"
#include "nilsep/separability.hpp"
#include "nilsep/word_metric.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace nilsep {

using lattice::is_prime;
using lattice::lcm_ladder;
using lattice::min_nondivisor;
using lattice::next_prime;

std::string profile_kind_name(ProfileKind k) {
  switch (k) {
  case ProfileKind::Farb: return "farb";
  case ProfileKind::Sub: return "sub";
  case ProfileKind::CentralProfile: return "central_profile";
  }
  return "?";
}

unsigned worker_count() {
  if (const char* s = std::getenv("NILSEP_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// runs f(i) for i < n on worker threads; f must write to disjoint slots
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  const unsigned w = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < w; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string subgroup_string(const Subgroup& H) {
  std::string s = "<";
  bool first = true;
  for (const auto& g : H.induced_seq()) {
    if (!first) s += ",";
    s += element_to_string(g);
    first = false;
  }
  return s + ">";
}

std::string row_value(const ProfileRow& r) { return r.value ? to_string(*r.value) : r.sentinel; }

void parse_row_value(ProfileRow& r, const std::string& v) {
  if (!v.empty() && std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; }))
    r.value = parse_int(v);
  else
    r.sentinel = v;
}

} // namespace

std::string ProfileSeries::to_csv() const {
  std::ostringstream os;
  os << "# kind=" << profile_kind_name(kind) << "\n";
  for (const auto& [k, v] : metadata) os << "# " << k << "=" << v << "\n";
  os << "n,value,mode,witness,certificate_id\n";
  for (const auto& r : rows)
    os << r.n << "," << csv_field(row_value(r)) << "," << depth_mode_name(r.mode) << "," << csv_field(r.witness_element)
       << "," << csv_field(r.certificate_id) << "\n";
  return os.str();
}

ProfileSeries ProfileSeries::from_csv(const std::string& text) {
  ProfileSeries s;
  std::istringstream is(text);
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos || line.size() < 2) throw InvalidArgument("csv: malformed metadata line");
      std::string k = line.substr(2, eq - 2), v = line.substr(eq + 1);
      if (k == "kind") {
        if (v == "farb") s.kind = ProfileKind::Farb;
        else if (v == "sub") s.kind = ProfileKind::Sub;
        else if (v == "central_profile") s.kind = ProfileKind::CentralProfile;
        else throw InvalidArgument("csv: unknown kind " + v);
      } else {
        s.metadata.emplace_back(k, v);
      }
      continue;
    }
    if (!header) {
      if (line != "n,value,mode,witness,certificate_id") throw InvalidArgument("csv: unexpected header");
      header = true;
      continue;
    }
    auto f = csv_split(line);
    if (f.size() != 5) throw InvalidArgument("csv: expected 5 fields");
    ProfileRow r;
    r.n = std::stoul(f[0]);
    parse_row_value(r, f[1]);
    if (f[2] == "exact") r.mode = DepthMode::Exact;
    else if (f[2] == "congruence") r.mode = DepthMode::Congruence;
    else throw InvalidArgument("csv: unknown mode " + f[2]);
    r.witness_element = f[3];
    r.certificate_id = f[4];
    s.rows.push_back(std::move(r));
  }
  if (!header) throw InvalidArgument("csv: missing header");
  return s;
}

std::string ProfileSeries::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["kind"] = profile_kind_name(kind);
  j["metadata"] = ordered_json::array();
  for (const auto& [k, v] : metadata) j["metadata"].push_back({k, v});
  j["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json o;
    o["n"] = std::to_string(r.n);
    o["value"] = row_value(r);
    o["mode"] = depth_mode_name(r.mode);
    o["witness_element"] = r.witness_element;
    o["witness_subgroup"] = r.witness_subgroup;
    o["certificate_id"] = r.certificate_id;
    o["certificate"] = r.certificate ? ordered_json::parse(certificate_to_json(*r.certificate)) : ordered_json();
    j["rows"].push_back(o);
  }
  return j.dump(2);
}

ProfileSeries ProfileSeries::from_json(const std::string& text) {
  using nlohmann::ordered_json;
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw InvalidArgument(std::string("profile json: ") + e.what());
  }
  ProfileSeries s;
  const std::string kind = j.value("kind", "");
  if (kind == "farb") s.kind = ProfileKind::Farb;
  else if (kind == "sub") s.kind = ProfileKind::Sub;
  else if (kind == "central_profile") s.kind = ProfileKind::CentralProfile;
  else throw InvalidArgument("profile json: unknown kind");
  for (const auto& kv : j.at("metadata")) s.metadata.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
  for (const auto& o : j.at("rows")) {
    ProfileRow r;
    r.n = std::stoul(o.at("n").get<std::string>());
    const std::string v = o.at("value").get<std::string>();
    parse_row_value(r, v);
    r.mode = o.at("mode").get<std::string>() == "exact" ? DepthMode::Exact : DepthMode::Congruence;
    r.witness_element = o.at("witness_element").get<std::string>();
    r.witness_subgroup = o.at("witness_subgroup").get<std::string>();
    r.certificate_id = o.at("certificate_id").get<std::string>();
    if (!o.at("certificate").is_null()) r.certificate = certificate_from_json(o.at("certificate").dump());
    s.rows.push_back(std::move(r));
  }
  return s;
}

namespace {

struct Best {
  std::optional<Int> value;
  bool over_budget = false;
  std::size_t witness = 0;
  const DepthResult* result = nullptr;
};

void fold(Best& b, const DepthResult& r, std::size_t idx) {
  if (!r.value) {
    b.over_budget = true;
    return;
  }
  if (!b.value || *r.value > *b.value) {
    b.value = r.value;
    b.witness = idx;
    b.result = &r;
  }
}

void fill_row(ProfileRow& row, const Best& b, const std::string& budget) {
  if (b.over_budget) {
    row.sentinel = "> " + budget;
    row.mode = DepthMode::Congruence;
    return;
  }
  if (!b.value) {
    row.sentinel = "none";
    return;
  }
  row.value = b.value;
  row.mode = b.result->mode;
  row.certificate = b.result->witness;
}

void common_metadata(ProfileSeries& s, const GroupCtx& G, const DepthOptions& opt, std::size_t n_max) {
  s.metadata.emplace_back("group", G.name());
  s.metadata.emplace_back("n_max", std::to_string(n_max));
  s.metadata.emplace_back("budget", to_string(opt.budget));
  s.metadata.emplace_back("cap", std::to_string(opt.cap));
}

bool is_prime_power(const Int& q) {
  if (q < 2) return false;
  for (Int p = 2; p * p <= q; p = next_prime(p))
    if (divides(p, q)) {
      Int r = q;
      while (divides(p, r)) r /= p;
      return r == 1;
    }
  return true;
}

} // namespace

ProfileSeries farb_profile(const Subgroup& H, const std::vector<Element>& S, std::size_t n_max,
                           const DepthOptions& opt) {
  ProfileSeries s;
  s.kind = ProfileKind::Farb;
  const GroupCtx& G = *H.group();
  common_metadata(s, G, opt, n_max);
  s.metadata.emplace_back("subgroup", subgroup_string(H));
  if (n_max == 0) return s;
  Ball B(H.group(), S, n_max);
  DepthOracle O(H, opt);
  std::vector<std::optional<DepthResult>> res(B.size());
  parallel_for(B.size(), [&](std::size_t i) {
    if (!H.contains(B.elements()[i])) res[i] = O.depth(B.elements()[i]);
  });
  Best b;
  std::size_t i = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (; i < B.size() && B.length_at(i) <= n; ++i)
      if (res[i]) fold(b, *res[i], i);
    ProfileRow row;
    row.n = n;
    fill_row(row, b, to_string(opt.budget));
    if (row.value) {
      row.witness_element = element_to_string(B.elements()[b.witness]);
      row.witness_subgroup = subgroup_string(H);
      row.certificate_id = "farb-" + std::to_string(n);
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

Int farb_cyclic_value(const Int& n) {
  if (n < 1) throw InvalidArgument("farb value needs n >= 1");
  Int best = 2;
  for (Int q = 3; lcm_ladder(Int(q - 1).get_ui()) <= n; ++q)
    if (is_prime_power(q)) best = q;
  return best;
}

ProfileSeries farb_cyclic_arithmetic(const Subgroup& H, const std::vector<std::size_t>& ns) {
  const GroupPtr& G = H.group();
  const std::size_t d = G->hirsch();
  if (G->family() != Family::FreeAbelian || d == 0) throw Unsupported("arithmetic farb needs a free abelian group");
  std::vector<Element> basis;
  for (std::size_t k = 0; k < d; ++k) basis.push_back(G->basis(k));
  if (G->generating_set() != basis) throw Unsupported("arithmetic farb needs the basis generating set");
  std::optional<std::size_t> free_k;
  for (std::size_t k = 0; k < d && !free_k; ++k) {
    std::vector<Element> rest;
    for (std::size_t i = 0; i < d; ++i)
      if (i != k) rest.push_back(basis[i]);
    if (Subgroup::induce(G, rest) == H) free_k = k;
  }
  if (!free_k) throw Unsupported("arithmetic farb needs H spanned by all basis vectors but one");
  ProfileSeries s;
  s.kind = ProfileKind::Farb;
  s.metadata.emplace_back("group", G->name());
  s.metadata.emplace_back("subgroup", subgroup_string(H));
  s.metadata.emplace_back("method", "arithmetic");
  DepthOracle O(H, {Int(1) << 62, 4096, {}});
  for (std::size_t n : ns) {
    ProfileRow row;
    row.n = n;
    Int q = farb_cyclic_value(Int(static_cast<unsigned long>(n)));
    row.value = q;
    row.mode = DepthMode::Exact;
    Element w = G->identity();
    w[*free_k] = lcm_ladder(Int(q - 1).get_ui());
    row.witness_element = element_to_string(w);
    row.witness_subgroup = subgroup_string(H);
    row.certificate = O.abelian_depth(w);
    row.certificate_id = "farb-" + std::to_string(n);
    s.rows.push_back(std::move(row));
  }
  return s;
}

ProfileSeries sub_profile(const GroupPtr& G, const std::vector<Element>& S, std::size_t n_max, const SubOptions& opt) {
  ProfileSeries s;
  s.kind = ProfileKind::Sub;
  common_metadata(s, *G, opt.depth, n_max);
  s.metadata.emplace_back("max_ball", std::to_string(opt.max_ball));
  s.metadata.emplace_back("max_subgroups", std::to_string(opt.max_subgroups));
  bool capped = false;
  for (std::size_t n = 1; n <= n_max; ++n) {
    ProfileRow row;
    row.n = n;
    std::vector<Element> E;
    if (!capped) {
      Ball B(G, S, n);
      if (B.size() > opt.max_ball) capped = true;
      else E = B.elements();
    }
    std::vector<Subgroup> subs{Subgroup::trivial(G)};
    std::set<std::vector<Element>> keys{subs[0].induced_seq()};
    for (std::size_t i = 0; i < subs.size() && !capped; ++i)
      for (const auto& x : E) {
        if (subs[i].contains(x)) continue;
        auto gens = subs[i].induced_seq();
        gens.push_back(x);
        Subgroup J = Subgroup::induce(G, gens);
        if (keys.insert(J.induced_seq()).second) {
          subs.push_back(std::move(J));
          if (subs.size() > opt.max_subgroups) {
            capped = true;
            break;
          }
        }
      }
    if (capped) {
      row.sentinel = "cap exceeded";
      row.mode = DepthMode::Congruence;
      s.rows.push_back(std::move(row));
      continue;
    }
    std::vector<std::vector<std::optional<DepthResult>>> res(subs.size());
    parallel_for(subs.size(), [&](std::size_t h) {
      DepthOracle O(subs[h], opt.depth);
      res[h].resize(E.size());
      for (std::size_t i = 0; i < E.size(); ++i)
        if (!subs[h].contains(E[i])) res[h][i] = O.depth(E[i]);
    });
    Best b;
    std::size_t bh = 0;
    for (std::size_t h = 0; h < subs.size(); ++h)
      for (std::size_t i = 0; i < E.size(); ++i) {
        if (!res[h][i]) continue;
        auto before = b.result;
        fold(b, *res[h][i], i);
        if (b.result != before) bh = h;
      }
    fill_row(row, b, to_string(opt.depth.budget));
    if (row.value) {
      row.witness_element = element_to_string(E[b.witness]);
      row.witness_subgroup = subgroup_string(subs[bh]);
      row.certificate_id = "sub-" + std::to_string(n);
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

std::vector<LowerBoundInstance> lower_bound_family(LowerBoundKind kind, const GroupPtr& G, const Element& g,
                                                   const std::vector<Int>& primes, const DepthOptions& opt) {
  G->check(g);
  if (G->is_identity(g)) throw InvalidArgument("unsupported base element: identity");
  std::vector<LowerBoundInstance> out;
  for (const Int& p : primes) {
    if (!is_prime(p)) throw InvalidArgument("lower bound family needs primes");
    LowerBoundInstance inst;
    inst.p = p;
    Subgroup H;
    if (kind == LowerBoundKind::RfLcm) {
      inst.element = G->pow(g, lcm_ladder(Int(p - 1).get_ui()));
      H = Subgroup::trivial(G);
    } else {
      inst.element = g;
      inst.subgroup_gens = {G->pow(g, p)};
      H = Subgroup::induce(G, inst.subgroup_gens);
    }
    if (H.contains(inst.element)) throw InvalidArgument("unsupported base element: lies in the subgroup");
    inst.depth = depth(H, inst.element, opt);
    const auto& d = inst.depth;
    bool witness_ok = !d.witness || validate_certificate(H, inst.element, *d.witness).ok;
    if (kind == LowerBoundKind::RfLcm || d.mode == DepthMode::Congruence)
      inst.pass = witness_ok && (!d.value || *d.value >= p);
    else
      inst.pass = witness_ok && d.value && *d.value == p;
    out.push_back(std::move(inst));
  }
  return out;
}

ScalingFit scaling_report(const ProfileSeries& series, ScalingModel model) {
  std::vector<double> xs, ys;
  for (const auto& r : series.rows) {
    if (!r.value || *r.value <= 0) continue;
    double n = static_cast<double>(r.n);
    double x;
    if (model == ScalingModel::PolyInN) {
      if (n <= 0) continue;
      x = std::log(n);
    } else {
      if (n <= 1) continue;
      x = std::log(std::log(n));
    }
    xs.push_back(x);
    ys.push_back(std::log(r.value->get_d()));
  }
  if (xs.size() < 4) throw InvalidArgument("scaling report needs at least 4 usable rows");
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw InvalidArgument("scaling report needs distinct n");
  ScalingFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.points = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) f.residuals.push_back(ys[i] - (f.intercept + f.slope * xs[i]));
  return f;
}

std::string PresetReport::text() const {
  std::string s = name + ": " + (pass ? "pass" : "FAIL") + (partial ? " (partial)" : "") + "\n";
  for (const auto& l : lines) s += "  " + l + "\n";
  return s;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"ex6.3", "ex6.4", "prop6.1", "prop6.2", "cor1.2", "dist_check"};
  return names;
}

namespace {

Element vec(std::initializer_list<long> xs) {
  Element e;
  for (long x : xs) e.push_back(Int(x));
  return e;
}

std::string fixed(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << v;
  return os.str();
}

struct Checker {
  PresetReport& rep;
  void operator()(bool ok, const std::string& what) {
    rep.lines.push_back(std::string(ok ? "[ok] " : "[fail] ") + what);
    rep.pass = rep.pass && ok;
  }
};

PresetReport ex63(long p) {
  PresetReport rep{"ex6.3", true, false, {}};
  Checker check{rep};
  auto G = GroupCtx::free_abelian(2);
  const auto& S = G->generating_set();
  auto H = Subgroup::induce(G, {vec({1, p}), vec({p, 0})});
  auto nH = subgroup_norm(H, S, static_cast<std::size_t>(p + 4));
  check(nH.norm == static_cast<std::size_t>(p + 1), "||H||_S = " + nH.describe() + ", expected " + std::to_string(p + 1));
  auto I = H.truncate(1);
  auto seq = I.induced_seq();
  check(seq.size() == 1 && seq[0] == vec({0, p * p}),
        "H cap <e2> = <" + (seq.empty() ? std::string("1") : element_to_string(seq[0])) + ">, expected <[0," +
            std::to_string(p * p) + "]>");
  auto nI = subgroup_norm(I, S, static_cast<std::size_t>(p * p + 2));
  check(nI.norm == static_cast<std::size_t>(p * p), "||H cap <e2>||_S = " + nI.describe());
  const Element g = vec({0, p});
  auto d = depth(H, g);
  bool valid = d.witness && validate_certificate(H, g, *d.witness).ok;
  check(d.value == Int(p * p) && d.mode == DepthMode::Exact && valid,
        "D(H, (0," + std::to_string(p) + ")) = " + d.describe() + " (" + depth_mode_name(d.mode) + "), expected " +
            std::to_string(p * p) + ", certificate " + (valid ? "valid" : "invalid"));
  return rep;
}

PresetReport ex64(long p) {
  PresetReport rep{"ex6.4", true, false, {}};
  Checker check{rep};
  auto G = GroupCtx::unitriangular(3);
  const Int p2 = Int(p) * p, p3 = p2 * p, p9 = pow_int(p3, 3);
  auto H = Subgroup::induce(G, {vec({0, 1, p * p}), vec({0, p, 0})});
  auto seq = H.truncate(2).induced_seq();
  check(seq.size() == 1 && seq[0] == Element{0, 0, p3},
        "H cap Z = <" + (seq.empty() ? std::string("1") : element_to_string(seq[0])) + ">, expected <[0,0," +
            to_string(p3) + "]>");
  const Element g{0, 0, p2};
  auto sep = separate_central(H, g);
  bool sep_ok = sep.certificate && validate_certificate(H, g, *sep.certificate).ok;
  check(sep_ok && sep.certificate->modulus == p3 && sep.certificate->quotient_order == p9,
        "separating certificate: level " + (sep.certificate ? to_string(sep.certificate->modulus) : "none") +
            ", order " + (sep.certificate ? to_string(sep.certificate->quotient_order) : "none") + ", " +
            (sep_ok ? "valid" : "invalid"));
  const std::size_t cap = 4096;
  if (p9 > Int(static_cast<unsigned long>(cap))) {
    rep.partial = true;
    rep.lines.push_back("[skipped] exhaustive scan of U3(Z/" + to_string(p3) + "): frame order " + to_string(p9) +
                        " exceeds enumeration cap " + std::to_string(cap));
    return rep;
  }
  DepthOracle O(H, {p9, cap, {to_int64(p3)}});
  auto scan = O.scan_depth(g, p9 + 1);
  bool scan_ok = scan && validate_certificate(H, g, *scan).ok;
  check(scan_ok && scan->quotient_order == p9,
        "exhaustive scan of all quotients of U3(Z/" + to_string(p3) + "): smallest separating order " +
            (scan ? to_string(scan->quotient_order) : std::string("none")) + ", expected " + to_string(p9));
  return rep;
}

PresetReport prop61(long p) {
  PresetReport rep{"prop6.1", true, false, {}};
  Checker check{rep};
  auto G = GroupCtx::unitriangular(3);
  auto H = Subgroup::induce(G, {vec({1, 0, 0}), vec({0, 0, p})});
  check(!H.truncate(2).is_trivial() && !H.index(), "H = <a, c^" + std::to_string(p) +
                                                       "> has infinite index and meets the centre");
  DepthOracle O(H);
  Int central_bound = 0;
  for (long l = 1; l < p; ++l) {
    auto d = O.depth(vec({0, 0, l}));
    if (!d.value) {
      check(false, "D(H, c^" + std::to_string(l) + ") exceeds budget");
      return rep;
    }
    central_bound = std::max(central_bound, *d.value);
  }
  rep.lines.push_back("central coset bound D = " + to_string(central_bound));
  std::vector<Element> coset_gens = H.induced_seq();
  coset_gens.push_back(vec({0, 0, 1}));
  auto HZ = Subgroup::induce(G, coset_gens);
  const std::size_t radius = 6;
  Ball B(G, G->generating_set(), radius);
  std::size_t second = 0, violations = 0;
  for (const auto& x : B.elements()) {
    if (H.contains(x) || !HZ.contains(x)) continue;
    ++second;
    auto d = O.depth(x);
    if (!d.value || *d.value > central_bound) ++violations;
  }
  check(violations == 0, std::to_string(second) + " elements of B_" + std::to_string(radius) +
                             " in H Z(H3) outside H, all with depth <= D (" + std::to_string(violations) +
                             " violations)");
  auto farb = farb_profile(H, G->generating_set(), radius);
  std::string row = "Farb rows:";
  for (const auto& r : farb.rows) row += " " + (r.value ? to_string(*r.value) : r.sentinel);
  rep.lines.push_back(row);
  return rep;
}

PresetReport prop62() {
  PresetReport rep{"prop6.2", true, false, {}};
  Checker check{rep};
  auto G = GroupCtx::unitriangular(3);
  const std::size_t radius = 64;
  std::map<long, std::size_t> len; // j -> |c^j|_S
  layered_bfs(*G, G->generating_set(), radius, [&](const std::vector<std::int64_t>& x, std::size_t l) {
    if (x[0] == 0 && x[1] == 0 && x[2] > 0) len.emplace(x[2], l);
  });
  DepthOracle O(Subgroup::trivial(G));
  std::size_t mismatches = 0;
  for (long j = 1; j <= 60; ++j) {
    Int shortcut = pow_int(min_nondivisor(Int(j)), 3);
    auto d = O.depth(vec({0, 0, j}));
    if (d.value != shortcut) ++mismatches;
  }
  check(mismatches == 0, "min_nondivisor(j)^3 equals frame-scan depth of c^j for j <= 60");
  for (std::size_t n : {8, 16, 32, 64}) {
    Int best = 0;
    long arg = 0;
    for (const auto& [j, l] : len)
      if (l <= n) {
        Int v = pow_int(min_nondivisor(Int(j)), 3);
        if (v > best) {
          best = v;
          arg = j;
        }
      }
    const double lg = std::log(static_cast<double>(n));
    const double ratio = best.get_d() / (lg * lg * lg);
    check(ratio >= 1.0 / 64 && ratio <= 64, "n=" + std::to_string(n) + ": max depth " + to_string(best) + " at c^" +
                                                std::to_string(arg) + ", ratio to (log n)^3 = " + fixed(ratio));
  }
  return rep;
}

PresetReport cor12() {
  PresetReport rep{"cor1.2", true, false, {}};
  Checker check{rep};
  const std::vector<std::size_t> ns{2, 10, 100, 1000, 10000, 100000, 1000000};
  auto Z = GroupCtx::free_abelian(1);
  auto Z2 = GroupCtx::free_abelian(2);
  std::vector<std::pair<std::string, Subgroup>> cases{{"Z, {0}", Subgroup::trivial(Z)},
                                                      {"Z^2, <e1>", Subgroup::induce(Z2, {vec({1, 0})})}};
  for (const auto& [label, H] : cases) {
    auto brute = farb_profile(H, H.group()->generating_set(), 24);
    std::vector<std::size_t> small;
    for (std::size_t n = 1; n <= 24; ++n) small.push_back(n);
    auto arith = farb_cyclic_arithmetic(H, small);
    bool same = true;
    for (std::size_t i = 0; i < small.size(); ++i) same = same && brute.rows[i].value == arith.rows[i].value;
    check(same, label + ": arithmetic rows equal breadth-first rows for n <= 24");
    auto series = farb_cyclic_arithmetic(H, ns);
    for (const auto& r : series.rows) {
      const double ratio = r.value->get_d() / std::log(static_cast<double>(r.n));
      check(ratio >= 1.0 / 6 && ratio <= 6, label + ": n=" + std::to_string(r.n) + " Farb=" + to_string(*r.value) +
                                                " ratio to log n = " + fixed(ratio));
    }
  }
  return rep;
}

PresetReport dist_check() {
  PresetReport rep{"dist_check", true, false, {}};
  Checker check{rep};
  auto G = GroupCtx::unitriangular(3);
  Ball B(G, G->generating_set(), 8);
  double lo = 1e9, hi = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < B.size(); ++i) {
    const Element& x = B.elements()[i];
    if (x[0] != 0 || B.length_at(i) < 2) continue;
    const double inner = Int(abs(x[1]) + abs(x[2])).get_d();
    if (inner < 2) continue;
    const double r = std::log(inner) / std::log(static_cast<double>(B.length_at(i)));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    ++count;
  }
  check(count > 0 && lo >= 0.5 && hi <= 2.05, "log |x|_{b,c} / log |x|_S over " + std::to_string(count) +
                                                  " elements of <b,c> in B_8: [" + fixed(lo) + ", " + fixed(hi) +
                                                  "] within [0.5, 2.05]");
  return rep;
}

} // namespace

PresetReport preset_experiment(const std::string& name, long p) {
  auto prime = [&](long dflt) {
    long q = p == 0 ? dflt : p;
    if (!is_prime(Int(q))) throw InvalidArgument("preset parameter p must be prime");
    return q;
  };
  if (name == "ex6.3") return ex63(prime(2));
  if (name == "ex6.4") return ex64(prime(2));
  if (name == "prop6.1") return prop61(prime(2));
  if (name == "prop6.2") return prop62();
  if (name == "cor1.2") return cor12();
  if (name == "dist_check") return dist_check();
  throw InvalidArgument("unknown preset '" + name + "'");
}

} // namespace nilsep
