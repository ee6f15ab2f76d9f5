// Command-line front end: reads algebra/module/complex documents, prints verdict reports.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpd/dingdim.hpp"
#include "dpd/io.hpp"
#include "dpd/suite.hpp"

using namespace dpd;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kInput = 1, kReplay = 2, kEngine = 3 };

struct Job {
  std::string command;
  std::string algebra_path, module_path, complex_path, target_path;
  int window = 20;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string cache = "on";
  int degree = 4;
  int from = -4, to = 0;
};

struct ReplayFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Content-addressed report cache

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::optional<std::filesystem::path> cache_dir(const Job& job) {
  if (job.cache != "on") return std::nullopt;
  const char* env = std::getenv("DPD_CACHE");
  if (!env || !*env) return std::nullopt;
  return std::filesystem::path(env);
}

std::string cache_key(const Job& job, const std::vector<json>& inputs) {
  json k = {{"command", job.command}, {"window", job.window}, {"seed", job.seed},
            {"degree", job.degree},   {"from", job.from},     {"to", job.to}, {"inputs", inputs}};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(k.dump())));
  return buf;
}

std::optional<json> cache_load(const std::filesystem::path& dir, const std::string& key) {
  std::ifstream in(dir / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    return json::parse(in);
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
}

void cache_store(const std::filesystem::path& dir, const std::string& key, const json& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return;
  auto tmp = dir / (key + ".json.tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << report.dump();
  }
  std::filesystem::rename(tmp, dir / (key + ".json"), ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

// ---------------------------------------------------------------------------
// Commands

std::string path_string(const AlgebraPtr& alg, const BasisElement& b) {
  if (b.path.empty()) return "e" + std::to_string(b.source);
  std::string s;
  for (auto it = b.path.rbegin(); it != b.path.rend(); ++it) s += alg->quiver().arrows[*it].id;
  return s;
}

json algebra_check(const AlgebraPtr& alg) {
  json basis = json::array();
  for (std::size_t i = 0; i < alg->dim(); ++i) basis.push_back(path_string(alg, alg->element(static_cast<int>(i))));
  json proj = json::array();
  for (const auto& p : indecomposable_projectives(alg)) proj.push_back(p.dims());
  auto opp = alg->opposite();
  return {{"dim", alg->dim()},
          {"vertices", alg->vertices()},
          {"basis", basis},
          {"nilpotency_index", alg->nilpotency_index()},
          {"commutative", alg->vertices() == 1 && alg->is_commutative()},
          {"self_injective", is_self_injective(alg)},
          {"projective_dims", proj},
          {"opposite", io::algebra_to_json(opp)}};
}

json module_is_dp(const Representation& m, int window) {
  DpVerdict v = is_ding_projective(m, window);
  if (v.certificate && !replay(*v.certificate, m)) throw ReplayFailed("Ding projectivity certificate does not replay");
  if (v.obstruction && !replay(*v.obstruction)) throw ReplayFailed("obstruction does not replay");
  return io::dp_verdict_to_json(v);
}

json module_dpd(const Representation& m, int window) {
  DpdVerdict v = dpd_module(m, window);
  if (!replay_verdict(v, m)) throw ReplayFailed("dimension certificate does not replay");
  return io::dpd_verdict_to_json(v);
}

json complex_dpd(const ChainComplex& x, int window) {
  DpdVerdict v = dpd_complex(x, window);
  if (!replay_verdict(v, x, window)) throw ReplayFailed("dimension certificate does not replay");
  return io::dpd_verdict_to_json(v);
}

json complex_homology(const ChainComplex& x) {
  json j = io::profile_to_json(homology_profile(x));
  json dims = json::object();
  for (int n = x.lo(); n <= x.hi(); ++n) dims[std::to_string(n)] = homology(x, n).dims();
  j["dims"] = dims;
  return j;
}

json complex_rhom(const ChainComplex& x, const ChainComplex& u, int from, int to) {
  auto h = rhom(x, u, from, to);
  json dims = json::object();
  for (auto& [l, d] : h) dims[std::to_string(l)] = d;
  std::optional<int> lowest;
  for (auto& [l, d] : h)
    if (d && !lowest) lowest = l;
  return {{"from", from}, {"to", to}, {"homology_dims", dims},
          {"lowest_nonzero_in_range", lowest ? json(*lowest) : json(nullptr)}};
}

json resolve(const ChainComplex& x, int degree) {
  auto tail = ResolutionTail::of_complex(x);
  const int d = std::max(degree, tail.lowest());
  ChainComplex p = tail.complex(d);
  json aug = json::object();
  for (int n = p.lo(); n <= p.hi(); ++n) aug[std::to_string(n)] = io::map_to_json(tail.augmentation(n));
  return {{"resolution", io::complex_to_json(p)},
          {"lowest", tail.lowest()},
          {"degree", d},
          {"passthrough", tail.passthrough()},
          {"augmentation", aug},
          {"quasi_isomorphic_through", d - 1},
          {"augmentation_checked", is_quasi_iso_through(tail.augmentation_map(d), d - 1)}};
}

json check_ta(const Representation& g, int window) {
  DpVerdict v = is_ding_projective(g, std::max(window, 2), {.ta_window = 0});
  CompleteResolution t = splice_unchecked(g);
  json j = io::ta_report_to_json(check_totally_acyclic(t, window));
  j["certified_ding_projective"] = to_string(v.answer);
  return j;
}

// ---------------------------------------------------------------------------
// Text rendering

std::string value_text(const json& v) {
  if (v.is_object()) return "undetermined(>=" + std::to_string(v["undetermined_geq"].get<long>()) + ")";
  if (v.is_string()) return v.get<std::string>();
  return std::to_string(v.get<long>());
}

std::vector<std::pair<int, json>> by_degree(const json& obj) {
  std::vector<std::pair<int, json>> out;
  for (auto it = obj.begin(); it != obj.end(); ++it) out.emplace_back(std::stoi(it.key()), it.value());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::string dims_text(const json& complex) {
  std::string s;
  for (const auto& [n, t] : by_degree(complex["terms"])) {
    if (!s.empty()) s += "  ";
    s += std::to_string(n) + ":" + t["dims"].dump();
  }
  return s.empty() ? "0" : s;
}

std::string render_text(const Job& job, const json& r) {
  std::ostringstream o;
  const std::string& c = job.command;
  if (c == "algebra check") {
    o << "dim " << r["dim"] << ", vertices " << r["vertices"] << ", nilpotency index " << r["nilpotency_index"] << "\n";
    o << "basis " << r["basis"].dump() << "\n";
    o << "indecomposable projectives " << r["projective_dims"].dump() << "\n";
    o << "self-injective " << (r["self_injective"].get<bool>() ? "yes" : "no") << "\n";
  } else if (c == "module is-dp") {
    o << "ding projective: " << r["answer"].get<std::string>() << "\n";
    if (!r["certificate"].is_null()) {
      const auto& cert = r["certificate"];
      if (cert["projective"].get<bool>()) {
        o << "certificate: projective\n";
      } else {
        for (const char* side : {"left", "right"}) {
          const auto& s = cert[side];
          if (s.contains("self_injective"))
            o << side << ": self-injective algebra\n";
          else
            o << side << ": syzygy cycle (" << s["cycle"]["j"] << ", " << s["cycle"]["k"] << "), " << s["ext"].size()
              << " vanishing Ext groups\n";
        }
      }
    }
    if (!r["obstruction"].is_null()) {
      const auto& ob = r["obstruction"];
      if (ob["kind"] == "reflexivity") {
        o << "obstruction: M -> M** is not an isomorphism\n";
      } else {
        std::size_t d = 0;
        for (const auto& e : ob["ext"]) d += e["dim"].get<std::size_t>();
        o << "obstruction: Ext^" << ob["degree"] << " into the projectives (" << ob["side"].get<std::string>()
          << " side) has dimension " << d << "\n";
      }
    }
  } else if (c == "module dpd" || c == "complex dpd") {
    o << "Dpd = " << value_text(r["value"]) << "\n";
    const auto& cert = r["certificate"];
    const std::string kind = cert["kind"];
    if (kind == "syzygy_cycle" && cert.contains("cycle"))
      o << "certificate: syzygy cycle (" << cert["cycle"]["j"] << ", " << cert["cycle"]["k"]
        << ") of non-Ding-projective modules\n";
    else if (kind == "ding_projective")
      o << "certificate: Ding projective module at degree " << cert["degree"] << "\n";
    else if (kind == "exact")
      o << "certificate: the input is exact\n";
    else
      o << "certificate: no syzygy cycle within the window\n";
    if (!r["witness_complex"].is_null()) o << "witness complex " << dims_text(r["witness_complex"]) << "\n";
  } else if (c == "complex homology") {
    for (const auto& [n, d] : by_degree(r["dims"])) o << "H_" << n << " " << d.dump() << "\n";
    o << "hsup " << value_text(r["hsup"]) << ", hinf " << value_text(r["hinf"]) << "\n";
  } else if (c == "complex rhom") {
    for (const auto& [n, d] : by_degree(r["homology_dims"])) o << "H_" << n << " " << d << "\n";
  } else if (c == "resolve") {
    o << "resolution " << dims_text(r["resolution"]) << "\n";
    o << "augmentation quasi-isomorphic through degree " << r["quasi_isomorphic_through"] << ": "
      << (r["augmentation_checked"].get<bool>() ? "yes" : "no") << "\n";
  } else if (c == "check-ta") {
    o << "totally acyclic on [" << r["from"] << ", " << r["to"] << "]: " << (r["pass"].get<bool>() ? "pass" : "fail")
      << " (" << r["checks"].size() << " checks)\n";
    for (const auto& ch : r["checks"])
      if (!ch["pass"].get<bool>()) {
        o << "first failure: " << ch["kind"].get<std::string>() << " at degree " << ch["degree"];
        if (ch.contains("vertex")) o << ", P_" << ch["vertex"];
        o << "\n";
        break;
      }
    o << "certified Ding projective: " << r["certified_ding_projective"].get<std::string>() << "\n";
  }
  return o.str();
}

// ---------------------------------------------------------------------------

int run(const Job& job) {
  if (job.window < 1) throw io::InputError("", "--window", "window must be at least 1");
  if (job.format != "text" && job.format != "json") throw io::InputError("", "--format", "expected text or json");
  if (job.cache != "on" && job.cache != "off") throw io::InputError("", "--cache", "expected on or off");

  if (job.command == "suite") {
    suite::Config cfg;
    cfg.seed = job.seed;
    cfg.window = job.window;
    auto rep = suite::run_suite(cfg);
    if (job.format == "json")
      std::cout << rep.to_json().dump(2) << "\n";
    else
      std::cout << rep.to_text();
    return kOk;
  }

  json adoc = io::read_json_file(job.algebra_path);
  AlgebraPtr alg = io::parse_algebra(adoc, job.algebra_path);
  std::vector<json> inputs{adoc};
  auto need = [&](const std::string& path, const char* flag) -> json {
    if (path.empty()) throw io::InputError("", flag, "this command needs " + std::string(flag));
    json j = io::read_json_file(path);
    inputs.push_back(j);
    return j;
  };

  std::function<json()> compute;
  if (job.command == "algebra check") {
    compute = [&] { return algebra_check(alg); };
  } else if (job.command == "module is-dp" || job.command == "module dpd" || job.command == "check-ta") {
    Representation m = io::parse_module(need(job.module_path, "--module"), alg, job.module_path);
    if (job.command == "module is-dp") {
      if (job.window < 2) throw io::InputError("", "--window", "Ding projectivity needs window >= 2");
      compute = [m, &job] { return module_is_dp(m, job.window); };
    } else if (job.command == "module dpd") {
      compute = [m, &job] { return module_dpd(m, job.window); };
    } else {
      compute = [m, &job] { return check_ta(m, job.window); };
    }
  } else if (job.command == "complex homology" || job.command == "complex dpd" || job.command == "complex rhom") {
    ChainComplex x = io::parse_complex(need(job.complex_path, "--complex"), alg, job.complex_path);
    if (job.command == "complex homology") {
      compute = [x] { return complex_homology(x); };
    } else if (job.command == "complex dpd") {
      compute = [x, &job] { return complex_dpd(x, job.window); };
    } else {
      ChainComplex u = io::parse_complex(need(job.target_path, "--target"), alg, job.target_path);
      if (job.from > job.to) throw io::InputError("", "--from", "empty degree range");
      compute = [x, u, &job] { return complex_rhom(x, u, job.from, job.to); };
    }
  } else if (job.command == "resolve") {
    ChainComplex x;
    if (!job.module_path.empty())
      x = stalk(io::parse_module(need(job.module_path, "--module"), alg, job.module_path), 0);
    else
      x = io::parse_complex(need(job.complex_path, "--complex"), alg, job.complex_path);
    if (job.degree < 0) throw io::InputError("", "--degree", "degree must be nonnegative");
    compute = [x, &job] { return resolve(x, job.degree); };
  } else {
    throw io::InputError("", "", "unknown command");
  }

  json report;
  auto dir = cache_dir(job);
  std::string key = cache_key(job, inputs);
  if (auto hit = dir ? cache_load(*dir, key) : std::nullopt) {
    report = *hit;
  } else {
    report = compute();
    if (dir) cache_store(*dir, key, report);
  }
  if (job.format == "json")
    std::cout << report.dump(2) << "\n";
  else
    std::cout << render_text(job, report);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ding projectivity and Ding projective dimension over bound quiver algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Job job;
  app.add_option("--window", job.window, "detection window")->capture_default_str();
  app.add_option("--seed", job.seed, "seed for randomized steps")->capture_default_str();
  app.add_option("--format", job.format, "text or json")->capture_default_str();
  app.add_option("--cache", job.cache, "on or off (cache directory from DPD_CACHE)")->capture_default_str();

  auto inputs = [&](CLI::App* c, bool module, bool complex) {
    c->fallthrough();
    c->add_option("--algebra", job.algebra_path, "algebra document")->required();
    if (module) c->add_option("--module", job.module_path, "module document");
    if (complex) c->add_option("--complex", job.complex_path, "complex document");
  };

  auto* alg = app.add_subcommand("algebra", "algebra commands");
  alg->require_subcommand(1);
  alg->fallthrough();
  auto* alg_check = alg->add_subcommand("check", "validate an algebra and describe it");
  inputs(alg_check, false, false);

  auto* mod = app.add_subcommand("module", "module commands");
  mod->require_subcommand(1);
  mod->fallthrough();
  auto* is_dp = mod->add_subcommand("is-dp", "decide Ding projectivity");
  inputs(is_dp, true, false);
  auto* mdpd = mod->add_subcommand("dpd", "Ding projective dimension of a module");
  inputs(mdpd, true, false);

  auto* cx = app.add_subcommand("complex", "complex commands");
  cx->require_subcommand(1);
  cx->fallthrough();
  auto* hom = cx->add_subcommand("homology", "homology profile");
  inputs(hom, false, true);
  auto* cdpd = cx->add_subcommand("dpd", "Ding projective dimension of a bounded complex");
  inputs(cdpd, false, true);
  auto* rh = cx->add_subcommand("rhom", "homology dimensions of RHom(X, U)");
  inputs(rh, false, true);
  rh->add_option("--target", job.target_path, "complex U")->required();
  rh->add_option("--from", job.from, "lowest degree")->capture_default_str();
  rh->add_option("--to", job.to, "highest degree")->capture_default_str();

  auto* res = app.add_subcommand("resolve", "projective resolution of a module or complex");
  inputs(res, true, true);
  res->add_option("--degree", job.degree, "materialize through this degree")->capture_default_str();

  auto* ta = app.add_subcommand("check-ta", "splice a module and check total acyclicity on [-window, window]");
  inputs(ta, true, false);

  app.add_subcommand("suite", "run the property suite")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }
  for (auto* sub : app.get_subcommands()) {
    job.command = sub->get_name();
    for (auto* s2 : sub->get_subcommands()) job.command += " " + s2->get_name();
  }

  try {
    return run(job);
  } catch (const io::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const AlgebraMismatch& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const NotCommutative& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const ReplayFailed& e) {
    std::cerr << "certificate replay failure: " << e.what() << "\n";
    return kReplay;
  } catch (const CertificateReplayFailure& e) {
    std::cerr << "certificate replay failure: " << e.what() << "\n";
    return kReplay;
  } catch (const std::exception& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return kEngine;
  }
}
