#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpd/dingdim.hpp"

namespace dpd::io {

using json = nlohmann::json;

/// Malformed input document; `where` is a JSON-pointer-like path to the offending field.
struct InputError : Error {
  std::string file, where;
  InputError(std::string file_, std::string where_, const std::string& msg)
      : Error((file_.empty() ? "" : file_ + ": ") + (where_.empty() ? "/" : where_) + ": " + msg),
        file(std::move(file_)),
        where(std::move(where_)) {}
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "", "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path, "", std::string("invalid JSON: ") + e.what());
  }
}

namespace detail {

struct Ctx {
  std::string file;
  std::string where;
  Ctx at(const std::string& k) const { return {file, where + "/" + k}; }
  Ctx at(std::size_t i) const { return at(std::to_string(i)); }
  [[noreturn]] void fail(const std::string& msg) const { throw InputError(file, where, msg); }
};

inline const json& field(const json& j, const std::string& k, const Ctx& c) {
  if (!j.is_object()) c.fail("expected an object");
  auto it = j.find(k);
  if (it == j.end()) c.at(k).fail("missing field");
  return *it;
}

inline long long integer(const json& j, const Ctx& c) {
  if (!j.is_number_integer()) c.fail("expected an integer");
  return j.get<long long>();
}

inline std::size_t count(const json& j, const Ctx& c) {
  long long v = integer(j, c);
  if (v < 0) c.fail("expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

inline int degree_key(const std::string& k, const Ctx& c) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(k, &pos);
    if (pos != k.size()) throw std::invalid_argument(k);
    return v;
  } catch (const std::exception&) {
    c.fail("degree key '" + k + "' is not an integer");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Matrices

inline FpMatrix parse_matrix(const json& j, Residue p, std::size_t rows, std::size_t cols, const detail::Ctx& c) {
  if (!j.is_array()) c.fail("expected a matrix (array of rows)");
  FpMatrix m(p, rows, cols);
  if (j.empty() && (rows == 0 || cols == 0)) return m;
  if (j.size() != rows) c.fail("expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    auto rc = c.at(r);
    if (!row.is_array() || row.size() != cols) rc.fail("expected a row of length " + std::to_string(cols));
    for (std::size_t k = 0; k < cols; ++k) {
      long long v = detail::integer(row[k], rc.at(k));
      long long r_ = v % static_cast<long long>(p);
      m(r, k) = static_cast<Residue>(r_ < 0 ? r_ + p : r_);
    }
  }
  return m;
}

inline json matrix_to_json(const FpMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Algebras

inline AlgebraPtr parse_algebra(const json& j, const std::string& file = "") {
  detail::Ctx c{file, ""};
  const long long p = detail::integer(detail::field(j, "p", c), c.at("p"));
  if (p < 2 || p > static_cast<long long>(kMaxPrime)) c.at("p").fail("modulus out of range");
  Quiver q;
  q.vertices = static_cast<int>(detail::count(detail::field(j, "vertices", c), c.at("vertices")));
  const auto& arrows = detail::field(j, "arrows", c);
  if (!arrows.is_array()) c.at("arrows").fail("expected an array");
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    auto ac = c.at("arrows").at(i);
    const auto& a = arrows[i];
    const auto& id = detail::field(a, "id", ac);
    if (!id.is_string()) ac.at("id").fail("expected a string");
    int from = static_cast<int>(detail::integer(detail::field(a, "from", ac), ac.at("from")));
    int to = static_cast<int>(detail::integer(detail::field(a, "to", ac), ac.at("to")));
    if (from < 0 || from >= q.vertices) ac.at("from").fail("vertex out of range");
    if (to < 0 || to >= q.vertices) ac.at("to").fail("vertex out of range");
    if (!ids.emplace(id.get<std::string>(), static_cast<int>(i)).second) ac.at("id").fail("duplicate arrow id");
    q.arrows.push_back({id.get<std::string>(), from, to});
  }
  std::vector<Relation> rels;
  if (j.contains("relations")) {
    const auto& rj = j["relations"];
    auto rc = c.at("relations");
    if (!rj.is_array()) rc.fail("expected an array");
    for (std::size_t i = 0; i < rj.size(); ++i) {
      auto ic = rc.at(i);
      if (!rj[i].is_array()) ic.fail("expected an array of terms");
      Relation rel;
      for (std::size_t t = 0; t < rj[i].size(); ++t) {
        auto tc = ic.at(t);
        const auto& term = rj[i][t];
        RelationTerm rt;
        rt.coeff = detail::integer(detail::field(term, "coeff", tc), tc.at("coeff"));
        const auto& path = detail::field(term, "path", tc);
        if (!path.is_array()) tc.at("path").fail("expected an array of arrow ids");
        for (std::size_t k = 0; k < path.size(); ++k) {
          if (!path[k].is_string()) tc.at("path").at(k).fail("expected an arrow id");
          auto it = ids.find(path[k].get<std::string>());
          if (it == ids.end()) tc.at("path").at(k).fail("unknown arrow id '" + path[k].get<std::string>() + "'");
          rt.path.push_back(it->second);
        }
        rel.push_back(std::move(rt));
      }
      rels.push_back(std::move(rel));
    }
  }
  int cap = 16;
  if (j.contains("length_cap")) cap = static_cast<int>(detail::integer(j["length_cap"], c.at("length_cap")));
  try {
    return build_algebra(q, rels, static_cast<Residue>(p), cap);
  } catch (const NotAdmissible& e) {
    c.at("relations").fail(e.what());
  } catch (const NotFiniteDimensional& e) {
    c.at("relations").fail(e.what());
  }
}

inline json algebra_to_json(const AlgebraPtr& alg) {
  json j;
  j["p"] = alg->p();
  j["vertices"] = alg->vertices();
  json arrows = json::array();
  for (const auto& a : alg->quiver().arrows) arrows.push_back({{"id", a.id}, {"from", a.source}, {"to", a.target}});
  j["arrows"] = arrows;
  json rels = json::array();
  for (const auto& r : alg->relations()) {
    json terms = json::array();
    for (const auto& t : r) {
      json path = json::array();
      for (int a : t.path) path.push_back(alg->quiver().arrows[a].id);
      terms.push_back({{"coeff", t.coeff}, {"path", path}});
    }
    rels.push_back(terms);
  }
  j["relations"] = rels;
  return j;
}

// ---------------------------------------------------------------------------
// Modules and maps

inline Representation parse_module(const json& j, const AlgebraPtr& alg, const std::string& file = "",
                                   const std::string& where = "") {
  detail::Ctx c{file, where};
  const auto& dj = detail::field(j, "dims", c);
  if (!dj.is_array() || dj.size() != static_cast<std::size_t>(alg->vertices()))
    c.at("dims").fail("expected " + std::to_string(alg->vertices()) + " dimensions (one per vertex)");
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < dj.size(); ++v) dims.push_back(detail::count(dj[v], c.at("dims").at(v)));
  const json empty = json::object();
  const json& aj = j.contains("arrows") ? j["arrows"] : empty;
  if (!aj.is_object()) c.at("arrows").fail("expected an object keyed by arrow id");
  for (auto it = aj.begin(); it != aj.end(); ++it) {
    const auto& arrows = alg->quiver().arrows;
    if (std::none_of(arrows.begin(), arrows.end(), [&](const Arrow& a) { return a.id == it.key(); }))
      c.at("arrows").at(it.key()).fail("unknown arrow id");
  }
  std::vector<FpMatrix> mats;
  for (const auto& a : alg->quiver().arrows) {
    const std::size_t r = dims[a.target], cols = dims[a.source];
    auto it = aj.find(a.id);
    if (it == aj.end()) {
      if (r != 0 && cols != 0) c.at("arrows").at(a.id).fail("missing arrow matrix");
      mats.emplace_back(alg->p(), r, cols);
    } else {
      mats.push_back(parse_matrix(*it, alg->p(), r, cols, c.at("arrows").at(a.id)));
    }
  }
  try {
    return Representation(alg, std::move(dims), std::move(mats));
  } catch (const InvalidModule& e) {
    c.fail(e.what());
  }
}

inline json module_to_json(const Representation& m) {
  json j;
  j["dims"] = m.dims();
  json arrows = json::object();
  const auto& alg = m.algebra();
  for (int a = 0; a < alg->num_arrows(); ++a) arrows[alg->quiver().arrows[a].id] = matrix_to_json(m.arrow(a));
  j["arrows"] = arrows;
  return j;
}

/// Per-vertex matrices.
inline json map_to_json(const ModuleMap& f) {
  json j = json::array();
  for (const auto& c : f.components()) j.push_back(matrix_to_json(c));
  return j;
}

inline ModuleMap parse_map(const json& j, const Representation& s, const Representation& t, const detail::Ctx& c) {
  const int nv = s.algebra()->vertices();
  if (!j.is_array() || j.size() != static_cast<std::size_t>(nv))
    c.fail("expected " + std::to_string(nv) + " matrices (one per vertex)");
  std::vector<FpMatrix> comps;
  for (int v = 0; v < nv; ++v) comps.push_back(parse_matrix(j[v], s.p(), t.dim(v), s.dim(v), c.at(v)));
  return ModuleMap(s, t, std::move(comps));
}

// ---------------------------------------------------------------------------
// Complexes

/// Missing terms are zero; a missing differential is the zero map.
inline ChainComplex parse_complex(const json& j, const AlgebraPtr& alg, const std::string& file = "") {
  detail::Ctx c{file, ""};
  const int lo = static_cast<int>(detail::integer(detail::field(j, "lo", c), c.at("lo")));
  const int hi = static_cast<int>(detail::integer(detail::field(j, "hi", c), c.at("hi")));
  if (hi < lo) return ChainComplex::zero(alg);
  if (hi - lo > 4096) c.at("hi").fail("support too long");
  const json empty = json::object();
  const json& tj = j.contains("terms") ? j["terms"] : empty;
  const json& dj = j.contains("differentials") ? j["differentials"] : empty;
  if (!tj.is_object()) c.at("terms").fail("expected an object keyed by degree");
  if (!dj.is_object()) c.at("differentials").fail("expected an object keyed by degree");
  for (auto it = tj.begin(); it != tj.end(); ++it) {
    int n = detail::degree_key(it.key(), c.at("terms").at(it.key()));
    if (n < lo || n > hi) c.at("terms").at(it.key()).fail("degree outside [lo, hi]");
  }
  for (auto it = dj.begin(); it != dj.end(); ++it) {
    int n = detail::degree_key(it.key(), c.at("differentials").at(it.key()));
    if (n <= lo || n > hi) c.at("differentials").at(it.key()).fail("differential degree outside (lo, hi]");
  }
  std::vector<Representation> terms;
  for (int n = lo; n <= hi; ++n) {
    auto it = tj.find(std::to_string(n));
    terms.push_back(it == tj.end() ? Representation::zero(alg)
                                   : parse_module(*it, alg, file, "/terms/" + std::to_string(n)));
  }
  std::vector<ModuleMap> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    const auto& s = terms[n - lo];
    const auto& t = terms[n - lo - 1];
    auto it = dj.find(std::to_string(n));
    if (it == dj.end())
      diffs.push_back(ModuleMap::zero(s, t));
    else
      diffs.push_back(parse_map(*it, s, t, c.at("differentials").at(std::to_string(n))));
  }
  try {
    return build_complex(alg, lo, std::move(terms), std::move(diffs));
  } catch (const NotAComplex& e) {
    c.at("differentials").at(std::to_string(e.degree)).fail(e.what());
  }
}

inline json complex_to_json(const ChainComplex& x) {
  json j;
  if (x.is_zero()) {
    j["lo"] = 0;
    j["hi"] = -1;
    j["terms"] = json::object();
    j["differentials"] = json::object();
    return j;
  }
  ChainComplex t = x.trimmed();
  j["lo"] = t.lo();
  j["hi"] = t.hi();
  json terms = json::object(), diffs = json::object();
  for (int n = t.lo(); n <= t.hi(); ++n) {
    terms[std::to_string(n)] = module_to_json(t.term(n));
    if (n > t.lo()) diffs[std::to_string(n)] = map_to_json(t.differential(n));
  }
  j["terms"] = terms;
  j["differentials"] = diffs;
  return j;
}

// ---------------------------------------------------------------------------
// Verdicts

inline json ext_int_to_json(const ExtInt& v) {
  if (v.is_neg_inf()) return "-inf";
  if (v.is_pos_inf()) return "+inf";
  return v.value;
}

inline json ext_entry_to_json(const ExtEntry& e) {
  return {{"vertex", e.vertex},
          {"degree", e.witness.degree},
          {"dim", e.witness.dim},
          {"incoming", matrix_to_json(e.witness.incoming)},
          {"outgoing", matrix_to_json(e.witness.outgoing)}};
}

inline json cycle_to_json(const SyzygyCycle& c) {
  return {{"j", c.j}, {"k", c.k}, {"iso", map_to_json(c.iso)}};
}

inline json side_to_json(const SideCertificate& s) {
  json j;
  if (s.self_injective) {
    j["self_injective"] = {{"iso", map_to_json(s.self_injective->iso)}};
    return j;
  }
  if (s.cycle) j["cycle"] = cycle_to_json(*s.cycle);
  json ext = json::array();
  for (const auto& e : s.ext) ext.push_back(ext_entry_to_json(e));
  j["ext"] = ext;
  return j;
}

inline json certificate_to_json(const DpCertificate& c) {
  json j;
  j["projective"] = c.projective;
  if (c.projective) return j;
  j["reflexivity"] = map_to_json(c.reflexivity);
  j["left"] = side_to_json(c.left);
  j["right"] = side_to_json(c.right);
  return j;
}

inline json obstruction_to_json(const Obstruction& o) {
  json j;
  j["kind"] = o.kind == Obstruction::Kind::Ext ? "ext" : "reflexivity";
  if (o.kind == Obstruction::Kind::Ext) {
    j["side"] = o.right_side ? "right" : "left";
    j["degree"] = o.degree;
    j["syzygy_shift"] = o.shift;
    json ext = json::array();
    for (const auto& e : o.ext) ext.push_back(ext_entry_to_json(e));
    j["ext"] = ext;
  }
  return j;
}

inline json dp_verdict_to_json(const DpVerdict& v) {
  json j;
  j["answer"] = to_string(v.answer);
  j["certificate"] = v.certificate ? certificate_to_json(*v.certificate) : json(nullptr);
  j["obstruction"] = v.obstruction ? obstruction_to_json(*v.obstruction) : json(nullptr);
  return j;
}

inline json dpd_verdict_to_json(const DpdVerdict& v) {
  json j;
  if (v.undetermined)
    j["value"] = {{"undetermined_geq", v.lower_bound}};
  else
    j["value"] = ext_int_to_json(v.value);
  json cert;
  if (v.undetermined) {
    cert["kind"] = "window";
    json scan = json::array();
    for (auto a : v.scan) scan.push_back(to_string(a));
    cert["scan"] = scan;
  } else if (v.value.is_neg_inf()) {
    cert["kind"] = "exact";
  } else if (v.value.is_pos_inf()) {
    cert["kind"] = "syzygy_cycle";
    if (v.infinity_cycle) cert["cycle"] = cycle_to_json(*v.infinity_cycle);
    json obs = json::array();
    for (const auto& o : v.infinity_obstructions) obs.push_back(obstruction_to_json(o));
    cert["obstructions"] = obs;
  } else {
    cert["kind"] = "ding_projective";
    cert["degree"] = v.degree;
    if (v.certified_module) cert["module"] = module_to_json(*v.certified_module);
    if (v.certificate) cert["data"] = certificate_to_json(*v.certificate);
  }
  j["certificate"] = cert;
  j["witness_complex"] = v.witness ? complex_to_json(*v.witness) : json(nullptr);
  return j;
}

inline json profile_to_json(const HomologyProfile& hp) {
  json j;
  json groups = json::object();
  for (std::size_t i = 0; i < hp.groups.size(); ++i)
    if (!hp.groups[i].is_zero()) groups[std::to_string(hp.lo + static_cast<int>(i))] = module_to_json(hp.groups[i]);
  j["homology"] = groups;
  j["hsup"] = ext_int_to_json(hp.hsup);
  j["hinf"] = ext_int_to_json(hp.hinf);
  return j;
}

inline json ta_report_to_json(const TaReport& r) {
  json j;
  j["from"] = r.from;
  j["to"] = r.to;
  j["pass"] = r.pass();
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e = {{"kind", c.kind}, {"degree", c.degree}, {"pass", c.pass}};
    if (c.vertex >= 0) e["vertex"] = c.vertex;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace dpd::io
