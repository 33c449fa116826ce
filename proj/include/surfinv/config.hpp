#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "surfinv/covers.hpp"
#include "surfinv/piclattice.hpp"

namespace surfinv {

using Json = nlohmann::ordered_json;

/// Schema or invariant violation, carrying a JSON-pointer-style path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& msg)
      : std::runtime_error(path + ": " + msg) {}
};

struct H0Target {
  std::string name;
  int k_coeff = 0;
  std::map<std::string, int> l_coeffs;  // L-class name -> coefficient
};

struct CurveSpec {
  int degree = 0;
  std::vector<std::vector<int>> chains;  // one multiplicity row per base point
};

/// Everything needed to rerun the worked example: the field, the blow-up
/// geometry, the divisor-class tables, the two curve specifications and the
/// named h0 targets.
struct ExampleConfig {
  FieldPtr field;
  BlowupGeometry geometry;
  BlowupLattice lattice;
  std::map<std::string, DivClass> classes;
  std::map<std::string, CurveSpec> curves;
  std::vector<H0Target> h0_targets;

  DivClass target_class(const H0Target& t) const {
    DivClass acc = canonical(lattice).scaled(t.k_coeff);
    for (const auto& [name, c] : t.l_coeffs) {
      auto it = classes.find(name);
      if (it == classes.end())
        throw ConfigError("/h0_targets", "unknown class '" + name + "'");
      acc = acc + it->second.scaled(c);
    }
    return acc;
  }

  SingularityChain curve_chain(const CurveSpec& spec, size_t point) const {
    SingularityChain c;
    c.base_point = geometry.points[point];
    c.mults = spec.chains[point];
    if (c.mults.size() > 1)
      c.directions.assign(geometry.directions[point].begin(),
                          geometry.directions[point].begin() + (c.mults.size() - 1));
    return c;
  }
};

namespace detail {

inline Rational parse_rational_str(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a rational string \"p/q\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

inline NFElem parse_nf(const Json& j, const FieldPtr& ctx, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw ConfigError(path, "expected an array of rational strings (ascending powers)");
  int deg = ctx ? ctx->degree() : 1;
  if (static_cast<int>(j.size()) > deg)
    throw ConfigError(path, "element has degree " + std::to_string(j.size() - 1) +
                                ", outside the declared field of degree " + std::to_string(deg));
  std::vector<Rational> c(deg);
  for (size_t i = 0; i < j.size(); ++i)
    c[i] = parse_rational_str(j[i], path + "/" + std::to_string(i));
  if (deg == 1) return NFElem(c[0]);
  return NFElem(ctx, std::move(c));
}

inline DivClass parse_class(const Json& j, int n, const std::string& path) {
  if (!j.is_object() || !j.contains("deg") || !j.contains("mults"))
    throw ConfigError(path, "expected {\"deg\": d, \"mults\": [...]}");
  if (!j["deg"].is_number_integer()) throw ConfigError(path + "/deg", "expected an integer");
  const Json& m = j["mults"];
  if (!m.is_array() || static_cast<int>(m.size()) != n)
    throw ConfigError(path + "/mults", "expected " + std::to_string(n) + " integers");
  DivClass d;
  d.deg = j["deg"].get<long long>();
  for (size_t i = 0; i < m.size(); ++i) {
    if (!m[i].is_number_integer())
      throw ConfigError(path + "/mults/" + std::to_string(i), "expected an integer");
    d.mults.push_back(m[i].get<long long>());
  }
  return d;
}

}  // namespace detail

inline ExampleConfig parse_config(const Json& j) {
  ExampleConfig cfg;

  // field
  if (!j.contains("field") || !j["field"].is_object())
    throw ConfigError("/field", "missing field definition");
  const Json& jf = j["field"];
  if (!jf.contains("min_poly") || !jf["min_poly"].is_array() || jf["min_poly"].size() < 2)
    throw ConfigError("/field/min_poly", "expected coefficients (ascending, monic) of degree >= 1");
  std::vector<Rational> mp;
  for (size_t i = 0; i < jf["min_poly"].size(); ++i)
    mp.push_back(detail::parse_rational_str(jf["min_poly"][i], "/field/min_poly/" +
                                                                   std::to_string(i)));
  if (!mp.back().is_one()) throw ConfigError("/field/min_poly", "minimal polynomial must be monic");
  std::string gen = jf.value("generator", "r");
  if (mp.size() == 2 && mp[0].is_zero()) {
    cfg.field = nullptr;  // min poly x: plain rationals
  } else {
    cfg.field = NumberField::make(mp, gen);
  }

  // points
  if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
    throw ConfigError("/points", "expected a nonempty array of 2-arrays");
  for (size_t p = 0; p < j["points"].size(); ++p) {
    const Json& jp = j["points"][p];
    std::string path = "/points/" + std::to_string(p);
    if (!jp.is_array() || jp.size() != 2) throw ConfigError(path, "expected a 2-array");
    cfg.geometry.points.push_back({detail::parse_nf(jp[0], cfg.field, path + "/0"),
                                   detail::parse_nf(jp[1], cfg.field, path + "/1")});
  }
  const size_t npoints = cfg.geometry.points.size();

  // directions
  if (!j.contains("directions") || !j["directions"].is_array() ||
      j["directions"].size() != npoints)
    throw ConfigError("/directions", "expected one direction list per base point");
  for (size_t p = 0; p < npoints; ++p) {
    std::vector<BlowupDirection> dirs;
    const Json& jd = j["directions"][p];
    std::string path = "/directions/" + std::to_string(p);
    if (!jd.is_array()) throw ConfigError(path, "expected an array of (u,v) pairs");
    for (size_t k = 0; k < jd.size(); ++k) {
      const Json& pair = jd[k];
      std::string ppath = path + "/" + std::to_string(k);
      if (!pair.is_array() || pair.size() != 2) throw ConfigError(ppath, "expected a (u,v) pair");
      BlowupDirection d{detail::parse_nf(pair[0], cfg.field, ppath + "/0"),
                        detail::parse_nf(pair[1], cfg.field, ppath + "/1")};
      if (d.u.is_zero() && d.v.is_zero()) throw ConfigError(ppath, "direction must be nonzero");
      dirs.push_back(std::move(d));
    }
    cfg.geometry.directions.push_back(std::move(dirs));
  }

  // exceptional groups
  if (!j.contains("exceptional_groups") || !j["exceptional_groups"].is_array() ||
      j["exceptional_groups"].size() != npoints)
    throw ConfigError("/exceptional_groups", "expected one label group per base point");
  int idx = 0;
  for (size_t p = 0; p < npoints; ++p) {
    const Json& jg = j["exceptional_groups"][p];
    std::string path = "/exceptional_groups/" + std::to_string(p);
    if (!jg.is_array() || jg.empty()) throw ConfigError(path, "expected a nonempty label array");
    if (cfg.geometry.directions[p].size() + 1 != jg.size())
      throw ConfigError(path, "chain of length " + std::to_string(jg.size()) + " needs " +
                                  std::to_string(jg.size() - 1) + " directions, got " +
                                  std::to_string(cfg.geometry.directions[p].size()));
    std::vector<int> grp;
    for (size_t k = 0; k < jg.size(); ++k) {
      if (!jg[k].is_string())
        throw ConfigError(path + "/" + std::to_string(k), "expected a label string");
      cfg.lattice.labels.push_back(jg[k].get<std::string>());
      grp.push_back(idx++);
    }
    cfg.geometry.groups.push_back(std::move(grp));
  }
  cfg.lattice.n = idx;
  cfg.geometry.ctx = cfg.field;
  cfg.geometry.validate();

  // divisor classes
  if (!j.contains("classes") || !j["classes"].is_object())
    throw ConfigError("/classes", "expected the D/L class tables");
  for (const auto& [name, jc] : j["classes"].items())
    cfg.classes.emplace(name, detail::parse_class(jc, cfg.lattice.n, "/classes/" + name));
  for (const char* need : {"D1", "D2", "D3", "L1", "L2", "L3"})
    if (!cfg.classes.count(need)) throw ConfigError("/classes", std::string("missing ") + need);

  // parity invariant 2L_g = D_j + D_k, named failure
  {
    BidoubleCoverData b;
    b.L1 = cfg.classes.at("L1");
    b.L2 = cfg.classes.at("L2");
    b.L3 = cfg.classes.at("L3");
    b.D1 = cfg.classes.at("D1");
    b.D2 = cfg.classes.at("D2");
    b.D3 = cfg.classes.at("D3");
    try {
      b.validate();
    } catch (const std::domain_error& e) {
      throw ConfigError("/classes", e.what());
    }
  }

  // curves
  if (!j.contains("curves") || !j["curves"].is_object())
    throw ConfigError("/curves", "expected curve specifications");
  for (const auto& [name, jc] : j["curves"].items()) {
    std::string path = "/curves/" + name;
    if (!jc.is_object() || !jc.contains("degree") || !jc.contains("mults"))
      throw ConfigError(path, "expected {\"degree\": d, \"mults\": [[...], ...]}");
    CurveSpec spec;
    spec.degree = jc["degree"].get<int>();
    if (spec.degree < 0) throw ConfigError(path + "/degree", "negative degree");
    const Json& jm = jc["mults"];
    if (!jm.is_array() || jm.size() != npoints)
      throw ConfigError(path + "/mults", "expected one multiplicity row per base point");
    for (size_t p = 0; p < npoints; ++p) {
      const Json& row = jm[p];
      std::string rpath = path + "/mults/" + std::to_string(p);
      if (!row.is_array() || row.size() != cfg.geometry.groups[p].size())
        throw ConfigError(rpath, "expected " + std::to_string(cfg.geometry.groups[p].size()) +
                                     " entries (the chain length at this point)");
      std::vector<int> mults;
      for (size_t k = 0; k < row.size(); ++k) {
        if (!row[k].is_number_integer() || row[k].get<int>() < 0)
          throw ConfigError(rpath + "/" + std::to_string(k), "expected a non-negative integer");
        mults.push_back(row[k].get<int>());
      }
      spec.chains.push_back(std::move(mults));
    }
    cfg.curves.emplace(name, std::move(spec));
  }
  for (const char* need : {"C5", "C6"})
    if (!cfg.curves.count(need)) throw ConfigError("/curves", std::string("missing ") + need);

  // named h0 targets
  if (j.contains("h0_targets")) {
    if (!j["h0_targets"].is_array()) throw ConfigError("/h0_targets", "expected an array");
    for (size_t i = 0; i < j["h0_targets"].size(); ++i) {
      const Json& jt = j["h0_targets"][i];
      std::string path = "/h0_targets/" + std::to_string(i);
      if (!jt.is_object() || !jt.contains("name"))
        throw ConfigError(path, "expected {\"name\", \"K\", \"L\"}");
      H0Target t;
      t.name = jt["name"].get<std::string>();
      t.k_coeff = jt.value("K", 0);
      if (jt.contains("L")) {
        for (const auto& [lname, c] : jt["L"].items()) {
          if (!cfg.classes.count(lname))
            throw ConfigError(path + "/L", "unknown class '" + lname + "'");
          t.l_coeffs[lname] = c.get<int>();
        }
      }
      cfg.h0_targets.push_back(std::move(t));
    }
  }
  return cfg;
}

inline ExampleConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("/", "cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError("/", std::string("JSON parse error: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace surfinv
