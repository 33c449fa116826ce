#pragma once

#include <memory>
#include <string>
#include <vector>

#include "surfinv/linsys.hpp"

namespace surfinv {

/// Picard lattice of a blow-up of the plane: basis (T, E_1..E_n) with the
/// diagonal pairing (1, -1, ..., -1).
struct BlowupLattice {
  int n = 0;
  std::vector<std::string> labels;  // E labels, size n

  static BlowupLattice plane(int n) {
    BlowupLattice lat;
    lat.n = n;
    for (int i = 1; i <= n; ++i) lat.labels.push_back("E" + std::to_string(i));
    return lat;
  }
  static BlowupLattice plane(std::vector<std::string> labels) {
    BlowupLattice lat;
    lat.n = static_cast<int>(labels.size());
    lat.labels = std::move(labels);
    return lat;
  }
};

/// Integer divisor class d*T - sum mults[i]*E_i in the orthogonal
/// (total-transform) basis.
struct DivClass {
  long long deg = 0;
  std::vector<long long> mults;

  DivClass() = default;
  DivClass(long long d, std::vector<long long> m) : deg(d), mults(std::move(m)) {}

  friend DivClass operator+(const DivClass& a, const DivClass& b) {
    check(a, b);
    DivClass r = a;
    for (size_t i = 0; i < r.mults.size(); ++i) r.mults[i] += b.mults[i];
    r.deg += b.deg;
    return r;
  }
  friend DivClass operator-(const DivClass& a, const DivClass& b) {
    check(a, b);
    DivClass r = a;
    for (size_t i = 0; i < r.mults.size(); ++i) r.mults[i] -= b.mults[i];
    r.deg -= b.deg;
    return r;
  }
  DivClass scaled(long long k) const {
    DivClass r = *this;
    r.deg *= k;
    for (auto& m : r.mults) m *= k;
    return r;
  }
  friend bool operator==(const DivClass& a, const DivClass& b) {
    return a.deg == b.deg && a.mults == b.mults;
  }
  bool is_zero() const {
    if (deg != 0) return false;
    for (long long m : mults)
      if (m != 0) return false;
    return true;
  }

  static void check(const DivClass& a, const DivClass& b) {
    if (a.mults.size() != b.mults.size())
      throw std::invalid_argument("DivClass: lattice mismatch");
  }

  std::string str(const BlowupLattice& lat) const {
    std::string s = std::to_string(deg) + "T";
    for (size_t i = 0; i < mults.size(); ++i) {
      if (mults[i] == 0) continue;
      long long c = -mults[i];
      s += (c > 0 ? "+" : "-");
      if (std::abs(c) != 1) s += std::to_string(std::abs(c));
      s += lat.labels[i];
    }
    return s;
  }
};

/// d*d' - sum m_i m_i'
inline long long pair_product(const DivClass& a, const DivClass& b) {
  DivClass::check(a, b);
  long long s = a.deg * b.deg;
  for (size_t i = 0; i < a.mults.size(); ++i) s -= a.mults[i] * b.mults[i];
  return s;
}

/// K = -3T + sum E_i for blow-ups of the plane.
inline DivClass canonical(const BlowupLattice& lat) {
  return DivClass(-3, std::vector<long long>(lat.n, -1));
}

/// D(D+K)/2 + 1; throws when the division is not exact (invalid class).
inline long long arithmetic_genus(const DivClass& d, const BlowupLattice& lat) {
  long long num = pair_product(d, d + canonical(lat));
  if (num % 2 != 0) throw std::domain_error("arithmetic_genus: D(D+K) odd, invalid class");
  return num / 2 + 1;
}

/// Blow-up chain structure: base points, directions and the grouping of the
/// exceptional basis by base point (chain order within each group).
struct BlowupGeometry {
  FieldPtr ctx;
  std::vector<std::pair<NFElem, NFElem>> points;
  std::vector<std::vector<BlowupDirection>> directions;  // per point
  std::vector<std::vector<int>> groups;                  // E-basis indices per point

  int total_exceptional() const {
    int n = 0;
    for (const auto& g : groups) n += static_cast<int>(g.size());
    return n;
  }
  void validate() const {
    if (points.size() != groups.size() || points.size() != directions.size())
      throw std::invalid_argument("BlowupGeometry: points/groups/directions size mismatch");
    for (size_t i = 0; i < groups.size(); ++i) {
      if (groups[i].empty()) throw std::invalid_argument("BlowupGeometry: empty chain group");
      if (directions[i].size() + 1 < groups[i].size())
        throw std::invalid_argument("BlowupGeometry: not enough directions for chain length");
    }
  }
};

struct TruncationEvent {
  int point = 0;
  int level = 0;  // 0-based within the chain
  std::string e_label;
  std::string action;  // "clamped" or "truncated"
};

struct PlaneSpec {
  long long degree = 0;
  std::vector<std::vector<int>> chains;  // one per base point
  std::vector<TruncationEvent> report;
};

/// Translates a divisor class into a plane linear-system specification:
/// positive multiplicities are copied, a negative multiplicity is clamped to 0
/// and the remainder of that chain is truncated to 0 (every such event is
/// reported), zero multiplicities pass through.
inline PlaneSpec class_to_plane_spec(const DivClass& d, const BlowupGeometry& geom,
                                     const BlowupLattice& lat) {
  geom.validate();
  if (static_cast<int>(d.mults.size()) != geom.total_exceptional())
    throw std::invalid_argument("class_to_plane_spec: class size does not match geometry");
  PlaneSpec spec;
  spec.degree = d.deg;
  for (size_t p = 0; p < geom.groups.size(); ++p) {
    std::vector<int> chain;
    bool truncated = false;
    for (size_t lvl = 0; lvl < geom.groups[p].size(); ++lvl) {
      int idx = geom.groups[p][lvl];
      long long m = d.mults[idx];
      if (truncated) {
        if (m != 0)
          spec.report.push_back({static_cast<int>(p), static_cast<int>(lvl), lat.labels[idx],
                                 "truncated"});
        chain.push_back(0);
        continue;
      }
      if (m < 0) {
        spec.report.push_back(
            {static_cast<int>(p), static_cast<int>(lvl), lat.labels[idx], "clamped"});
        chain.push_back(0);
        truncated = true;
      } else {
        chain.push_back(static_cast<int>(m));
      }
    }
    spec.chains.push_back(std::move(chain));
  }
  return spec;
}

/// h^0 of the translated plane system; 0 immediately for negative degree.
inline int h0(const DivClass& d, const BlowupGeometry& geom, const BlowupLattice& lat,
              std::vector<TruncationEvent>* report = nullptr) {
  if (d.deg < 0) return 0;
  PlaneSpec spec = class_to_plane_spec(d, geom, lat);
  if (report)
    report->insert(report->end(), spec.report.begin(), spec.report.end());
  PlaneSystem sys = PlaneSystem::generic(static_cast<int>(spec.degree), geom.ctx);
  for (size_t p = 0; p < spec.chains.size(); ++p) {
    bool all_zero = true;
    for (int m : spec.chains[p]) all_zero &= (m == 0);
    if (all_zero) continue;
    SingularityChain chain;
    chain.base_point = geom.points[p];
    chain.mults = spec.chains[p];
    chain.directions.assign(geom.directions[p].begin(),
                            geom.directions[p].begin() + (spec.chains[p].size() - 1));
    sys = sys.imposed(chain);
  }
  return sys.dimension();
}

/// The translated system itself (for callers that need sections too).
inline PlaneSystem class_system(const DivClass& d, const BlowupGeometry& geom,
                                const BlowupLattice& lat) {
  if (d.deg < 0) throw std::invalid_argument("class_system: negative degree has no sections");
  PlaneSpec spec = class_to_plane_spec(d, geom, lat);
  PlaneSystem sys = PlaneSystem::generic(static_cast<int>(spec.degree), geom.ctx);
  for (size_t p = 0; p < spec.chains.size(); ++p) {
    bool all_zero = true;
    for (int m : spec.chains[p]) all_zero &= (m == 0);
    if (all_zero) continue;
    SingularityChain chain;
    chain.base_point = geom.points[p];
    chain.mults = spec.chains[p];
    chain.directions.assign(geom.directions[p].begin(),
                            geom.directions[p].begin() + (spec.chains[p].size() - 1));
    sys = sys.imposed(chain);
  }
  return sys;
}

}  // namespace surfinv
