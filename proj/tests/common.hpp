#pragma once

#include <cstdint>

#include "surfinv/linsys.hpp"
#include "surfinv/mpoly.hpp"
#include "surfinv/parse.hpp"
#include "surfinv/piclattice.hpp"

namespace testutil {

using namespace surfinv;

/// Field of the worked example: r^2 + 1496/675 r + 10976/625 = 0.
inline FieldPtr example_field() {
  static FieldPtr f = NumberField::make(
      {Rational::parse("10976/625"), Rational::parse("1496/675"), Rational(1)}, "r");
  return f;
}

inline VarsPtr xy_vars() {
  static VarsPtr v = make_vars({"x", "y"});
  return v;
}

/// splitmix64: tiny deterministic generator for property tests.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  /// uniform in [lo, hi]
  long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
  Rational rational(long max_abs = 20, long max_den = 7) {
    long n = range(-max_abs, max_abs);
    long d = range(1, max_den);
    return Rational(n, d);
  }
  NFElem nf(const FieldPtr& ctx) {
    std::vector<Rational> c(ctx->degree());
    for (auto& x : c) x = rational();
    return NFElem(ctx, std::move(c));
  }
};

inline NFElem nf2(const char* c0, const char* c1) {
  return NFElem(example_field(), {Rational::parse(c0), Rational::parse(c1)});
}

/// Base points p0..p3 of the worked example.
inline std::vector<std::pair<NFElem, NFElem>> example_points() {
  return {{NFElem(0L), NFElem(0L)},
          {NFElem(0L), NFElem(1L)},
          {NFElem(1L), NFElem(0L)},
          {NFElem(1L), NFElem(1L)}};
}

/// Solved tangent-direction arrays per point.
inline std::vector<std::vector<BlowupDirection>> example_directions() {
  return {
      {},
      {{NFElem(0L), NFElem(1L)}},
      {{NFElem(1L), NFElem(0L)},
       {NFElem(1L), nf2("443/2745", "15/61")},
       {NFElem(1L), nf2("-10802/24705", "35/366")}},
      {{NFElem(1L), nf2("-1171/2135", "-405/1708")},
       {NFElem(1L), nf2("-23559/59780", "-21465/95648")}},
  };
}

inline SingularityChain chain_at(int point, const std::vector<int>& mults) {
  auto pts = example_points();
  auto dirs = example_directions();
  SingularityChain c;
  c.base_point = pts[point];
  c.mults = mults;
  if (mults.size() > 1)
    c.directions.assign(dirs[point].begin(), dirs[point].begin() + (mults.size() - 1));
  return c;
}

/// Imposes one appendix-style configuration (four chains) on degree d.
inline PlaneSystem example_system(int d, const std::vector<std::vector<int>>& mult_rows) {
  PlaneSystem sys = PlaneSystem::generic(d, example_field());
  for (int i = 0; i < 4; ++i) sys = sys.imposed(chain_at(i, mult_rows[i]));
  return sys;
}

inline const std::vector<std::vector<int>> kM5{{1}, {2, 2}, {2, 2, 2, 2}, {1, 1, 1}};
inline const std::vector<std::vector<int>> kM6{{2}, {2, 2}, {2, 2, 1, 1}, {3, 2, 2}};

/// Basis order E0; E1,E1'; E2,E2',E2'',E2'''; E3,E3',E3''.
inline BlowupLattice example_lattice() {
  return BlowupLattice::plane(std::vector<std::string>{"E0", "E1", "E1p", "E2", "E2p", "E2pp",
                                                       "E2ppp", "E3", "E3p", "E3pp"});
}

inline BlowupGeometry example_geometry() {
  BlowupGeometry g;
  g.ctx = example_field();
  g.points = example_points();
  g.directions = example_directions();
  g.groups = {{0}, {1, 2}, {3, 4, 5, 6}, {7, 8, 9}};
  return g;
}

inline DivClass cls(long long d, std::vector<long long> m) { return DivClass(d, std::move(m)); }

inline DivClass D1() { return cls(5, {1, 2, 2, 2, 2, 2, 2, 1, 1, 1}); }
inline DivClass D2() { return cls(1, {1, 0, 2, 0, 0, 0, 0, -1, 1, -1}); }
inline DivClass D3() { return cls(7, {3, 2, 2, 2, 4, 0, 2, 3, 1, 3}); }
inline DivClass L1() { return cls(4, {2, 1, 2, 1, 2, 0, 1, 1, 1, 1}); }
inline DivClass L2() { return cls(6, {2, 2, 2, 2, 3, 1, 2, 2, 1, 2}); }
inline DivClass L3() { return cls(3, {1, 1, 2, 1, 1, 1, 1, 0, 1, 0}); }

}  // namespace testutil
