#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "surfinv/piclattice.hpp"

namespace surfinv {

enum class Kodaira { MinusInfinity, Zero, One, Two, Unknown };

inline std::string kodaira_str(Kodaira k) {
  switch (k) {
    case Kodaira::MinusInfinity: return "-inf";
    case Kodaira::Zero: return "0";
    case Kodaira::One: return "1";
    case Kodaira::Two: return "2";
    default: return "unknown";
  }
}

struct InvariantSet {
  long long p_g = 0;
  long long q = 0;
  long long chi = 0;
  std::optional<long long> K_sq;
  Kodaira kodaira = Kodaira::Unknown;

  void validate() const {
    if (chi != 1 - q + p_g) throw std::domain_error("InvariantSet: chi != 1 - q + p_g");
  }
};

/// Numeric data of a smooth double cover branched over B = 2L on W. The
/// h1(K_W+L) term is never computed by the pipeline (q is derived from chi and
/// p_g instead); the field stays present so callers can record it when known.
struct DoubleCoverData {
  long long chi_W = 0;
  long long pg_W = 0;
  long long q_W = 0;
  long long L_K_plus_L = 0;  // L(K_W + L)
  long long h0_K_plus_L = 0;
  std::optional<long long> h1_K_plus_L;  // usually unavailable
  std::optional<long long> K_plus_L_sq;  // (K_W + L)^2, for K_V^2 = 2(K_W+L)^2
  std::optional<long long> K_S_sq;       // minimal model, for the t cross-check
  std::optional<long long> t;            // isolated fixed points

  void validate() const {
    if (t && *t < 0) throw std::invalid_argument("DoubleCoverData: t < 0");
    if (chi_W != 1 - q_W + pg_W)
      throw std::invalid_argument("DoubleCoverData: chi(O_W) != 1 - q + p_g");
  }
};

/// Invariants of the covering surface: p_g = p_g(W) + h0(K_W+L),
/// chi = 2 chi(W) + L(K_W+L)/2, q derived from chi = 1 - q + p_g,
/// K_V^2 = 2 (K_W+L)^2 when that square is supplied.
inline InvariantSet double_cover_invariants(const DoubleCoverData& d) {
  d.validate();
  if (d.L_K_plus_L % 2 != 0)
    throw std::domain_error("double_cover_invariants: L(K_W+L) odd, chi not integral");
  InvariantSet s;
  s.chi = 2 * d.chi_W + d.L_K_plus_L / 2;
  s.p_g = d.pg_W + d.h0_K_plus_L;
  if (d.h1_K_plus_L) {
    s.q = d.q_W + *d.h1_K_plus_L;
    if (s.chi != 1 - s.q + s.p_g)
      throw std::domain_error("double_cover_invariants: supplied h1 contradicts chi");
  } else {
    s.q = 1 + s.p_g - s.chi;
  }
  if (d.K_plus_L_sq) {
    s.K_sq = 2 * *d.K_plus_L_sq;
    if (d.K_S_sq && d.t && *d.K_S_sq - *s.K_sq != *d.t)
      throw std::domain_error("double_cover_invariants: t != K_S^2 - K_V^2");
  }
  if (s.q < 0) throw std::domain_error("double_cover_invariants: derived q is negative");
  s.validate();
  return s;
}

struct BidoubleCoverData {
  DivClass L1, L2, L3;
  DivClass D1, D2, D3;
  long long chi_X = 1;
  long long pg_X = 0;

  /// 2L_g = D_j + D_k for every permutation; throws naming the first failure.
  void validate() const {
    const DivClass* L[3] = {&L1, &L2, &L3};
    const DivClass* D[3] = {&D1, &D2, &D3};
    const int perms[3][3] = {{0, 1, 2}, {1, 0, 2}, {2, 0, 1}};
    for (const auto& p : perms) {
      DivClass lhs = L[p[0]]->scaled(2);
      DivClass rhs = *D[p[1]] + *D[p[2]];
      if (!(lhs == rhs))
        throw std::domain_error("bidouble parity violated: 2L" + std::to_string(p[0] + 1) +
                                " != D" + std::to_string(p[1] + 1) + "+D" +
                                std::to_string(p[2] + 1));
    }
  }
};

/// chi = 4 chi(X) + (1/2) sum L_i(K_X+L_i); p_g = p_g(X) + sum h0(K_X+L_i);
/// q derived. h0_k_plus_l holds the three h0(K_X+L_i) values.
inline InvariantSet bidouble_invariants(const BidoubleCoverData& b, const BlowupLattice& lat,
                                        const std::vector<long long>& h0_k_plus_l) {
  b.validate();
  if (h0_k_plus_l.size() != 3)
    throw std::invalid_argument("bidouble_invariants: need the three h0(K+L_i) values");
  DivClass K = canonical(lat);
  long long twice = 0;
  const DivClass* L[3] = {&b.L1, &b.L2, &b.L3};
  for (int i = 0; i < 3; ++i) twice += pair_product(*L[i], K + *L[i]);
  if (twice % 2 != 0) throw std::domain_error("bidouble_invariants: sum L_i(K+L_i) odd");
  InvariantSet s;
  s.chi = 4 * b.chi_X + twice / 2;
  s.p_g = b.pg_X;
  for (long long h : h0_k_plus_l) s.p_g += h;
  s.q = 1 + s.p_g - s.chi;
  if (s.q < 0) throw std::domain_error("bidouble_invariants: derived q is negative");
  s.validate();
  return s;
}

/// The bicanonical map is composed with the involution exactly when both
/// h0(2K_X + L_g + L_j) and h0(2K_X + L_g + L_k) vanish.
inline bool bicanonical_composed(long long h0_a, long long h0_b) {
  if (h0_a < 0 || h0_b < 0) throw std::invalid_argument("bicanonical_composed: negative h0");
  return h0_a == 0 && h0_b == 0;
}

enum class CoverKind { Double, Bidouble };

/// Genus of the pullback of a fibration of genus g_base meeting the branch
/// divisor in branch_count points (transverse). Double: 2g-2 = 2(2g_b-2)+bc;
/// bidouble over a totally split rational fibre: 2g-2 = 4(2g_b-2)+2bc.
inline long long pullback_fibre_genus(long long g_base, long long branch_count, CoverKind kind) {
  if (branch_count < 0 || branch_count % 2 != 0)
    throw std::invalid_argument("pullback_fibre_genus: branch count must be even and >= 0");
  long long two_g_minus_2;
  if (kind == CoverKind::Double)
    two_g_minus_2 = 2 * (2 * g_base - 2) + branch_count;
  else
    two_g_minus_2 = 4 * (2 * g_base - 2) + 2 * branch_count;
  return two_g_minus_2 / 2 + 1;
}

struct RuleFiring {
  std::string rule;
  std::string source;  // "computed" or "paper-cited"
};

struct KodairaVerdict {
  Kodaira kodaira = Kodaira::Unknown;
  std::vector<RuleFiring> log;
};

struct KodairaFlags {
  bool rational_fibration = false;
};

/// Transparent rule chain for the chi=1, p_g=q=0 context. P6 may be a lower
/// bound (the pipeline only computes one of its summands).
inline KodairaVerdict kodaira_rules(const InvariantSet& inv, long long P2, long long P6,
                                    const KodairaFlags& flags) {
  inv.validate();
  if (inv.chi != 1 || inv.p_g != 0 || inv.q != 0)
    throw std::invalid_argument("kodaira_rules: rules assume chi=1, p_g=q=0");
  KodairaVerdict v;
  bool kod_ge_1 = false, not_general_type = false;
  if (P6 >= 2) {
    kod_ge_1 = true;
    v.log.push_back({"P6 >= 2 implies Kod >= 1", "computed"});
  }
  if (P2 == 1) {
    not_general_type = true;
    v.log.push_back({"P2 = 1 excludes general type", "paper-cited"});
  }
  if (kod_ge_1 && flags.rational_fibration)
    throw std::domain_error("kodaira_rules: contradictory rules (P6 >= 2 and rational fibration)");
  if (kod_ge_1 && not_general_type) {
    v.kodaira = Kodaira::One;
    v.log.push_back({"Kod >= 1 and not general type give Kod = 1", "computed"});
    return v;
  }
  if (flags.rational_fibration && inv.q == 0) {
    v.kodaira = Kodaira::MinusInfinity;
    v.log.push_back({"rational fibration with q = 0 gives a rational surface", "computed"});
    return v;
  }
  if (P2 == 0 && P6 == 0) {
    v.kodaira = Kodaira::MinusInfinity;
    v.log.push_back({"all supplied plurigenera vanish", "computed"});
    return v;
  }
  v.log.push_back({"no rule applies", "computed"});
  return v;
}

struct Ks2Result {
  long long K_sq = 0;
  bool general_type = true;
};

/// K^2 = h0(2K) - 1 for a minimal surface of general type with chi = 1.
inline Ks2Result ks2_from_bicanonical(long long h0_2K, long long lower_bound) {
  if (h0_2K < 1) throw std::invalid_argument("ks2_from_bicanonical: h0(2K) must be >= 1");
  Ks2Result r;
  r.K_sq = h0_2K - 1;
  if (r.K_sq < lower_bound)
    throw std::domain_error("ks2_from_bicanonical: K^2 below the geometric lower bound");
  r.general_type = r.K_sq >= 1;
  return r;
}

}  // namespace surfinv
