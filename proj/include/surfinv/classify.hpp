#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "surfinv/covers.hpp"

namespace surfinv {

/// Inputs for the numerical restrictions: invariants of the minimal model P
/// of the quotient resolution, the resolution data r_i (even, >= 2), and
/// h0(2K_W + L).
struct NumRInput {
  long long K_P_sq = 0;
  long long K_P_delta = 0;
  long long delta_sq = 0;
  std::vector<int> r_list;
  long long h0_2KL = 0;

  void validate() const {
    for (int r : r_list)
      if (r < 2 || r % 2 != 0)
        throw std::invalid_argument("NumRInput: r_i must be even and >= 2");
    if (h0_2KL < 0 || h0_2KL > 1)
      throw std::invalid_argument("NumRInput: h0(2K_W+L) must be 0 or 1 in this context");
  }
};

struct NumREval {
  long long t = 0;
  long long K_W_sq = 0;
  long long sum_r_minus_2 = 0;
};

/// Verifies identities (a) and (b), returns t from (c), checks bound (d).
/// A violated identity throws, naming which of a/b/d fails.
inline NumREval numr_eval(const NumRInput& in) {
  in.validate();
  long long sum1 = 0, sum2 = 0;
  for (int r : in.r_list) {
    sum1 += r - 2;
    sum2 += static_cast<long long>(r - 2) * (r - 4);
  }
  if (sum1 % 2 != 0) throw std::domain_error("numr_eval: identity (a) fails (odd sum)");
  if (in.K_P_sq + in.K_P_delta + sum1 / 2 != in.h0_2KL)
    throw std::domain_error("numr_eval: identity (a) fails");
  if (sum2 % 4 != 0 ||
      in.delta_sq !=
          -2 * in.K_P_sq - 3 * in.K_P_delta + sum2 / 4 + 2 * in.h0_2KL - 2)
    throw std::domain_error("numr_eval: identity (b) fails");
  NumREval out;
  out.t = 7 - 2 * in.h0_2KL;
  out.sum_r_minus_2 = sum1;
  out.K_W_sq = in.K_P_sq - static_cast<long long>(in.r_list.size());
  if (out.K_W_sq < 2 * in.h0_2KL - 4)
    throw std::domain_error("numr_eval: bound (d) fails");
  return out;
}

/// One admissible (or explicitly excluded) classification case.
struct CaseRecord {
  // quotient Kodaira-dimension branch
  int kodaira = -1;
  bool excluded = false;
  std::string exclusion_reason;
  std::optional<NumRInput> numr;  // data the record was re-verified with
  long long sum_r_minus_2 = 0;
  long long B_bar_sq = 0;
  long long K_P_B_bar = 0;
  // branch-component shape (the five-case list)
  char label = 0;  // 'a'..'e'
  long long gamma_sq = 0;
  long long gamma_genus = 0;
  long long l = 0;
  long long K_W_sq = 0;
  std::string components;
  bool requires_kod1 = false;
  // multiple-fibre data
  std::vector<int> m_tuple;
  long long BF = 0;
  long long genus = 0;
  std::string note;
};

/// The Kodaira-dimension case split for the quotient's minimal model P, in
/// the p_g = 0, K^2 = 3 context. Emitted records are re-verified against the
/// the numerical-restriction identities; the Kod = 2 branch is excluded with its reason.
inline std::vector<CaseRecord> enumerate_quotient_kodaira(int h0) {
  if (h0 != 0 && h0 != 1)
    throw std::invalid_argument("enumerate_quotient_kodaira: h0 must be 0 or 1");
  std::vector<CaseRecord> out;
  if (h0 == 0) {
    // K_P nef and K_P(K_P+delta) + (1/2)sum(r_i-2) = 0 force K_P^2 = K_P.delta = 0:
    // P is birational to an Enriques surface (the Kodaira-1 branch would give an
    // elliptic fibration on S).
    CaseRecord rec;
    rec.kodaira = 0;
    rec.sum_r_minus_2 = 0;
    rec.K_P_B_bar = 0;
    NumRInput n;
    n.h0_2KL = 0;
    n.delta_sq = -2;  // identity (b) with all data zero
    rec.B_bar_sq = 4 * n.delta_sq;
    rec.numr = n;
    numr_eval(n);
    rec.note = "composed case: K_P^2 = K_P.delta = 0; Kodaira 1 is excluded by the "
               "elliptic-fibration obstruction";
    out.push_back(std::move(rec));
    return out;
  }

  {  // Kod(P) = 0: Enriques quotient
    CaseRecord rec;
    rec.kodaira = 0;
    NumRInput n;
    n.h0_2KL = 1;
    n.r_list = {4};  // sum(r_i-2) = 2 with every r_i even
    n.K_P_sq = 0;
    n.K_P_delta = 0;
    n.delta_sq = 0;
    numr_eval(n);
    rec.numr = n;
    rec.sum_r_minus_2 = 2;
    rec.B_bar_sq = 4 * n.delta_sq;  // (2 delta)^2 = 0
    rec.K_P_B_bar = 2 * n.K_P_delta;
    out.push_back(std::move(rec));
  }
  {  // Kod(P) = 1
    CaseRecord rec;
    rec.kodaira = 1;
    NumRInput n;
    n.h0_2KL = 1;
    n.K_P_sq = 0;
    n.K_P_delta = 1;
    n.delta_sq = -3;
    numr_eval(n);
    rec.numr = n;
    rec.sum_r_minus_2 = 0;
    rec.B_bar_sq = 4 * n.delta_sq;  // -12
    rec.K_P_B_bar = 2 * n.K_P_delta;  // 2
    out.push_back(std::move(rec));
  }
  {  // Kod(P) = 2: excluded
    CaseRecord rec;
    rec.kodaira = 2;
    rec.excluded = true;
    NumRInput n;
    n.h0_2KL = 1;
    n.K_P_sq = 1;
    n.K_P_delta = 0;
    n.delta_sq = -2;
    numr_eval(n);
    rec.numr = n;
    rec.sum_r_minus_2 = 0;
    rec.B_bar_sq = 4 * n.delta_sq;  // -8: four disjoint (-2)-curves
    rec.exclusion_reason = "branch would be four (-2)-curves, but t = 5 != 4";
    out.push_back(std::move(rec));
  }
  return out;
}

/// Solves -2K_W^2 + 4 + Gamma^2 = 2g(Gamma) + 2l over the admissible shapes:
/// (g, Gamma^2) in {(0,-6), (1,-2)} (from 2g(Gamma_V) = 3 + Gamma_V^2 with
/// Gamma_V^2 in {-1,-3}), K_W^2 in [-2, 0] with K_W^2 <= -1 unless Kod = 1,
/// l >= 0. The box bounds are widened by the exhaustiveness tests.
inline std::vector<CaseRecord> enumerate_branch_shapes(long long k_min = -2, long long k_max = 0,
                                                       long long l_max = 16) {
  const std::pair<long long, long long> shapes[2] = {{0, -6}, {1, -2}};
  std::vector<CaseRecord> out;
  for (auto [g, gamma_sq] : shapes) {
    for (long long k = k_min; k <= k_max; ++k) {
      if (k < -2) continue;  // numerical-restriction bound (d) with h0 = 1
      long long rhs = -2 * k + 4 + gamma_sq - 2 * g;
      if (rhs % 2 != 0) continue;
      long long l = rhs / 2;
      if (l < 0 || l > l_max) continue;
      if (k > 0) continue;  // K_W^2 <= 0 always in this context
      CaseRecord rec;
      rec.gamma_sq = gamma_sq;
      rec.gamma_genus = g;
      rec.l = l;
      rec.K_W_sq = k;
      rec.requires_kod1 = (k == 0);  // only the Kodaira-1 quotient allows K_W^2 = 0
      rec.components = "G(" + std::to_string(gamma_sq) + "," + std::to_string(g) + ")";
      for (long long i = 0; i < l; ++i) rec.components += "+G(-4,0)";
      out.push_back(std::move(rec));
    }
  }
  // presentation order a)-e): genus 0 first, the K_W^2 = 0
  // (Kodaira-1 only) case last within its genus
  std::sort(out.begin(), out.end(), [](const CaseRecord& a, const CaseRecord& b) {
    if (a.gamma_genus != b.gamma_genus) return a.gamma_genus < b.gamma_genus;
    if ((a.K_W_sq == 0) != (b.K_W_sq == 0)) return b.K_W_sq == 0;
    return a.l < b.l;
  });
  char label = 'a';
  for (auto& rec : out) rec.label = label++;
  return out;
}

/// Multiple-fibre possibilities of the elliptic fibration in the Kodaira-1
/// case: BF(-1 + sum (m_i-1)/m_i) = 2 with BF >= 2 m_i and BF even (the
/// evenness is inferred from B = 0 mod 2, noted on each record). The search
/// box (n <= max_n, m_i <= max_m) is widened by the exhaustiveness tests.
inline std::vector<CaseRecord> enumerate_multiple_fibres(int max_n = 3, int max_m = 12) {
  std::vector<CaseRecord> out;
  std::vector<int> tuple;
  auto consider = [&](const std::vector<int>& ms) {
    // BF * (-1 + sum (m-1)/m) = 2 over a common denominator
    long long den = 1;
    for (int m : ms) den *= m;
    long long num = -den;
    for (int m : ms) num += (den / m) * (m - 1);
    if (num <= 0) return;
    // BF = 2*den/num must be an even integer with BF >= 2 m_i
    if ((2 * den) % num != 0) return;
    long long bf = 2 * den / num;
    if (bf % 2 != 0) return;
    for (int m : ms)
      if (bf < 2 * m) return;
    CaseRecord rec;
    rec.m_tuple = ms;
    rec.BF = bf;
    rec.genus = pullback_fibre_genus(1, bf, CoverKind::Double);
    rec.note = "BF even inferred from B = 0 (mod 2)";
    out.push_back(std::move(rec));
  };
  std::function<void(int, int)> rec_build = [&](int n_left, int m_min) {
    if (n_left == 0) {
      if (!tuple.empty()) consider(tuple);
      return;
    }
    for (int m = m_min; m <= max_m; ++m) {
      tuple.push_back(m);
      rec_build(n_left - 1, m);
      tuple.pop_back();
    }
  };
  for (int n = 1; n <= max_n; ++n) rec_build(n, 2);
  std::sort(out.begin(), out.end(), [](const CaseRecord& a, const CaseRecord& b) {
    if (a.m_tuple.size() != b.m_tuple.size()) return a.m_tuple.size() > b.m_tuple.size();
    return a.m_tuple < b.m_tuple;
  });
  return out;
}

/// p_a of the normalization-style count: (B^2 + K.B)/2 + 1 minus
/// sum m(m-1)/2 over every multiplicity in every singularity sequence.
inline long long pa_singularity_check(long long B_sq, long long K_B,
                                      const std::vector<std::vector<int>>& sing_types) {
  long long num = B_sq + K_B;
  if (num % 2 != 0) throw std::domain_error("pa_singularity_check: non-integer p_a");
  long long pa = num / 2 + 1;
  for (const auto& seq : sing_types)
    for (int m : seq) pa -= static_cast<long long>(m) * (m - 1) / 2;
  return pa;
}

}  // namespace surfinv
