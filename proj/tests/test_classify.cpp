#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "common.hpp"
#include "doctest.h"
#include "surfinv/classify.hpp"

using namespace surfinv;
using namespace testutil;

TEST_CASE("numerical restriction evaluation") {
  SUBCASE("Enriques case") {
    NumRInput in;
    in.K_P_sq = 0;
    in.K_P_delta = 0;
    in.delta_sq = 0;
    in.r_list = {4};
    in.h0_2KL = 1;
    auto out = numr_eval(in);
    CHECK(out.t == 5);
    CHECK(out.sum_r_minus_2 == 2);
    CHECK(out.K_W_sq == -1);
  }
  SUBCASE("composed case has t = 7") {
    NumRInput in;
    in.delta_sq = -2;
    in.h0_2KL = 0;
    CHECK(numr_eval(in).t == 7);
  }
  SUBCASE("Kodaira-1 case") {
    NumRInput in;
    in.K_P_sq = 0;
    in.K_P_delta = 1;
    in.delta_sq = -3;
    in.h0_2KL = 1;
    auto out = numr_eval(in);
    CHECK(out.t == 5);
    CHECK(4 * in.delta_sq == -12);  // B-bar^2 = (2 delta)^2
  }
  SUBCASE("violations name the failing identity") {
    NumRInput in;
    in.K_P_sq = 1;
    in.h0_2KL = 0;
    try {
      numr_eval(in);
      FAIL("expected identity (a) failure");
    } catch (const std::domain_error& e) {
      CHECK(std::string(e.what()).find("(a)") != std::string::npos);
    }
    in.K_P_sq = 0;
    in.delta_sq = 5;
    try {
      numr_eval(in);
      FAIL("expected identity (b) failure");
    } catch (const std::domain_error& e) {
      CHECK(std::string(e.what()).find("(b)") != std::string::npos);
    }
  }
  SUBCASE("input validation") {
    NumRInput in;
    in.r_list = {3};
    CHECK_THROWS_AS(numr_eval(in), std::invalid_argument);
    in.r_list = {4};
    in.h0_2KL = 2;
    CHECK_THROWS_AS(numr_eval(in), std::invalid_argument);
  }
}

TEST_CASE("quotient Kodaira-dimension cases") {
  SUBCASE("h0 = 1") {
    auto cases = enumerate_quotient_kodaira(1);
    REQUIRE(cases.size() == 3);

    CHECK(cases[0].kodaira == 0);
    CHECK(!cases[0].excluded);
    CHECK(cases[0].sum_r_minus_2 == 2);
    CHECK(cases[0].B_bar_sq == 0);

    CHECK(cases[1].kodaira == 1);
    CHECK(cases[1].sum_r_minus_2 == 0);
    CHECK(cases[1].K_P_B_bar == 2);
    CHECK(cases[1].B_bar_sq == -12);

    CHECK(cases[2].kodaira == 2);
    CHECK(cases[2].excluded);
    CHECK(cases[2].exclusion_reason.find("t = 5 != 4") != std::string::npos);
  }
  SUBCASE("h0 = 0") {
    auto cases = enumerate_quotient_kodaira(0);
    REQUIRE(cases.size() == 1);
    CHECK(cases[0].numr->K_P_sq == 0);
    CHECK(cases[0].numr->K_P_delta == 0);
  }
  SUBCASE("every record re-verifies the identities") {
    for (int h0 : {0, 1})
      for (const auto& rec : enumerate_quotient_kodaira(h0)) {
        REQUIRE(rec.numr.has_value());
        CHECK_NOTHROW(numr_eval(*rec.numr));
        auto ev = numr_eval(*rec.numr);
        CHECK((ev.t == 5 || ev.t == 7));
        CHECK(ev.t == 7 - 2 * h0);
      }
  }
}

TEST_CASE("branch component shapes (five cases)") {
  auto cases = enumerate_branch_shapes();
  REQUIRE(cases.size() == 5);

  struct Expect {
    char label;
    long long gamma_sq, genus, K_W_sq, l;
  };
  const std::vector<Expect> want = {
      {'a', -6, 0, -1, 0},
      {'b', -6, 0, -2, 1},
      {'c', -2, 1, -1, 1},
      {'d', -2, 1, -2, 2},
      {'e', -2, 1, 0, 0},
  };
  for (size_t i = 0; i < want.size(); ++i) {
    CAPTURE(i);
    CHECK(cases[i].label == want[i].label);
    CHECK(cases[i].gamma_sq == want[i].gamma_sq);
    CHECK(cases[i].gamma_genus == want[i].genus);
    CHECK(cases[i].K_W_sq == want[i].K_W_sq);
    CHECK(cases[i].l == want[i].l);
  }
  CHECK(cases[4].requires_kod1);
  CHECK(cases[0].components == "G(-6,0)");
  CHECK(cases[3].components == "G(-2,1)+G(-4,0)+G(-4,0)");

  SUBCASE("the displayed equation holds on every record") {
    for (const auto& rec : cases)
      CHECK(-2 * rec.K_W_sq + 4 + rec.gamma_sq == 2 * rec.gamma_genus + 2 * rec.l);
  }
  SUBCASE("exhaustiveness sweep over the enlarged box") {
    auto wide = enumerate_branch_shapes(-5, 5, 16);
    CHECK(wide.size() == 5);
  }
}

TEST_CASE("multiple fibre possibilities (four tuples)") {
  auto fibres = enumerate_multiple_fibres();
  REQUIRE(fibres.size() == 4);

  struct Expect {
    std::vector<int> m;
    long long BF, genus;
  };
  const std::vector<Expect> want = {
      {{2, 2, 2}, 4, 3},
      {{2, 3}, 12, 7},
      {{2, 4}, 8, 5},
      {{3, 3}, 6, 4},
  };
  for (size_t i = 0; i < want.size(); ++i) {
    CAPTURE(i);
    CHECK(fibres[i].m_tuple == want[i].m);
    CHECK(fibres[i].BF == want[i].BF);
    CHECK(fibres[i].genus == want[i].genus);
    CHECK(fibres[i].note.find("mod 2") != std::string::npos);
  }

  SUBCASE("(2,5) is rejected: BF = 20/3 is not an integer") {
    for (const auto& f : fibres) CHECK(f.m_tuple != std::vector<int>{2, 5});
  }
  SUBCASE("(4,4) is rejected: BF = 4 < 2m = 8") {
    for (const auto& f : fibres) CHECK(f.m_tuple != std::vector<int>{4, 4});
  }
  SUBCASE("exhaustiveness sweep over the enlarged box") {
    auto wide = enumerate_multiple_fibres(6, 12);
    CHECK(wide.size() == 4);
  }
}

TEST_CASE("arithmetic genus with singularity corrections") {
  // Enriques branch: B'^2 = 10, K.B' = 0, quadruple point and at most one double
  CHECK(pa_singularity_check(10, 0, {}) == 6);
  CHECK(pa_singularity_check(10, 0, {{4}}) == 0);
  CHECK(pa_singularity_check(10, 0, {{4}, {2}}) == -1);
  // Enriques branch, (3,3)-point: B'^2 = 8
  CHECK(pa_singularity_check(8, 0, {{3, 3}}) == -1);
  // Kodaira-1 branch, smooth: B'^2 = -2, K.B' = 2
  CHECK(pa_singularity_check(-2, 2, {}) == 1);
  CHECK_THROWS_AS(pa_singularity_check(1, 0, {}), std::domain_error);
}
