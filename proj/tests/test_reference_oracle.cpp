#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "aapdhg/errors.hpp"
#include "aapdhg/reference_oracle.hpp"
#include "support/test_support.hpp"

using namespace aapdhg;
using testsup::make_problem;

TEST_CASE("bound-active maximization vertex") {
  // min -x over [0, 1]: optimum at the upper bound
  ProblemData p = make_problem({}, {}, {-1.0}, {}, {}, {0.0}, {1.0});
  OracleResult r = solve_tiny(p);
  REQUIRE(r.status == OracleStatus::kOptimal);
  CHECK(r.x == Vec{1.0});
  CHECK(r.objective == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("toy equality instance") {
  OracleResult r = solve_tiny(testsup::toy_problem());
  REQUIRE(r.status == OracleStatus::kOptimal);
  CHECK(r.x[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.objective == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("objective ties resolve to the lexicographically smallest vertex") {
  // min 0 over the segment x1 + x2 = 1 in the unit box: (0,1) beats (1,0)
  ProblemData p = make_problem({}, {{1.0, 1.0}}, {0.0, 0.0}, {}, {1.0},
                               {0.0, 0.0}, {1.0, 1.0});
  OracleResult r = solve_tiny(p);
  REQUIRE(r.status == OracleStatus::kOptimal);
  CHECK(testsup::max_abs_diff(r.x, Vec{0.0, 1.0}) < 1e-12);
}

TEST_CASE("unbounded ray is certified") {
  ProblemData p = make_problem({}, {}, {-1.0}, {}, {}, {0.0}, {aapdhg::kInf});
  CHECK(solve_tiny(p).status == OracleStatus::kUnbounded);

  // free variable, no rows at all
  ProblemData p2 = make_problem({}, {}, {1.0}, {}, {}, {-aapdhg::kInf},
                                {aapdhg::kInf});
  CHECK(solve_tiny(p2).status == OracleStatus::kUnbounded);
}

TEST_CASE("empty feasible region is reported") {
  ProblemData p = make_problem({{1.0}}, {}, {0.0}, {2.0}, {}, {0.0}, {1.0});
  CHECK(solve_tiny(p).status == OracleStatus::kInfeasible);
}

TEST_CASE("inequality vertex with the cheaper corner") {
  // min x1 + x2 s.t. x1 + 2 x2 >= 2, x >= 0: corners (0,1) and (2,0)
  ProblemData p = make_problem({{1.0, 2.0}}, {}, {1.0, 1.0}, {2.0}, {},
                               {0.0, 0.0}, {aapdhg::kInf, aapdhg::kInf});
  OracleResult r = solve_tiny(p);
  REQUIRE(r.status == OracleStatus::kOptimal);
  CHECK(testsup::max_abs_diff(r.x, Vec{0.0, 1.0}) < 1e-12);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fixed variable through equal bounds") {
  ProblemData p = make_problem({}, {}, {1.0}, {}, {}, {2.0}, {2.0});
  OracleResult r = solve_tiny(p);
  REQUIRE(r.status == OracleStatus::kOptimal);
  CHECK(r.x == Vec{2.0});
  CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("triple-tight degenerate vertex") {
  ProblemData p = make_problem({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, {},
                               {1.0, 1.0}, {1.0, 1.0, 2.0}, {}, {0.0, 0.0},
                               {5.0, 5.0});
  OracleResult r = solve_tiny(p);
  REQUIRE(r.status == OracleStatus::kOptimal);
  CHECK(testsup::max_abs_diff(r.x, Vec{1.0, 1.0}) < 1e-12);
  CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("row permutations leave the answer unchanged") {
  std::vector<Vec> g_rows = {{1.0, 2.0, -1.0}, {0.5, -1.0, 1.0}, {2.0, 0.0, 1.0}};
  Vec h{1.0, -0.5, 1.5};
  Vec c{1.0, 0.3, -0.7};
  Vec l{0.0, 0.0, 0.0}, u{2.0, 2.0, 2.0};
  ProblemData p1 = make_problem(g_rows, {}, c, h, {}, l, u);

  std::vector<Vec> g2 = {g_rows[2], g_rows[0], g_rows[1]};
  Vec h2{h[2], h[0], h[1]};
  ProblemData p2 = make_problem(g2, {}, c, h2, {}, l, u);

  OracleResult r1 = solve_tiny(p1), r2 = solve_tiny(p2);
  REQUIRE(r1.status == OracleStatus::kOptimal);
  REQUIRE(r2.status == OracleStatus::kOptimal);
  CHECK(r1.objective == doctest::Approx(r2.objective).epsilon(1e-12));
  CHECK(testsup::max_abs_diff(r1.x, r2.x) < 1e-9);
}

TEST_CASE("size guard rejects instances beyond the enumeration budget") {
  Vec l7(7, 0.0), u7(7, 1.0), c7(7, 1.0);
  ProblemData wide = make_problem({}, {}, c7, {}, {}, l7, u7);
  CHECK_THROWS_AS(solve_tiny(wide), InputError);

  // 21 inequality rows + 4 finite bound rows = 25 > 24
  std::vector<Vec> many;
  Vec h;
  for (int i = 0; i < 21; ++i) {
    many.push_back(Vec{1.0, double(i)});
    h.push_back(-100.0);
  }
  ProblemData tall = make_problem(many, {}, {1.0, 1.0}, h, {}, {0.0, 0.0},
                                  {1.0, 1.0});
  CHECK_THROWS_AS(solve_tiny(tall), InputError);
}

TEST_CASE("random box instances give feasible optima no sample can beat") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    ProblemData p = testsup::random_box_lp(rng);
    OracleResult r = solve_tiny(p);
    REQUIRE(r.status == OracleStatus::kOptimal);

    auto g = testsup::dense_rows(p.g);
    auto a = testsup::dense_rows(p.a);
    auto feasible = [&](const Vec& x) {
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < p.l[i] - 1e-7 || x[i] > p.u[i] + 1e-7) return false;
      Vec gx = testsup::dense_matvec(g, x);
      for (std::size_t i = 0; i < gx.size(); ++i)
        if (gx[i] < p.h[i] - 1e-7) return false;
      Vec ax = testsup::dense_matvec(a, x);
      for (std::size_t i = 0; i < ax.size(); ++i)
        if (std::abs(ax[i] - p.b[i]) > 1e-7) return false;
      return true;
    };
    CHECK(feasible(r.x));
    CHECK(r.objective == doctest::Approx(dot(p.c, r.x)).epsilon(1e-10));

    // rejection-sample feasible points; none may improve on the optimum
    for (int s = 0; s < 300; ++s) {
      Vec x(std::size_t(p.n()), 0.0);
      for (int i = 0; i < p.n(); ++i)
        x[std::size_t(i)] =
            p.l[std::size_t(i)] +
            unit(rng) * (p.u[std::size_t(i)] - p.l[std::size_t(i)]);
      if (!feasible(x)) continue;
      CHECK(dot(p.c, x) >= r.objective - 1e-7);
    }
  }
}
