#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "aapdhg/anderson.hpp"
#include "aapdhg/errors.hpp"
#include "aapdhg/filtering.hpp"
#include "support/test_support.hpp"

using namespace aapdhg;

static ColumnList cols(std::initializer_list<Vec> vs) { return ColumnList(vs); }

TEST_CASE("reverse flips both lists together") {
  auto [e, f] = reverse_columns(cols({{1.0}, {2.0}, {3.0}}),
                                cols({{10.0}, {20.0}, {30.0}}));
  CHECK(e == cols({{3.0}, {2.0}, {1.0}}));
  CHECK(f == cols({{30.0}, {20.0}, {10.0}}));

  auto [e2, f2] = reverse_columns(e, f);
  CHECK(e2 == cols({{1.0}, {2.0}, {3.0}}));

  CHECK_THROWS_AS(reverse_columns(cols({{1.0}}), cols({})), DimensionError);
}

TEST_CASE("angle filter keeps orthonormal columns") {
  ColumnList f = cols({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  ColumnList e = cols({{1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}, {3.0, 3.0, 3.0}});
  auto [eo, fo] = angle_filter(e, f, 0.2);
  CHECK(fo == f);
  CHECK(eo == e);
}

TEST_CASE("angle filter drops a duplicate column") {
  ColumnList f = cols({{1.0, 0.0}, {1.0, 0.0}});
  ColumnList e = cols({{5.0, 0.0}, {6.0, 0.0}});
  auto [eo, fo] = angle_filter(e, f, 0.2);
  REQUIRE(fo.size() == 1);
  CHECK(fo[0] == Vec{1.0, 0.0});
  CHECK(eo[0] == Vec{5.0, 0.0});
}

TEST_CASE("angle filter thresholds on the sine against predecessors") {
  const double c_s = 0.2;
  auto shallow = [](double s) {
    return cols({{1.0, 0.0}, {std::sqrt(1.0 - s * s), s}});
  };
  ColumnList e = cols({{1.0, 0.0}, {0.0, 1.0}});

  auto [e1, f1] = angle_filter(e, shallow(0.1), c_s);  // sine 0.1 < 0.2
  CHECK(f1.size() == 1);

  auto [e2, f2] = angle_filter(e, shallow(0.3), c_s);  // sine 0.3 >= 0.2
  CHECK(f2.size() == 2);

  // exact threshold stays
  auto [e3, f3] = angle_filter(e, shallow(0.2), c_s);
  CHECK(f3.size() == 2);
  (void)e1; (void)e2; (void)e3;
}

TEST_CASE("angle filter always keeps the leading column") {
  // nearly parallel pair: only the first survives regardless of norms
  ColumnList f = cols({{2.0, 0.0}, {3.0, 1e-9}});
  ColumnList e = cols({{1.0, 0.0}, {0.0, 1.0}});
  auto [eo, fo] = angle_filter(e, f, 0.2);
  REQUIRE(fo.size() == 1);
  CHECK(fo[0] == Vec{2.0, 0.0});

  CHECK_THROWS_AS(angle_filter(cols({{1.0}}), cols({{0.0}}), 0.2),
                  SingularError);
}

TEST_CASE("angle filter drops columns beyond the row dimension") {
  // three columns in a two-dimensional space: at most two can survive
  ColumnList f = cols({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  ColumnList e = f;
  auto [eo, fo] = angle_filter(e, f, 1e-12);
  CHECK(fo.size() == 2);
  (void)eo;
}

TEST_CASE("length bounds freeze on unit columns") {
  // c_s = 0.2: b_1 = 1 and b_2 = (c_t^2 + 1)/c_s^2 = 1.96/0.04 = 49.
  Vec b = length_bounds(cols({{1.0, 0.0}, {0.0, 1.0}}), 0.2);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b[1] == doctest::Approx(49.0).epsilon(1e-12));

  // leading norm enters inversely squared
  Vec b2 = length_bounds(cols({{2.0, 0.0}}), 0.2);
  CHECK(b2[0] == doctest::Approx(0.25).epsilon(1e-14));

  CHECK(length_bounds({}, 0.2).empty());
}

TEST_CASE("length bounds dominate the inverse triangle columns") {
  // After the angle filter every kept column has sine >= c_s, and the bound
  // b_j must majorize ||(R^{-1})_{:,j}||^2 column by column.
  std::mt19937_64 rng(71);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double c_s = 0.25;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + int(rng() % 10);
    const int p = 1 + int(rng() % 6);
    ColumnList f;
    for (int j = 0; j < p; ++j) {
      Vec col(std::size_t(n), 0.0);
      for (auto& x : col) x = gauss(rng);
      f.push_back(col);
    }
    auto [eo, fo] = angle_filter(f, f, c_s);
    (void)eo;
    REQUIRE(!fo.empty());

    DenseMatrix fd(n, int(fo.size()));
    for (int j = 0; j < int(fo.size()); ++j)
      for (int i = 0; i < n; ++i) fd.at(i, j) = fo[std::size_t(j)][std::size_t(i)];
    QRFactors qr = economy_qr(fd);
    DenseMatrix rinv = testsup::invert_upper(qr.r);

    Vec b = length_bounds(fo, c_s);
    for (int j = 0; j < int(fo.size()); ++j) {
      double colsq = 0.0;
      for (int i = 0; i < rinv.nrows; ++i) colsq += rinv.at(i, j) * rinv.at(i, j);
      CHECK(colsq <= b[std::size_t(j)] * (1.0 + 1e-10));
    }
  }
}

TEST_CASE("length filter keeps the longest admissible prefix") {
  // most recent leftmost; unit norms make the products easy to pin
  ColumnList f = cols({{1.0, 0.0}, {0.0, 1.0}});
  ColumnList e = cols({{1.0, 0.0}, {0.0, 1.0}});

  // k=2: (2)(1+49) = 100 <= kappa^2 for kappa = 10
  auto [e1, f1] = length_filter(e, f, 0.2, 10.0);
  CHECK(f1.size() == 2);

  // kappa = 9.9: k=2 fails, k=1 gives (1)(1) = 1 <= 98.01
  auto [e2, f2] = length_filter(e, f, 0.2, 9.9);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0] == Vec{1.0, 0.0});  // the most recent (leftmost) pair survives
  CHECK(e2[0] == Vec{1.0, 0.0});

  // even the single most recent pair can violate the cap
  auto [e3, f3] = length_filter(cols({{10.0, 0.0}}), cols({{1.0, 0.0}}), 0.2, 1.0);
  CHECK(f3.empty());
  CHECK(e3.empty());
  (void)e1;
}

TEST_CASE("pipeline preserves chronological order and builds a usable QR") {
  std::mt19937_64 rng(83);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = 6, p = 4;
  ColumnList e, f;
  for (int j = 0; j < p; ++j) {
    Vec a(std::size_t(n), 0.0), b(std::size_t(n), 0.0);
    for (auto& x : a) x = gauss(rng);
    for (auto& x : b) x = gauss(rng);
    e.push_back(a);
    f.push_back(b);
  }
  FilterParams params;
  params.c_s = 1e-3;       // Gaussian columns pass with near certainty
  params.kappa_bar = 1e15; // roomy cap: the length bounds scale like 1/c_s^2
  FilteredMemory fm = build_filtered_memory(e, f, params);
  REQUIRE(fm.size() == std::size_t(p));
  CHECK(fm.e == e);  // oldest-to-newest order restored
  CHECK(fm.f == f);

  DenseMatrix fd(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) fd.at(i, j) = f[std::size_t(j)][std::size_t(i)];
  CHECK(testsup::qr_reconstruction_error(fd, fm.qr.q, fm.qr.r) < 1e-10);
}

TEST_CASE("pipeline caps the memory at the ambient dimension") {
  std::mt19937_64 rng(97);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ColumnList e, f;
  for (int j = 0; j < 5; ++j) {
    Vec a{gauss(rng), gauss(rng)}, b{gauss(rng), gauss(rng)};
    e.push_back(a);
    f.push_back(b);
  }
  FilterParams params;
  FilteredMemory fm = build_filtered_memory(e, f, params);
  CHECK(fm.size() <= 2);

  AAParams aap;
  Vec out = filtered_aa_apply(fm, aap, Vec{0.0, 0.0}, Vec{1.0, 1.0});
  for (double x : out) CHECK(std::isfinite(x));
}

TEST_CASE("filtered application matches the normal-equation form") {
  // with no column filtered out, QR least squares and the eta=0 normal
  // equations solve the same problem
  std::mt19937_64 rng(103);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 8;
    const int p = 1 + int(rng() % 3);
    ColumnList e, f;
    AAMemory mem;
    mem.capacity = 8;
    for (int j = 0; j < p; ++j) {
      Vec a(std::size_t(n), 0.0), b(std::size_t(n), 0.0);
      for (auto& x : a) x = gauss(rng);
      for (auto& x : b) x = gauss(rng);
      e.push_back(a);
      f.push_back(b);
      memory_push(mem, a, b);
    }
    Vec u(std::size_t(n), 0.0), g(std::size_t(n), 0.0);
    for (auto& x : u) x = gauss(rng);
    for (auto& x : g) x = gauss(rng);

    FilterParams fparams;
    fparams.c_s = 1e-3;
    fparams.kappa_bar = 1e15;
    FilteredMemory fm = build_filtered_memory(e, f, fparams);
    REQUIRE(fm.size() == std::size_t(p));

    for (double beta : {1.0, 0.7}) {
      AAParams aap;
      aap.beta = beta;
      aap.eta = 0.0;
      Vec a = filtered_aa_apply(fm, aap, u, g);
      Vec b = aa_apply(mem, aap, u, g);
      CHECK(testsup::max_abs_diff(a, b) < 1e-8);
    }
  }
}

TEST_CASE("empty filtered memory falls back to the damped step") {
  FilteredMemory fm;
  AAParams aap;
  aap.beta = 0.5;
  aap.d_hat = Vec{2.0, 4.0};
  Vec out = filtered_aa_apply(fm, aap, Vec{1.0, 1.0}, Vec{1.0, 1.0});
  CHECK(out == Vec{2.0, 3.0});
}

TEST_CASE("singular triangle propagates from the solve") {
  FilteredMemory fm;
  fm.e = cols({{1.0, 0.0}});
  fm.f = cols({{1.0, 0.0}});
  fm.qr.q = DenseMatrix(2, 1);
  fm.qr.q.at(0, 0) = 1.0;
  fm.qr.r = DenseMatrix(1, 1);  // zero diagonal
  AAParams aap;
  CHECK_THROWS_AS(filtered_aa_apply(fm, aap, Vec{0.0, 0.0}, Vec{1.0, 0.0}),
                  SingularError);
}
