#include <gtest/gtest.h>

#include <random>

#include "walsh/dyadic.hpp"
#include "walsh/error.hpp"
#include "walsh/transform.hpp"

using namespace walsh;

namespace {

DyadicFunction random_function(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DyadicFunction f(g);
  for (auto& v : f.values()) v = u(rng);
  return f;
}

// Oracle: f^(k) = 2^-K sum_j f(j) w_k(j) by direct matrix product.
std::vector<double> analyze_oracle(const std::vector<double>& f, int k) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += f[j] * walsh_function(i, j, k);
    out[i] /= static_cast<double>(n);
  }
  return out;
}

// Oracle: (f * g)(x) = int f(t) g(x + t) dt by direct double sum.
DyadicFunction convolve_oracle(const DyadicFunction& f, const DyadicFunction& g) {
  DyadicFunction out(f.grid());
  const std::size_t n = f.size();
  for (std::size_t x = 0; x < n; ++x) {
    double s = 0.0;
    for (std::size_t t = 0; t < n; ++t) s += f[t] * g[x ^ t];
    out[x] = s / static_cast<double>(n);
  }
  return out;
}

}  // namespace

TEST(Fwht, ConstantAndWalsh) {
  auto c = fwht(std::vector<double>(16, 1.0), Direction::kAnalyze);
  EXPECT_EQ(c[0], 1.0);
  for (std::size_t i = 1; i < 16; ++i) EXPECT_EQ(c[i], 0.0);

  std::vector<double> w5(16);
  for (std::size_t j = 0; j < 16; ++j) w5[j] = walsh_function(5, j, 4);
  c = fwht(w5, Direction::kAnalyze);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(c[i], i == 5 ? 1.0 : 0.0);
}

TEST(Fwht, RejectsNonPowerOfTwo) {
  try {
    fwht(std::vector<double>(12, 0.0), Direction::kAnalyze);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kShape);
  }
}

TEST(Fwht, MatchesMatrixOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k <= 6; ++k) {
    std::vector<double> v(std::size_t{1} << k);
    for (auto& x : v) x = u(rng);
    const auto fast = fwht(v, Direction::kAnalyze);
    const auto slow = analyze_oracle(v, k);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(fast[i], slow[i], 1e-14);
    const auto back = fwht(fast, Direction::kSynthesize);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(back[i], v[i], 1e-12);
  }
}

TEST(Analyze, Examples) {
  DyadicFunction c(Grid({3, 2}));
  for (auto& v : c.values()) v = 2.5;
  auto s = analyze(c);
  EXPECT_EQ(s[0], 2.5);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_EQ(s[i], 0.0);

  const Grid g({4, 4});
  const std::uint64_t idx[] = {2, 3};
  s = analyze(walsh_product(g, idx));
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s[i], i == g.flat_index(std::vector<std::uint64_t>{2, 3}) ? 1.0 : 0.0);
  }

  DyadicFunction half(g);
  for (std::size_t i = 0; i < half.size(); ++i) half[i] = g.coord(i, 0) < 8 ? 1.0 : 0.0;
  s = analyze(half);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c0 = g.coord(i, 0), c1 = g.coord(i, 1);
    const double expected = (c1 == 0 && c0 <= 1) ? 0.5 : 0.0;
    EXPECT_EQ(s[i], expected) << c0 << "," << c1;
  }
}

TEST(Synthesize, Examples) {
  const Grid g({2, 3});
  WalshSpectrum s(g);
  EXPECT_EQ(max_abs_difference(synthesize(s), DyadicFunction(g)), 0.0);
  s[0] = 1.0;
  const auto one = synthesize(s);
  for (double v : one.values()) EXPECT_EQ(v, 1.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& v : s.values()) v = u(rng);
  const auto back = analyze(synthesize(s));
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(back[i], s[i], 1e-12);
}

TEST(Transform, RoundTripMultiDim) {
  for (const auto& res : std::vector<std::vector<int>>{{8}, {4, 5}, {3, 2, 4}, {10}}) {
    const auto f = random_function(Grid(res), 9);
    EXPECT_LT(max_abs_difference(synthesize(analyze(f)), f), 1e-12);
  }
}

TEST(Transform, Parseval) {
  for (const auto& res : std::vector<std::vector<int>>{{8}, {6, 7}, {3, 4, 5}}) {
    const auto f = random_function(Grid(res), 13);
    const auto s = analyze(f);
    double lhs = 0.0, rhs = 0.0;
    for (double v : f.values()) lhs += v * v;
    lhs /= static_cast<double>(f.size());
    for (double v : s.values()) rhs += v * v;
    EXPECT_NEAR(lhs, rhs, 1e-10);
  }
}

TEST(Transform, ConvolutionTheorem) {
  for (const auto& res : std::vector<std::vector<int>>{{6}, {3, 3}, {2, 2, 2}}) {
    const Grid g(res);
    const auto f = random_function(g, 17), h = random_function(g, 19);
    const auto lhs = analyze(convolve_oracle(f, h));
    const auto a = analyze(f), b = analyze(h);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(lhs[i], a[i] * b[i], 1e-12);
  }
}

TEST(PartialSum, Examples) {
  const Grid g({4});
  DyadicFunction f(g);
  for (std::size_t j = 0; j < 16; ++j) f[j] = walsh_function(3, j, 4) + walsh_function(7, j, 4);
  const std::uint64_t five[] = {5};
  const std::uint64_t w3[] = {3};
  EXPECT_LT(max_abs_difference(partial_sum(f, five), walsh_product(g, w3)), 1e-15);

  const Grid g2({3, 4});
  const auto r = random_function(g2, 23);
  const std::uint64_t full[] = {8, 16};
  EXPECT_LT(max_abs_difference(partial_sum(r, full), r), 1e-12);
  const std::uint64_t zero[] = {0, 16};
  EXPECT_EQ(max_abs_difference(partial_sum(r, zero), DyadicFunction(g2)), 0.0);
}

TEST(PartialSum, RejectsOrderBeyondResolution) {
  const auto f = random_function(Grid({4}), 1);
  const std::uint64_t big[] = {17};
  try {
    partial_sum(f, big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResolutionExceeded);
  }
}

// Integer samples keep every coefficient a dyadic rational, so the
// comparison can be exact.
TEST(PartialSum, IsProjection) {
  std::mt19937_64 rng(29);
  DyadicFunction f(Grid({5, 4}));
  for (auto& v : f.values()) v = static_cast<double>(static_cast<int>(rng() % 17) - 8);
  const std::uint64_t n[] = {11, 6};
  const auto once = partial_sum(f, n);
  EXPECT_EQ(max_abs_difference(partial_sum(once, n), once), 0.0);
}

TEST(Translate, XorOnFlatIndex) {
  const Grid g({3, 4});
  const auto f = random_function(g, 31);
  const std::uint64_t shift[] = {5, 9};
  const auto t = dyadic_translate(f, shift);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = g.unravel(i);
    const std::vector<std::uint64_t> moved{c[0] ^ 5, c[1] ^ 9};
    EXPECT_EQ(t[i], f.at(moved));
  }
}
