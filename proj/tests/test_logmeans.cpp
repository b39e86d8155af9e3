#include <gtest/gtest.h>

#include <random>

#include "walsh/dyadic.hpp"
#include "walsh/error.hpp"
#include "walsh/logmeans.hpp"
#include "walsh/transform.hpp"

using namespace walsh;

namespace {

// Oracle: l_n summed in long double.
double l_oracle(std::uint64_t n) {
  long double s = 0.0L;
  for (std::uint64_t k = 1; k < n; ++k) s += 1.0L / static_cast<long double>(k);
  return static_cast<double>(s);
}

// Oracle: F_n and G_n samples from the defining sums of Walsh Dirichlet
// kernels, with D_m evaluated term by term.
std::vector<double> kernel_oracle(KernelKind kind, std::uint64_t n, int k) {
  const std::size_t len = std::size_t{1} << k;
  std::vector<double> out(len, 0.0);
  for (std::size_t c = 0; c < len; ++c) {
    double d = 0.0;  // running D_m(c)
    std::vector<double> dm(n, 0.0);
    for (std::uint64_t m = 1; m < n; ++m) {
      d += walsh_function(m - 1, c, k);
      dm[m] = d;
    }
    double s = 0.0;
    for (std::uint64_t i = 1; i < n; ++i) s += (kind == KernelKind::kNoerlund ? dm[n - i] : dm[i]) / static_cast<double>(i);
    out[c] = s / l_oracle(n);
  }
  return out;
}

DyadicFunction random_function(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DyadicFunction f(g);
  for (auto& v : f.values()) v = u(rng);
  return f;
}

// Oracle for the mixed mean: explicit sum of weighted rectangular partial sums.
DyadicFunction mean_oracle(const DyadicFunction& f, const MeanSpec& spec) {
  const std::size_t d = f.dims();
  DyadicFunction acc(f.grid());
  std::vector<std::uint64_t> i(d, 1), box(d);
  double norm = 1.0;
  for (std::size_t a = 0; a < d; ++a) norm *= l_oracle(spec.order(a));
  while (true) {
    double w = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
      w /= static_cast<double>(i[a]);
      box[a] = spec.is_noerlund(a) ? spec.order(a) - i[a] : i[a];
    }
    acc = acc + w * partial_sum(f, box);
    std::size_t a = 0;
    while (a < d && ++i[a] == spec.order(a)) i[a++] = 1;
    if (a == d) break;
  }
  return (1.0 / norm) * acc;
}

}  // namespace

TEST(Harmonic, Examples) {
  EXPECT_EQ(harmonic_l(1), 0.0);
  EXPECT_EQ(harmonic_l(2), 1.0);
  EXPECT_NEAR(harmonic_l(4), 11.0 / 6.0, 1e-15);
  EXPECT_THROW(harmonic_l(0), Error);
  for (std::uint64_t n : {3u, 100u, 4097u, 100000u}) EXPECT_NEAR(harmonic_l(n), l_oracle(n), 1e-12);
  // Beyond the exact table the asymptotic expansion takes over.
  EXPECT_NEAR(harmonic_l(5000000), l_oracle(5000000), 1e-10);
}

TEST(Kernel, MultiplierExamples) {
  const auto f = kernel_f(4, 6);
  EXPECT_EQ(f.multipliers[0], 1.0);
  EXPECT_NEAR(f.multipliers[1], 9.0 / 11.0, 1e-15);
  EXPECT_NEAR(f.multipliers[2], 6.0 / 11.0, 1e-15);
  for (std::size_t k = 3; k < f.multipliers.size(); ++k) EXPECT_EQ(f.multipliers[k], 0.0);

  const auto g = kernel_g(4, 6);
  EXPECT_EQ(g.multipliers[0], 1.0);
  EXPECT_NEAR(g.multipliers[1], 5.0 / 11.0, 1e-15);

  for (double v : kernel_g(2, 5).samples) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(Kernel, UnitIntegral) {
  for (std::uint64_t n = 2; n <= 64; ++n) {
    for (auto kind : {KernelKind::kNoerlund, KernelKind::kRiesz}) {
      const auto p = make_kernel(kind, n, 7);
      double s = 0.0;
      for (double v : p.samples) s += v;
      EXPECT_NEAR(s / static_cast<double>(p.samples.size()), 1.0, 1e-12);
    }
  }
}

TEST(Kernel, MultipliersMatchDirectSummation) {
  for (int k : {6, 8, 12}) {
    for (std::uint64_t n = 2; n <= 64; ++n) {
      for (auto kind : {KernelKind::kNoerlund, KernelKind::kRiesz}) {
        const auto p = make_kernel(kind, n, k);
        const auto via_multipliers = fwht(p.multipliers, Direction::kSynthesize);
        double dev = 0.0;
        for (std::size_t c = 0; c < p.samples.size(); ++c) dev = std::max(dev, std::abs(via_multipliers[c] - p.samples[c]));
        ASSERT_LT(dev, 1e-10) << to_string(kind) << " n=" << n << " K=" << k;
      }
    }
  }
}

TEST(Kernel, SamplesMatchOracle) {
  for (std::uint64_t n : {2u, 3u, 7u, 21u, 32u, 33u, 64u}) {
    for (auto kind : {KernelKind::kNoerlund, KernelKind::kRiesz}) {
      const auto p = make_kernel(kind, n, 7);
      const auto o = kernel_oracle(kind, n, 7);
      for (std::size_t c = 0; c < o.size(); ++c) ASSERT_NEAR(p.samples[c], o[c], 1e-12);
    }
  }
}

TEST(Kernel, ResolutionExceeded) {
  try {
    kernel_f(65, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResolutionExceeded);
  }
}

TEST(Kernel, CacheReturnsSharedProfile) {
  clear_kernel_cache();
  const auto a = cached_kernel(KernelKind::kNoerlund, 10, 5);
  const auto b = cached_kernel(KernelKind::kNoerlund, 10, 5);
  EXPECT_EQ(a.get(), b.get());
  EXPECT_EQ(kernel_cache_size(), 1u);
}

TEST(MeanSpec, RejectsSmallOrders) {
  try {
    MeanSpec::uniform(AxisSubset::all(1), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
}

TEST(TensorKernel, Examples) {
  const Grid g1({6});
  const auto t = tensor_kernel(MeanSpec::uniform(AxisSubset::all(1), 9), g1);
  const auto f = kernel_f(9, 6);
  for (std::size_t i = 0; i < g1.size(); ++i) EXPECT_EQ(t[i], f.samples[i]);

  const Grid g2({4, 5});
  const MeanSpec spec(AxisSubset::none(2), {6, 11});
  const auto t2 = tensor_kernel(spec, g2);
  const auto ga = kernel_g(6, 4), gb = kernel_g(11, 5);
  for (std::size_t i = 0; i < g2.size(); ++i) {
    EXPECT_NEAR(t2[i], ga.samples[g2.coord(i, 0)] * gb.samples[g2.coord(i, 1)], 1e-14);
  }
  EXPECT_NEAR(integral(t2), 1.0, 1e-12);
}

TEST(ApplyMean, ConstantsReproduced) {
  const Grid g({3, 4});
  DyadicFunction c(g);
  for (auto& v : c.values()) v = -1.75;
  for (auto method : {MeanMethod::kDirect, MeanMethod::kSpectral}) {
    const auto m = apply_mean(c, MeanSpec(AxisSubset(2, {2}), {5, 16}), method);
    EXPECT_LT(max_abs_difference(m, c), 1e-12);
  }
}

TEST(ApplyMean, DirectMatchesExplicitPartialSums) {
  const Grid g({3, 3});
  const auto f = random_function(g, 41);
  for (const auto& b : {AxisSubset::all(2), AxisSubset::none(2), AxisSubset(2, {1})}) {
    const MeanSpec spec(b, {5, 7});
    EXPECT_LT(max_abs_difference(apply_mean(f, spec, MeanMethod::kDirect), mean_oracle(f, spec)), 1e-12);
  }
}

TEST(ApplyMean, ThreeWayEquivalence) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 10; ++t) {
    const bool two = t % 2;
    const Grid g = two ? Grid({4, 5}) : Grid({6});
    const auto f = random_function(g, 100 + t);
    const int d = static_cast<int>(g.dims());
    std::vector<int> members;
    for (int a = 1; a <= d; ++a) if (rng() & 1) members.push_back(a);
    std::vector<std::uint64_t> orders;
    for (int a = 0; a < d; ++a) orders.push_back(2 + rng() % (g.extent(a) - 1));
    const MeanSpec spec(AxisSubset(d, members), orders);
    const auto direct = apply_mean(f, spec, MeanMethod::kDirect);
    const auto spectral = apply_mean(f, spec, MeanMethod::kSpectral);
    const auto conv = dyadic_convolve(f, tensor_kernel(spec, g));
    EXPECT_LT(max_abs_difference(direct, spectral), 1e-9);
    EXPECT_LT(max_abs_difference(conv, spectral), 1e-9);
  }
}

TEST(ApplyMean, DirectMatchesSpectralOneDim) {
  const Grid g({10});
  const auto f = random_function(g, 47);
  for (std::uint64_t n : {2u, 5u, 17u, 32u}) {
    const auto spec = MeanSpec::uniform(AxisSubset::all(1), n);
    EXPECT_LT(max_abs_difference(apply_mean(f, spec, MeanMethod::kDirect), apply_mean(f, spec)), 1e-9);
  }
}

TEST(ApplyMean, EigenfunctionRelation) {
  const Grid g({6});
  for (std::uint64_t j : {0u, 1u, 3u, 10u, 40u}) {
    const std::uint64_t idx[] = {j};
    const auto w = walsh_product(g, idx);
    for (std::uint64_t n : {2u, 8u, 33u, 64u}) {
      const double fj = j + 2 <= n ? l_oracle(n - j) / l_oracle(n) : 0.0;
      const double gj = j + 2 <= n ? (l_oracle(n) - l_oracle(j + 1)) / l_oracle(n) : 0.0;
      EXPECT_LT(max_abs_difference(apply_mean(w, MeanSpec::uniform(AxisSubset::all(1), n)), fj * w), 1e-13);
      EXPECT_LT(max_abs_difference(apply_mean(w, MeanSpec::uniform(AxisSubset::none(1), n)), gj * w), 1e-13);
    }
  }
}

TEST(Convolve, Examples) {
  const Grid g({5});
  const auto f = random_function(g, 53);
  DyadicFunction d(g), one(g);
  for (std::size_t c = 0; c < g.size(); ++c) {
    d[c] = dirichlet(32, c, 5);
    one[c] = 1.0;
  }
  EXPECT_LT(max_abs_difference(dyadic_convolve(f, d), f), 1e-12);
  const auto c = dyadic_convolve(f, one);
  for (double v : c.values()) EXPECT_NEAR(v, integral(f), 1e-14);
  EXPECT_THROW(dyadic_convolve(f, DyadicFunction(Grid({4}))), Error);
}
