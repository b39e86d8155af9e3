#include <gtest/gtest.h>

#include <random>

#include "walsh/dyadic.hpp"
#include "walsh/error.hpp"

using namespace walsh;

namespace {

DyadicPoint pt(std::uint64_t c, int k) { return DyadicPoint::on_line(c, k); }

// Oracle: r_n from the definition r_0(2^n x mod 1) on the exact dyadic value.
int rademacher_oracle(int n, double x) {
  const double y = std::ldexp(x, n);
  return (y - std::floor(y)) < 0.5 ? 1 : -1;
}

int walsh_oracle(std::uint64_t n, double x) {
  int s = 1;
  for (int bit = 0; n >> bit; ++bit) {
    if ((n >> bit) & 1) s *= rademacher_oracle(bit, x);
  }
  return s;
}

}  // namespace

TEST(DyadicAdd, Examples) {
  EXPECT_EQ(dyadic_add(DyadicPoint::from_real(0.25, 3), DyadicPoint::from_real(0.5, 3)).value(), 0.75);
  EXPECT_EQ(dyadic_add(DyadicPoint::from_real(0.625, 3), DyadicPoint::from_real(0.25, 3)).value(), 0.875);
  for (std::uint64_t c = 0; c < 8; ++c) EXPECT_EQ(dyadic_add(pt(c, 3), pt(c, 3)).value(), 0.0);
}

TEST(DyadicAdd, ResolutionMismatch) {
  try {
    dyadic_add(pt(1, 3), pt(1, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResolutionMismatch);
  }
}

TEST(DyadicAdd, GroupAxiomsExhaustive) {
  for (int k = 1; k <= 8; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    const auto zero = pt(0, k);
    for (std::uint64_t a = 0; a < n; ++a) {
      EXPECT_EQ(dyadic_add(pt(a, k), zero), pt(a, k));
      for (std::uint64_t b = 0; b < n; ++b) {
        EXPECT_EQ(dyadic_add(pt(a, k), pt(b, k)), dyadic_add(pt(b, k), pt(a, k)));
        if (k <= 5) {
          for (std::uint64_t c = 0; c < n; ++c) {
            EXPECT_EQ(dyadic_add(dyadic_add(pt(a, k), pt(b, k)), pt(c, k)),
                      dyadic_add(pt(a, k), dyadic_add(pt(b, k), pt(c, k))));
          }
        }
      }
    }
  }
}

TEST(DyadicPoint, RejectsOutOfRange) {
  EXPECT_THROW(DyadicPoint({8}, {3}), Error);
  EXPECT_THROW(DyadicPoint({1, 2}, {3}), Error);
}

TEST(AxisSubset, Complement) {
  const AxisSubset b(4, {3, 1});
  EXPECT_EQ(b.members(), (std::vector<int>{1, 3}));
  EXPECT_EQ(b.complement().members(), (std::vector<int>{2, 4}));
  EXPECT_EQ(AxisSubset::all(3).complement(), AxisSubset::none(3));
  EXPECT_TRUE(b.contains_axis(0));
  EXPECT_FALSE(b.contains_axis(1));
  EXPECT_THROW(AxisSubset(2, {3}), Error);
  EXPECT_THROW(AxisSubset(2, {1, 1}), Error);
}

TEST(Rademacher, Examples) {
  EXPECT_EQ(rademacher(0, 0.3), 1);
  EXPECT_EQ(rademacher(1, 0.3), -1);
  EXPECT_EQ(rademacher(2, 0.875), -1);
}

TEST(Walsh, Examples) {
  EXPECT_EQ(walsh_function(3, 0.3), -1);
  for (std::uint64_t n = 0; n < 64; ++n) {
    EXPECT_EQ(walsh_function(n, 0.0), 1);
    EXPECT_EQ(walsh_function(0, DyadicPoint::from_real(n / 64.0, 6)), 1);
  }
}

TEST(Walsh, MatchesRademacherProductOracle) {
  for (int k = 1; k <= 8; ++k) {
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << k); ++c) {
      const double x = std::ldexp(static_cast<double>(c), -k);
      for (int n = 0; n < k + 2; ++n) EXPECT_EQ(rademacher(n, c, k), rademacher_oracle(n, x));
      for (std::uint64_t n = 0; n < (std::uint64_t{1} << k); ++n) {
        ASSERT_EQ(walsh_function(n, c, k), walsh_oracle(n, x)) << n << " " << c << " " << k;
      }
    }
  }
}

TEST(Walsh, GroupLawRandomized) {
  std::mt19937_64 rng(7);
  for (int k = 1; k <= 12; ++k) {
    for (int trial = 0; trial < 2000; ++trial) {
      const std::uint64_t n = rng() & 0xffff, m = rng() & 0xffff;
      const std::uint64_t c = rng() & ((std::uint64_t{1} << k) - 1);
      ASSERT_EQ(walsh_function(n, c, k) * walsh_function(m, c, k), walsh_function(n ^ m, c, k));
    }
  }
}

TEST(Walsh, TranslationCharacter) {
  std::mt19937_64 rng(11);
  for (int k = 1; k <= 12; ++k) {
    const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    for (int trial = 0; trial < 2000; ++trial) {
      const std::uint64_t n = rng() & mask;
      const auto x = pt(rng() & mask, k), y = pt(rng() & mask, k);
      ASSERT_EQ(walsh_function(n, dyadic_add(x, y)), walsh_function(n, x) * walsh_function(n, y));
    }
  }
}

TEST(Dirichlet, Examples) {
  EXPECT_EQ(dirichlet(4, 0.1), 4.0);
  EXPECT_EQ(dirichlet(4, 0.3), 0.0);
  EXPECT_EQ(dirichlet(3, 0.0), 3.0);
  for (std::uint64_t c = 0; c < 16; ++c) EXPECT_EQ(dirichlet(1, c, 4), 1.0);
}

TEST(Dirichlet, PowerOfTwoClosedForm) {
  for (int m = 0; m <= 12; ++m) {
    const int k = std::max(m, 1) + 1;
    const std::uint64_t len = std::uint64_t{1} << m;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << k); ++c) {
      double sum = 0.0;
      for (std::uint64_t j = 0; j < len; ++j) sum += walsh_function(j, c, k);
      const double closed = std::ldexp(static_cast<double>(c), -k) < std::ldexp(1.0, -m) ? static_cast<double>(len) : 0.0;
      ASSERT_EQ(sum, closed);
      ASSERT_EQ(dirichlet(len, c, k), closed);
      ASSERT_EQ(dirichlet_power_of_two(m, c, k), closed);
    }
  }
}

TEST(Dirichlet, GeneralOrderMatchesSum) {
  const int k = 7;
  for (std::uint64_t n = 0; n <= 128; ++n) {
    for (std::uint64_t c = 0; c < 128; ++c) {
      double sum = 0.0;
      for (std::uint64_t j = 0; j < n; ++j) sum += walsh_oracle(j, c / 128.0);
      ASSERT_EQ(dirichlet(n, c, k), sum);
    }
  }
}

TEST(Bits, ReverseAndLog) {
  EXPECT_EQ(reverse_bits(0b0011, 4), 0b1100u);
  EXPECT_EQ(reverse_bits(1, 1), 1u);
  EXPECT_EQ(exact_log2(1024), 10);
  EXPECT_THROW(exact_log2(12), Error);
}
