#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "anonlip/counts.hpp"
#include "anonlip/errors.hpp"
#include "anonlip/lipschitz.hpp"
#include "anonlip/oracle.hpp"
#include "support/brute_force.hpp"

namespace anonlip {
namespace {

std::vector<std::vector<int>> raw(const std::vector<CountVector>& v) {
  std::vector<std::vector<int>> out;
  for (const auto& c : v) out.push_back(c.counts());
  return out;
}

TEST(EnumerateCountVectors, Examples) {
  EXPECT_EQ(raw(enumerate_count_vectors(0, 3)), (std::vector<std::vector<int>>{{0, 0, 0}}));
  EXPECT_EQ(raw(enumerate_count_vectors(1, 2)), (std::vector<std::vector<int>>{{0, 1}, {1, 0}}));
  EXPECT_EQ(raw(enumerate_count_vectors(2, 2)),
            (std::vector<std::vector<int>>{{0, 2}, {1, 1}, {2, 0}}));
}

TEST(CountSpace, SizeOrderAndRank) {
  for (int m = 0; m <= 8; ++m) {
    for (int k = 2; k <= 5; ++k) {
      const CountSpace space(m, k);
      ASSERT_EQ(space.size(), binomial(m + k - 1, k - 1));
      for (std::size_t r = 0; r < space.size(); ++r) {
        EXPECT_EQ(space.rank(space.at(r)), r);
        EXPECT_EQ(space.at(r).total(), m);
        if (r > 0) EXPECT_LT(space.at(r - 1), space.at(r));
      }
    }
  }
  const CountSpace space(3, 3);
  EXPECT_THROW(space.rank(CountVector({1, 1, 2})), std::invalid_argument);
  EXPECT_THROW(space.rank(CountVector({1, 2})), std::invalid_argument);
}

TEST(Binomial, SmallValuesAndOverflow) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(0, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(60, 30), 118264581564861424u);
  EXPECT_THROW(binomial(200, 100), std::overflow_error);
}

TEST(PerturbedActionLaw, Examples) {
  EXPECT_EQ(perturbed_action_law(0, 2, 0.5), (std::vector<double>{0.75, 0.25}));
  const auto b = perturbed_action_law(2, 3, 0.3);
  EXPECT_NEAR(b[0], 0.1, 1e-15);
  EXPECT_NEAR(b[1], 0.1, 1e-15);
  EXPECT_NEAR(b[2], 0.8, 1e-15);
  const auto c = perturbed_action_law(0, 4, 0.8);
  EXPECT_NEAR(c[0], 0.4, 1e-15);
  EXPECT_NEAR(c[3], 0.2, 1e-15);
  EXPECT_THROW(perturbed_action_law(3, 3, 0.3), std::invalid_argument);
  EXPECT_THROW(perturbed_action_law(-1, 3, 0.3), std::invalid_argument);
}

TEST(CountDistribution, Examples) {
  const CountDistribution empty = count_distribution({}, 3, 0.4);
  EXPECT_EQ(empty.probability(CountVector({0, 0, 0})), 1.0);

  const std::vector<int> one{0};
  const CountDistribution d1 = count_distribution(one, 2, 0.5);
  EXPECT_EQ(d1.probability(CountVector({1, 0})), 0.75);
  EXPECT_EQ(d1.probability(CountVector({0, 1})), 0.25);

  const std::vector<int> two{2, 2};
  const CountDistribution d2 = count_distribution(two, 3, 0.3);
  EXPECT_NEAR(d2.probability(CountVector({0, 0, 2})), 0.64, 1e-15);
}

TEST(CountDistribution, InvariantUnderPermutationBitForBit) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> profile(7);
    for (int& a : profile) a = static_cast<int>(rng() % 4);
    const CountDistribution base = count_distribution(profile, 4, 0.35);
    std::shuffle(profile.begin(), profile.end(), rng);
    EXPECT_TRUE(count_distribution(profile, 4, 0.35) == base);
  }
}

TEST(ShiftedTv, Examples) {
  EXPECT_EQ(shifted_tv(count_distribution({}, 3, 0.5), 0, 1), 1.0);
  const std::vector<int> profile{1, 2, 0};
  const CountDistribution d = count_distribution(profile, 3, 0.4);
  EXPECT_EQ(shifted_tv(d, 1, 1), 0.0);
  // Hand enumeration over the six-point support: 1/2 (0.1 + 0.8 + 0.1 + 0.8).
  const std::vector<int> three{2};
  EXPECT_NEAR(shifted_tv(count_distribution(three, 3, 0.3), 0, 1), 0.9, 1e-15);
}

TEST(ShiftedTv, WithinUnitInterval) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> profile(static_cast<std::size_t>(rng() % 6));
    for (int& a : profile) a = static_cast<int>(rng() % 3);
    const CountDistribution d = count_distribution(profile, 3, 0.05 + 0.9 * (trial / 50.0));
    const double tv = shifted_tv(d, static_cast<int>(rng() % 3), static_cast<int>(rng() % 3));
    EXPECT_GE(tv, 0.0);
    EXPECT_LE(tv, 1.0 + 1e-15);
  }
}

TEST(LambdaOracle, Examples) {
  EXPECT_DOUBLE_EQ(lambda_oracle(2, 3, 0.5).value, 0.5);
  EXPECT_DOUBLE_EQ(lambda_oracle(4, 2, 0.5).value, 0.3125);
  const OracleResult r = lambda_oracle(4, 3, 0.5);
  EXPECT_NEAR(r.value, 13.0 / 36.0, 1e-15);
  EXPECT_EQ(r.worst_class, CountVector({0, 0, 2}));  // everyone on the third action
}

TEST(LambdaOracle, MatchesRawProfileEnumeration) {
  for (double delta : {0.1, 0.5, 0.9}) {
    for (int k : {2, 3, 4}) {
      for (int n = 2; n <= (k == 4 ? 5 : 6); ++n) {
        EXPECT_NEAR(lambda_oracle(n, k, delta).value,
                    testing::lambda_by_enumeration(n, k, delta), 1e-14)
            << "n=" << n << " k=" << k << " delta=" << delta;
      }
    }
  }
}

TEST(LambdaOracle, WorstClassIsEveryoneOnANonDeviatingAction) {
  for (double delta : {0.1, 0.5, 0.9}) {
    for (int k : {3, 4}) {
      for (int n = 2; n <= 8; ++n) {
        const OracleResult r = lambda_oracle(n, k, delta);
        std::vector<int> all_last(static_cast<std::size_t>(k), 0);
        all_last.back() = n - 2;
        EXPECT_EQ(r.worst_class, CountVector(all_last));
        std::vector<int> profile(static_cast<std::size_t>(n - 2), 2);
        EXPECT_NEAR((1 - delta) * shifted_tv(count_distribution(profile, k, delta), 0, 1),
                    r.value, 1e-13);
      }
    }
  }
}

TEST(LambdaOracle, RelabellingBystanderActionsDoesNotMatter) {
  // Swapping the roles of actions 2 and 3 maps every class to another class.
  for (double delta : {0.2, 0.7}) {
    const std::vector<int> a{2, 2, 3, 0, 3};
    const std::vector<int> b{3, 3, 2, 0, 2};
    EXPECT_NEAR(shifted_tv(count_distribution(a, 4, delta), 0, 1),
                shifted_tv(count_distribution(b, 4, delta), 0, 1), 1e-15);
  }
}

TEST(LambdaOracle, AgreesWithClosedForms) {
  for (double delta : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    for (int n = 2; n <= 8; ++n) {
      for (int k : {3, 4}) {
        EXPECT_NEAR(lambda_k3(n, k, delta).value, lambda_oracle(n, k, delta).value, 1e-9);
      }
    }
    for (int n = 2; n <= 12; ++n) {
      EXPECT_NEAR(lambda_k2(n, delta).value, lambda_oracle(n, 2, delta).value, 1e-9);
    }
  }
}

TEST(LambdaOracle, BudgetAndArguments) {
  EXPECT_THROW(lambda_oracle(15, 3, 0.5), BudgetExceeded);
  EXPECT_THROW(lambda_oracle(6, 5, 0.5), BudgetExceeded);
  EXPECT_NO_THROW(lambda_oracle(6, 5, 0.5, OracleBudget{14, 5}));
  EXPECT_THROW(lambda_oracle(1, 3, 0.5), std::invalid_argument);
  EXPECT_THROW(lambda_oracle(4, 3, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace anonlip
