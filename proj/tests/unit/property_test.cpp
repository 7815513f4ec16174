#include <gtest/gtest.h>

#include "properties.hpp"

namespace fedfraud {
namespace {

TEST(Property, PartitionConservesRows) {
  const auto r = property::partition_conservation(101, 100);
  EXPECT_TRUE(r.passed()) << r.failures << " failures; " << r.first_failure;
}

TEST(Property, ResamplingKeepsEveryFraudRow) {
  const auto r = property::resampling_preserves_fraud(102, 100);
  EXPECT_TRUE(r.passed()) << r.failures << " failures; " << r.first_failure;
}

TEST(Property, CheckpointRoundTripIsBitExact) {
  const auto r = property::checkpoint_round_trip(103, 100);
  EXPECT_TRUE(r.passed()) << r.failures << " failures; " << r.first_failure;
}

TEST(Property, AucIgnoresMonotoneTransforms) {
  const auto r = property::auc_monotone_invariance(104, 100);
  EXPECT_TRUE(r.passed()) << r.failures << " failures; " << r.first_failure;
}

}  // namespace
}  // namespace fedfraud
