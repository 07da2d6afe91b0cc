#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "recsys/storage.hpp"
#include "support.hpp"

using namespace recsys;

TEST(Perrin, MatchesRecursionAndFrozenValues) {
  const auto z = oracle::perrin_by_recursion(60);
  for (int n = 0; n <= 60; ++n) EXPECT_EQ(perrin_count(n), z[static_cast<std::size_t>(n)]) << n;
  for (int n = 0; n < 16; ++n) EXPECT_EQ(perrin_count(n), oracle::kPerrin0to15[static_cast<std::size_t>(n)]);
  EXPECT_EQ(perrin_count(40), oracle::kPerrin40);
  EXPECT_EQ(perrin_count(60), oracle::kPerrin60);
  EXPECT_EQ(perrin_count(200).str(), "2658793989922287946990250");
  EXPECT_THROW(perrin_count(-1), DomainError);
}

// Periodic points of the binary system against words whose periodic
// extension avoids the forbidden set.
TEST(PeriodicPoints, BinarySystemMatchesBruteForce) {
  const auto g = presentation_from_forbidden(2, 3, oracle::binary_forbidden());
  for (int n = 1; n <= 15; ++n) {
    const auto pts = periodic_points(g, n);
    ASSERT_TRUE(pts.words.has_value());
    const auto brute = oracle::brute_periodic_words(2, n, oracle::binary_forbidden(), 3);
    EXPECT_EQ(*pts.words, brute) << "n=" << n;
    EXPECT_EQ(pts.count, brute.size());
    EXPECT_EQ(pts.count, perrin_count(n));
  }
}

TEST(PeriodicPoints, CountsAndCap) {
  const auto g = truncated_debruijn_system(8).presentation;
  for (int n = 1; n <= 8; ++n) {
    const auto pts = periodic_points(g, n);
    EXPECT_EQ(pts.count, trace_power(adjacency(g), n));
    ASSERT_TRUE(pts.words.has_value());
    EXPECT_EQ(pts.words->size(), pts.count);
  }
  const auto capped = periodic_points(g, 10, 5);
  EXPECT_FALSE(capped.words.has_value());
  EXPECT_GT(capped.count, 5);
  EXPECT_THROW(periodic_points(g, 0), DomainError);
}

TEST(CycleCode, ValidAndShiftClosed) {
  for (const auto& s : {exhaustive_max_capacity(2, 1, 1).witness, truncated_debruijn_system(8),
                        edge_cover_system(2, EdgeCoverMode::square, 1)}) {
    for (int n = 3; n <= 12; ++n) {
      const auto c = storage_code_for_cycle(s, n);
      EXPECT_TRUE(verify_storage_code(c).ok) << s.provenance.construction << " n=" << n;
      EXPECT_TRUE(is_shift_closed(c));
      EXPECT_EQ(c.codewords.size(), trace_power(adjacency(s.presentation), n));
      EXPECT_NEAR(c.rate(), std::log(static_cast<double>(c.codewords.size())) / (n * std::log(s.params.q)), 1e-15);
    }
  }
}

TEST(CycleCode, RateApproachesCapacity) {
  const auto s = exhaustive_max_capacity(2, 1, 1).witness;
  const auto c = storage_code_for_cycle(s, 40);
  EXPECT_EQ(c.codewords.size(), static_cast<std::size_t>(oracle::kPerrin40));
  EXPECT_NEAR(c.rate(), oracle::kLog2Plastic, 0.01);
}

TEST(CycleCode, RejectsBadArguments) {
  const auto s = exhaustive_max_capacity(2, 1, 1).witness;
  EXPECT_THROW(storage_code_for_cycle(s, 2), DomainError);
  EXPECT_THROW(storage_code_for_cycle(marker_system(3, 1), 6), DomainError);
  EXPECT_THROW(storage_code_for_cycle(s, 40, 1000), DomainError);
}

TEST(CycleCode, VerifierFindsViolations) {
  auto c = storage_code_for_cycle(exhaustive_max_capacity(2, 1, 1).witness, 5);
  auto tampered = c;
  tampered.codewords.insert({0, 0, 0, 1, 1});
  const auto res = verify_storage_code(tampered);
  EXPECT_FALSE(res.ok);
  ASSERT_TRUE(res.violation.has_value());
  EXPECT_EQ(res.violation->codeword, (Word{0, 0, 0, 1, 1}));

  auto unclosed = c;
  unclosed.codewords.erase(unclosed.codewords.begin());
  EXPECT_FALSE(is_shift_closed(unclosed));
}

TEST(CycleCode, TextRoundTrip) {
  const auto c = storage_code_for_cycle(truncated_debruijn_system(6), 7);
  std::stringstream ss;
  write_code(ss, c);
  const auto back = read_code(ss, c.table);
  EXPECT_EQ(back.n, c.n);
  EXPECT_EQ(back.q, c.q);
  EXPECT_EQ(back.codewords, c.codewords);
  std::istringstream bad("x y\n");
  EXPECT_THROW(read_code(bad, c.table), DomainError);
}
