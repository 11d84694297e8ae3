#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "airtime/analytic.hpp"
#include "airtime/baseline_io.hpp"
#include "airtime/errors.hpp"
#include "generators.hpp"

namespace airtime {
namespace {

std::vector<NodeSpec> at_rates(std::initializer_list<double> rates) {
  std::vector<NodeSpec> nodes;
  int i = 0;
  for (double r : rates) {
    NodeSpec n;
    n.id = "n" + std::to_string(++i);
    n.rate_mbps = r;
    nodes.push_back(n);
  }
  return nodes;
}

const BaselineTable& measured() {
  static const BaselineTable t = BaselineTable::measured_80211b();
  return t;
}

TEST(BaselineTable, LooksUpMeasuredEntries) {
  EXPECT_DOUBLE_EQ(measured().lookup(11, 1500), 5.189);
  EXPECT_DOUBLE_EQ(measured().lookup(1, 1500), 0.806);
  EXPECT_THROW(measured().lookup(3, 1500), MissingEntry);
  EXPECT_THROW(measured().lookup(11, 1000), MissingEntry);
}

TEST(BaselineTable, RejectsGammaAtOrAboveRate) {
  BaselineTable t;
  EXPECT_THROW(t.insert(2, 1500, 2.0), std::invalid_argument);
  EXPECT_THROW(t.insert(2, 1500, 0.0), std::invalid_argument);
  EXPECT_THROW(t.insert(2, 0, 1.0), std::invalid_argument);
  EXPECT_NO_THROW(t.insert(2, 1500, 1.99));
}

TEST(BaselineTable, ValidateRequiresMonotoneGamma) {
  EXPECT_NO_THROW(measured().validate());

  BaselineTable rate_inversion;
  rate_inversion.insert(2, 1500, 1.5);
  rate_inversion.insert(5.5, 1500, 1.4);
  EXPECT_THROW(rate_inversion.validate(), std::invalid_argument);

  BaselineTable size_inversion;
  size_inversion.insert(11, 500, 3.0);
  size_inversion.insert(11, 1500, 2.9);
  EXPECT_THROW(size_inversion.validate(), std::invalid_argument);

  BaselineTable unrelated;  // different rate and size: not comparable
  unrelated.insert(1, 1500, 0.8);
  unrelated.insert(11, 500, 0.5);
  EXPECT_NO_THROW(unrelated.validate());
}

TEST(BaselineIo, RoundTripsThroughCsv) {
  std::istringstream in(to_csv(measured()));
  const BaselineTable back = read_baseline_csv(in, "mem");
  EXPECT_EQ(back.entries(), measured().entries());
}

TEST(BaselineIo, ReportsLineOfBadRow) {
  std::istringstream in("rate_mbps,packet_bytes,gamma_mbps\n11,1500,5.189\n5.5,abc,3.3\n");
  try {
    read_baseline_csv(in, "mem");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.field(), "packet_bytes");
  }
}

TEST(BaselineIo, RejectsWrongHeader) {
  std::istringstream in("rate,bytes,gamma\n11,1500,5\n");
  EXPECT_THROW(read_baseline_csv(in, "mem"), ParseError);
}

TEST(DcfShares, SymmetricPairSplitsEvenly) {
  const auto s = dcf_shares(at_rates({11, 11}), measured());
  EXPECT_DOUBLE_EQ(s[0], 0.5);
  EXPECT_DOUBLE_EQ(s[1], 0.5);
}

TEST(DcfShares, SlowNodeHoldsTheChannel) {
  const auto s = dcf_shares(at_rates({1, 11}), measured());
  EXPECT_NEAR(s[0], 0.866, 5e-4);
  EXPECT_NEAR(s[1], 0.134, 5e-4);
  EXPECT_NEAR(s[0] / s[1], 6.44, 5e-3);
}

TEST(DcfShares, ThreeAndFourNodeMixes) {
  const auto three = dcf_shares(at_rates({1, 2, 11}), measured());
  EXPECT_NEAR(three[0], 0.58991, 1e-5);
  EXPECT_NEAR(three[1], 0.31846, 1e-5);
  EXPECT_NEAR(three[2], 0.09163, 1e-5);
  EXPECT_NEAR(three[0] + three[1] + three[2], 1.0, 1e-12);

  const auto four = dcf_shares(at_rates({1, 2, 11, 11}), measured());
  EXPECT_NEAR(four[0], 0.54039, 1e-5);
  EXPECT_NEAR(four[1], 0.29173, 1e-5);
  EXPECT_NEAR(four[2], 0.08394, 1e-5);
  EXPECT_NEAR(four[3], 0.08394, 1e-5);
}

TEST(DcfThroughputs, FourNodeMixGetsEqualThroughput) {
  const auto r = dcf_throughputs(at_rates({1, 2, 11, 11}), measured());
  for (const auto& n : r.nodes) EXPECT_NEAR(n.throughput_mbps, 0.436, 1e-3);
  EXPECT_NEAR(r.total_mbps, 1.742, 5e-3);
  EXPECT_EQ(r.regime, Regime::rf);
}

TEST(DcfThroughputs, SingleNodeGetsBaseline) {
  const auto r = dcf_throughputs(at_rates({11}), measured());
  EXPECT_DOUBLE_EQ(r.total_mbps, 5.189);
  EXPECT_DOUBLE_EQ(r.nodes[0].share_of_time, 1.0);
}

TEST(DcfThroughputs, OneVersusEleven) {
  const auto r = dcf_throughputs(at_rates({1, 11}), measured());
  EXPECT_NEAR(r.nodes[0].throughput_mbps, 0.698, 1e-3);
  EXPECT_NEAR(r.nodes[1].throughput_mbps, 0.698, 1e-3);
  EXPECT_NEAR(r.total_mbps, 1.395, 1e-3);
}

TEST(DcfThroughputs, RequiresNodes) {
  EXPECT_THROW(dcf_throughputs(std::vector<NodeSpec>{}, measured()), std::invalid_argument);
  EXPECT_THROW(dcf_throughputs(at_rates({5.5, 3}), measured()), MissingEntry);
}

TEST(TfThroughputs, FourNodeMix) {
  const auto r = tf_throughputs(at_rates({1, 2, 11, 11}), measured());
  const double expected[] = {0.202, 0.373, 1.30, 1.30};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(r.nodes[i].throughput_mbps, expected[i], 5e-3);
    EXPECT_DOUBLE_EQ(r.nodes[i].share_of_time, 0.25);
  }
  EXPECT_NEAR(r.total_mbps, 3.17, 1e-2);
}

TEST(TfThroughputs, PairAndSingle) {
  const auto pair = tf_throughputs(at_rates({1, 11}), measured());
  EXPECT_NEAR(pair.nodes[0].throughput_mbps, 0.403, 1e-3);
  EXPECT_NEAR(pair.nodes[1].throughput_mbps, 2.595, 1e-3);
  EXPECT_NEAR(pair.total_mbps, 2.998, 1e-3);
  EXPECT_DOUBLE_EQ(tf_throughputs(at_rates({2}), measured()).total_mbps, 1.493);
}

TEST(CompareRegimes, FourNodeMixImprovesByAboutEightyTwoPercent) {
  const auto c = compare_regimes(at_rates({1, 2, 11, 11}), measured());
  EXPECT_NEAR(c.improvement, 0.82, 0.01);
  ASSERT_EQ(c.delta_mbps.size(), 4u);
  EXPECT_LT(c.delta_mbps[0], 0.0);
  EXPECT_GT(c.delta_mbps[3], 0.0);
  for (bool holds : c.baseline_holds) EXPECT_TRUE(holds);
}

TEST(CompareRegimes, IdenticalNodesGainNothing) {
  const auto c = compare_regimes(at_rates({5.5, 5.5, 5.5}), measured());
  EXPECT_EQ(c.improvement, 0.0);
}

TEST(CompareRegimes, OneVersusEleven) {
  EXPECT_NEAR(compare_regimes(at_rates({1, 11}), measured()).improvement, 1.15, 0.01);
}

TEST(FairnessGap, Examples) {
  EXPECT_EQ(fairness_gap(0.5, 0.5), 0.0);
  const auto s = dcf_shares(at_rates({1, 11}), measured());
  EXPECT_NEAR(fairness_gap(s[0], s[1]), 0.732, 1e-3);
  const auto tf = tf_throughputs(at_rates({1, 11}), measured());
  EXPECT_EQ(fairness_gap(tf.nodes[0].share_of_time, tf.nodes[1].share_of_time), 0.0);
}

// ---- properties -------------------------------------------------------------

TEST(AnalyticProperty, SharesSumToOneAndTotalsAdd) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    auto mix = testing::random_gamma_mix(rng, testing::uniform_int(rng, 1, 10), false);
    const auto rf = dcf_throughputs(mix.nodes, mix.table);
    const auto tf = tf_throughputs(mix.nodes, mix.table);
    for (const auto* r : {&rf, &tf}) {
      double shares = 0.0, total = 0.0;
      for (const auto& n : r->nodes) {
        shares += n.share_of_time;
        total += n.throughput_mbps;
      }
      EXPECT_NEAR(shares, 1.0, 1e-9);
      EXPECT_NEAR(total, r->total_mbps, 1e-9);
    }
  }
}

TEST(AnalyticProperty, EqualSizesGiveEqualDcfThroughput) {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    auto mix = testing::random_gamma_mix(rng, testing::uniform_int(rng, 2, 10), false);
    const auto rf = dcf_throughputs(mix.nodes, mix.table);
    for (const auto& n : rf.nodes) EXPECT_NEAR(n.throughput_mbps, rf.nodes[0].throughput_mbps, 1e-9);
  }
}

TEST(AnalyticProperty, SingleRateNetworkRegimesCoincide) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::uniform_int(rng, 1, 10);
    const double rate = testing::pick_rate(rng);
    std::vector<NodeSpec> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      nodes[i].id = std::to_string(i);
      nodes[i].rate_mbps = rate;
    }
    const auto rf = dcf_throughputs(nodes, measured());
    const auto tf = tf_throughputs(nodes, measured());
    for (int i = 0; i < n; ++i) EXPECT_NEAR(rf.nodes[i].throughput_mbps, tf.nodes[i].throughput_mbps, 1e-9);
  }
}

TEST(AnalyticProperty, TimeFairThroughputIgnoresOtherRates) {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    auto nodes = at_rates({1, 1, 1, 1});
    for (auto& n : nodes) n.rate_mbps = testing::pick_rate(rng);
    const auto before = tf_throughputs(nodes, measured()).nodes[0].throughput_mbps;
    for (std::size_t i = 1; i < nodes.size(); ++i) nodes[i].rate_mbps = testing::pick_rate(rng);
    EXPECT_DOUBLE_EQ(tf_throughputs(nodes, measured()).nodes[0].throughput_mbps, before);
  }
}

TEST(AnalyticProperty, PermutationPermutesOutputs) {
  Rng rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    auto mix = testing::random_gamma_mix(rng, testing::uniform_int(rng, 2, 8), false);
    const auto perm = testing::random_permutation(rng, mix.nodes.size());
    std::vector<NodeSpec> shuffled;
    for (auto p : perm) shuffled.push_back(mix.nodes[p]);

    const auto a = compare_regimes(mix.nodes, mix.table);
    const auto b = compare_regimes(shuffled, mix.table);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      EXPECT_EQ(b.rf.nodes[i].id, a.rf.nodes[perm[i]].id);
      EXPECT_NEAR(b.rf.nodes[i].share_of_time, a.rf.nodes[perm[i]].share_of_time, 1e-12);
      EXPECT_NEAR(b.rf.nodes[i].throughput_mbps, a.rf.nodes[perm[i]].throughput_mbps, 1e-12);
      EXPECT_NEAR(b.tf.nodes[i].throughput_mbps, a.tf.nodes[perm[i]].throughput_mbps, 1e-12);
    }
    EXPECT_NEAR(a.improvement, b.improvement, 1e-12);
  }
}

TEST(AnalyticProperty, TimeFairTotalDominatesThroughputFair) {
  Rng rng(16);
  for (int trial = 0; trial < 1000; ++trial) {
    const bool equal = rng.bernoulli(0.2);
    auto mix = testing::random_gamma_mix(rng, testing::uniform_int(rng, 1, 12), equal);
    const auto c = compare_regimes(mix.nodes, mix.table);
    const bool all_equal = std::adjacent_find(mix.gamma.begin(), mix.gamma.end(), std::not_equal_to<>()) ==
                           mix.gamma.end();
    if (all_equal) {
      EXPECT_NEAR(c.tf.total_mbps, c.rf.total_mbps, 1e-9);
    } else {
      EXPECT_GT(c.tf.total_mbps, c.rf.total_mbps + 1e-9);
    }
  }
}

}  // namespace
}  // namespace airtime
