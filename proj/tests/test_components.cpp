// Copyright (c) 2026 The livseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "livseg/components.hpp"
#include "oracles.hpp"

using namespace livseg;

TEST(EquivalenceTable, MinimumRootAndCompression) {
  EquivalenceTable t;
  const Label a = t.make_label();
  const Label b = t.make_label();
  const Label c = t.make_label();
  EXPECT_EQ(a, 1u);
  EXPECT_EQ(t.unite(c, b), b);
  EXPECT_EQ(t.unite(b, a), a);
  EXPECT_EQ(t.find(c), a);
  EXPECT_EQ(t.find(t.find(c)), t.find(c));
  EXPECT_EQ(t.unite(a, c), a);  // already joined
  EXPECT_EQ(t.merges(), 2u);
  EXPECT_EQ(t.size(), 3u);
}

TEST(LabelComponents, EmptyMask) {
  const auto l = label_components(BinaryMask(5, 4));
  EXPECT_EQ(l.count, 0u);
  EXPECT_EQ(l.labels, LabelImage(5, 4, 0));
  EXPECT_TRUE(component_sizes(l).empty());
}

TEST(LabelComponents, TwoBarsInScanOrder) {
  const auto m = oracle::mask_from_rows({
      {0, 1, 1, 0},
      {0, 0, 0, 0},
      {1, 1, 0, 0},
      {0, 0, 0, 0}});
  const auto l = label_components(m);
  EXPECT_EQ(l.count, 2u);
  const LabelImage expected(4, 4, std::vector<Label>{
      0, 1, 1, 0,
      0, 0, 0, 0,
      2, 2, 0, 0,
      0, 0, 0, 0});
  EXPECT_EQ(l.labels, expected);
  int n = 0;
  EXPECT_TRUE(oracle::same_partition(oracle::flood_fill_labels(m, &n), l.labels.buffer()));
  EXPECT_EQ(n, 2);
}

TEST(LabelComponents, UShapeMergesArms) {
  const auto m = oracle::mask_from_rows({
      {1, 0, 1},
      {1, 0, 1},
      {1, 1, 1}});
  const auto l = label_components(m);
  EXPECT_EQ(l.count, 1u);
  EXPECT_EQ(l.provisional_labels, 2u);
  EXPECT_EQ(l.merges, 1u);
  EXPECT_EQ(l.labels, LabelImage(3, 3, std::vector<Label>{1, 0, 1, 1, 0, 1, 1, 1, 1}));
}

TEST(LabelComponents, DiagonalsAreSeparate) {
  const auto m = oracle::mask_from_rows({
      {1, 0},
      {0, 1}});
  EXPECT_EQ(label_components(m).count, 2u);
}

TEST(LabelComponents, StaircaseChainsSeveralMerges) {
  // each new row opens a label that only joins the rest further right
  const auto m = oracle::mask_from_rows({
      {0, 0, 0, 1, 0},
      {0, 0, 1, 1, 0},
      {0, 1, 0, 1, 0},
      {1, 1, 1, 1, 1}});
  const auto l = label_components(m);
  EXPECT_EQ(l.count, 1u);
  EXPECT_EQ(l.provisional_labels, 4u);
  EXPECT_EQ(l.merges, 3u);
}

TEST(LabelComponents, PartitionMatchesFloodFill) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> dim(1, 48);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  for (int k = 0; k < 300; ++k) {
    const auto m = oracle::random_mask(rng, dim(rng), dim(rng), density(rng));
    const auto l = label_components(m);
    int n = 0;
    const auto expected = oracle::flood_fill_labels(m, &n);
    ASSERT_EQ(l.count, static_cast<Label>(n)) << "case " << k;
    ASSERT_TRUE(oracle::same_partition(expected, l.labels.buffer())) << "case " << k;
    // dense ids: every label 1..count occurs
    std::vector<bool> seen(l.count + 1, false);
    for (Label v : l.labels.pixels()) {
      ASSERT_LE(v, l.count);
      seen[v] = true;
    }
    for (Label e = 1; e <= l.count; ++e) {
      ASSERT_TRUE(seen[e]);
    }
    ASSERT_EQ(l.provisional_labels, static_cast<std::size_t>(oracle::scan_starts(m)));
    ASSERT_EQ(label_components(m).labels, l.labels);
  }
}

TEST(ComponentSizes, CountsPerLabel) {
  const LabelImage labels(5, 2, std::vector<Label>{
      1, 1, 0, 2, 2,
      1, 0, 2, 2, 2});
  EXPECT_EQ(component_sizes(labels, 2), (ComponentSizeTable{3, 5}));
  const auto m = oracle::mask_from_rows({
      {1, 1, 0, 1, 1},
      {1, 0, 1, 1, 1},
      {0, 0, 1, 1, 0}});
  const auto l = label_components(m);
  EXPECT_EQ(component_sizes(l), (ComponentSizeTable{3, 7}));
}

TEST(ComponentSizes, MassConservation) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const auto m = oracle::random_mask(rng, 20, 15, density(rng));
    const auto sizes = component_sizes(label_components(m));
    ASSERT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}), m.popcount());
  }
}

TEST(LargestComponent, PicksBiggest) {
  const auto m = oracle::mask_from_rows({
      {1, 1, 0, 1, 1},
      {1, 0, 1, 1, 1},
      {0, 0, 1, 1, 0}});
  const auto expected = oracle::mask_from_rows({
      {0, 0, 0, 1, 1},
      {0, 0, 1, 1, 1},
      {0, 0, 1, 1, 0}});
  EXPECT_EQ(largest_component(m), expected);
  const auto single = oracle::mask_from_rows({{0, 1}, {1, 1}});
  EXPECT_EQ(largest_component(single), single);
}

TEST(LargestComponent, TieGoesToSmallestLabel) {
  const auto m = oracle::mask_from_rows({
      {1, 1, 1, 1, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 0},
      {0, 0, 1, 1, 1, 1, 1}});
  const auto expected = oracle::mask_from_rows({
      {1, 1, 1, 1, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0}});
  EXPECT_EQ(largest_component(m), expected);
}

TEST(LargestComponent, EmptyMaskThrows) {
  EXPECT_THROW(largest_component(BinaryMask(4, 4)), NoForeground);
}

TEST(LargestComponent, SubsetAndConnected) {
  std::mt19937 rng(77);
  for (int k = 0; k < 200; ++k) {
    const auto m = oracle::random_mask(rng, 30, 30, 0.5);
    if (m.popcount() == 0) {
      continue;
    }
    const auto g = largest_component(m);
    ASSERT_TRUE(g.subset_of(m));
    int n = 0;
    const auto lab = oracle::flood_fill_labels(m, &n);
    std::vector<std::size_t> sizes(n + 1, 0);
    for (int v : lab) {
      sizes[v] += v != 0;
    }
    int g_count = 0;
    oracle::flood_fill_labels(g, &g_count);
    ASSERT_EQ(g_count, 1);
    ASSERT_EQ(g.popcount(), *std::max_element(sizes.begin() + 1, sizes.end()));
  }
}
