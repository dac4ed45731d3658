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

#ifndef LIVSEG__COMPONENTS_HPP_
#define LIVSEG__COMPONENTS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "livseg/error.hpp"
#include "livseg/image.hpp"

namespace livseg
{

using Label = std::uint32_t;

/// Per-pixel component ids: 0 is background, components are 1..count.
using LabelImage = Raster<Label>;

/**
 * @brief Union-find over provisional labels.
 *
 * Label 0 is reserved for background and is never merged. The root of every
 * set is its smallest member, so merging two labels keeps min(a, b) as the
 * representative. find() compresses paths.
 */
class EquivalenceTable
{
public:
  EquivalenceTable() : parent_{0} {}

  /// Allocate the next provisional label.
  Label make_label()
  {
    const auto l = static_cast<Label>(parent_.size());
    parent_.push_back(l);
    return l;
  }

  /// Number of provisional labels handed out (excluding background).
  std::size_t size() const {return parent_.size() - 1;}

  Label find(Label x)
  {
    Label root = x;
    while (parent_[root] != root) {
      root = parent_[root];
    }
    while (parent_[x] != root) {
      const Label next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  /// Record that @p a and @p b name the same component. Returns the root.
  Label unite(Label a, Label b)
  {
    const Label ra = find(a);
    const Label rb = find(b);
    if (ra == rb) {
      return ra;
    }
    ++merges_;
    if (ra < rb) {
      parent_[rb] = ra;
      return ra;
    }
    parent_[ra] = rb;
    return rb;
  }

  /// Number of unions that joined two distinct sets.
  std::size_t merges() const {return merges_;}

private:
  std::vector<Label> parent_;
  std::size_t merges_{0};
};

/// Output of label_components.
struct Labeling
{
  LabelImage labels;
  Label count{0};
  // first-pass statistics
  std::size_t provisional_labels{0};
  std::size_t merges{0};
};

/**
 * @brief Two-pass 4-connected component labeling.
 *
 * The first pass scans rows top to bottom, left to right, and looks at the
 * top and left neighbors of each foreground pixel:
 *  - neither labeled: allocate a new provisional label;
 *  - one labeled, or both with the same label: copy it;
 *  - two different labels: take the smaller and record the equivalence.
 * The second pass replaces each provisional label by its root and renumbers
 * roots densely as 1..count in order of first appearance.
 */
inline Labeling label_components(const BinaryMask & mask)
{
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  const auto & bits = mask.buffer();
  std::vector<Label> lab(bits.size(), 0);
  EquivalenceTable table;

  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t i = y * w + x;
      if (!bits[i]) {
        continue;
      }
      const Label up = y > 0 ? lab[i - w] : 0;
      const Label left = x > 0 ? lab[i - 1] : 0;
      if (up == 0 && left == 0) {
        lab[i] = table.make_label();
      } else if (up == 0 || left == 0 || up == left) {
        lab[i] = up | left;  // at most one is nonzero unless they are equal
      } else {
        lab[i] = std::min(up, left);
        table.unite(up, left);
      }
    }
  }

  std::vector<Label> dense(table.size() + 1, 0);
  Label count = 0;
  for (auto & l : lab) {
    if (l == 0) {
      continue;
    }
    const Label root = table.find(l);
    if (dense[root] == 0) {
      dense[root] = ++count;
    }
    l = dense[root];
  }

  Labeling out;
  out.labels = LabelImage(w, h, std::move(lab));
  out.count = count;
  out.provisional_labels = table.size();
  out.merges = table.merges();
  return out;
}

/// sizes[e - 1] is the pixel count of component e.
using ComponentSizeTable = std::vector<std::size_t>;

inline ComponentSizeTable component_sizes(const LabelImage & labels, Label count)
{
  ComponentSizeTable sizes(count, 0);
  for (const Label l : labels.pixels()) {
    if (l != 0) {
      ++sizes.at(l - 1);
    }
  }
  return sizes;
}

inline ComponentSizeTable component_sizes(const Labeling & labeling)
{
  return component_sizes(labeling.labels, labeling.count);
}

/// Label of the largest component; ties go to the smallest label.
inline Label largest_label(const ComponentSizeTable & sizes)
{
  if (sizes.empty()) {
    throw NoForeground("mask has no foreground component");
  }
  std::size_t best = 0;
  for (std::size_t e = 1; e < sizes.size(); ++e) {
    if (sizes[e] > sizes[best]) {
      best = e;
    }
  }
  return static_cast<Label>(best + 1);
}

/// Mask of the greatest connected component. Throws NoForeground when empty.
inline BinaryMask largest_component(const LabelImage & labels, const ComponentSizeTable & sizes)
{
  const Label gcc = largest_label(sizes);
  std::vector<std::uint8_t> bits(labels.size());
  const auto px = labels.pixels();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = px[i] == gcc;
  }
  return BinaryMask(labels.width(), labels.height(), std::move(bits));
}

inline BinaryMask largest_component(const BinaryMask & mask)
{
  const Labeling l = label_components(mask);
  return largest_component(l.labels, component_sizes(l));
}

}  // namespace livseg

#endif  // LIVSEG__COMPONENTS_HPP_
