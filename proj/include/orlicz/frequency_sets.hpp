// Copyright 2026 The orlicz-lambda Authors
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

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "json.hpp"

namespace orlicz {

/// Finite set of integer frequencies, kept sorted and duplicate-free.
class FrequencySet {
 public:
  FrequencySet() = default;

  explicit FrequencySet(std::vector<std::int64_t> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  static FrequencySet interval(std::int64_t a, std::int64_t b) {
    if (a > b) return FrequencySet{};
    std::vector<std::int64_t> v;
    v.reserve(static_cast<std::size_t>(b - a + 1));
    for (std::int64_t n = a; n <= b; ++n) v.push_back(n);
    return FrequencySet(std::move(v));
  }

  /// Perfect squares k^2 in [lo, hi]; with reflect, their negatives as well.
  static FrequencySet squares(std::int64_t lo, std::int64_t hi, bool reflect = false) {
    std::vector<std::int64_t> v;
    for (std::int64_t k = 1; k * k <= hi; ++k) {
      if (k * k >= lo) {
        v.push_back(k * k);
        if (reflect) v.push_back(-k * k);
      }
    }
    return FrequencySet(std::move(v));
  }

  const std::vector<std::int64_t>& elems() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

  std::int64_t min() const { return elems_.front(); }
  std::int64_t max() const { return elems_.back(); }

  std::int64_t diam() const {
    if (empty()) throw std::logic_error("FrequencySet::diam: empty set");
    return max() - min() + 1;
  }

  bool contains(std::int64_t n) const {
    return std::binary_search(elems_.begin(), elems_.end(), n);
  }

  std::size_t count_in(std::int64_t lo, std::int64_t hi) const {
    if (lo > hi) return 0;
    const auto a = std::lower_bound(elems_.begin(), elems_.end(), lo);
    const auto b = std::upper_bound(elems_.begin(), elems_.end(), hi);
    return static_cast<std::size_t>(b - a);
  }

  FrequencySet slice(std::int64_t lo, std::int64_t hi) const {
    std::vector<std::int64_t> v;
    for (std::int64_t n : elems_)
      if (n >= lo && n <= hi) v.push_back(n);
    return FrequencySet(std::move(v));
  }

  FrequencySet translated(std::int64_t m) const {
    std::vector<std::int64_t> v(elems_);
    for (auto& n : v) n += m;
    return FrequencySet(std::move(v));
  }

  FrequencySet reflected() const {
    std::vector<std::int64_t> v(elems_);
    for (auto& n : v) n = -n;
    return FrequencySet(std::move(v));
  }

  FrequencySet unioned(const FrequencySet& other) const {
    std::vector<std::int64_t> v;
    v.reserve(size() + other.size());
    std::merge(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
               std::back_inserter(v));
    return FrequencySet(std::move(v));
  }

  bool operator==(const FrequencySet& other) const { return elems_ == other.elems_; }

 private:
  std::vector<std::int64_t> elems_;
};

/// Dyadic shell E_{2^r} = E intersected with +-[2^r, 2^{r+1}). The half-open
/// right end makes shells disjoint across r, so |union S_r| = sum |S_r|.
inline FrequencySet shell_slice(const FrequencySet& e, int r) {
  if (r < 0) throw std::invalid_argument("shell_slice: need r >= 0");
  const std::int64_t lo = std::int64_t{1} << r;
  const std::int64_t hi = (std::int64_t{2} << r) - 1;
  return e.slice(lo, hi).unioned(e.slice(-hi, -lo));
}

/// Greedy B_h set seeded with {1, 2} (whose h-fold sums 2h - k are distinct
/// for every h). Scanning upward, a candidate x is accepted when it is not
/// itself an h-fold sum of the current set and all h-fold multiset sums of
/// the extended set stay distinct. For h = 2: 1, 2, 5, 11, ...
inline FrequencySet greedy_bh_set(int h, std::size_t count) {
  if (h < 2) throw std::invalid_argument("greedy_bh_set: need h >= 2");
  std::vector<std::int64_t> s;
  // sums_k[k] = all k-fold multiset sums of s (k = 0..h). For a valid B_h set
  // the lower-order sums are automatically distinct, so value sets suffice.
  std::vector<std::vector<std::int64_t>> sums_k(static_cast<std::size_t>(h) + 1);
  sums_k[0] = {0};

  const auto rebuild = [&]() {
    sums_k.assign(static_cast<std::size_t>(h) + 1, {});
    sums_k[0] = {0};
    for (int k = 1; k <= h; ++k) {
      std::unordered_set<std::int64_t> acc;
      // k-fold sums: largest element index nondecreasing recursion, flattened:
      // every k-fold sum = (k-1)-fold sum + one element >= its largest. Using
      // value sets is fine here; duplicates would violate B_h anyway.
      for (std::int64_t base : sums_k[k - 1])
        for (std::int64_t e : s) acc.insert(base + e);
      sums_k[k].assign(acc.begin(), acc.end());
    }
  };

  if (count >= 1) s.push_back(1);
  if (count >= 2) s.push_back(2);
  rebuild();
  std::int64_t x = 2;
  std::size_t guard = 0;
  while (s.size() < count) {
    if (++guard > 50'000'000) throw std::runtime_error("greedy_bh_set: scan limit exceeded");
    bool ok = true;
    // (a) x itself must not be an h-fold sum of the current set.
    if (!s.empty() &&
        std::find(sums_k[static_cast<std::size_t>(h)].begin(),
                  sums_k[static_cast<std::size_t>(h)].end(),
                  x) != sums_k[static_cast<std::size_t>(h)].end())
      ok = false;
    // (b) new h-fold sums involving x must be fresh and mutually distinct.
    if (ok) {
      std::unordered_set<std::int64_t> seen(sums_k[static_cast<std::size_t>(h)].begin(),
                                            sums_k[static_cast<std::size_t>(h)].end());
      for (int k = 1; k <= h && ok; ++k) {
        for (std::int64_t base : sums_k[static_cast<std::size_t>(h - k)]) {
          if (!seen.insert(static_cast<std::int64_t>(k) * x + base).second) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok) {
      s.push_back(x);
      rebuild();
    }
    ++x;
  }
  return FrequencySet(std::move(s));
}

inline void to_json(nlohmann::json& j, const FrequencySet& s) { j = s.elems(); }

inline void from_json(const nlohmann::json& j, FrequencySet& s) {
  s = FrequencySet(j.get<std::vector<std::int64_t>>());
}

}  // namespace orlicz
