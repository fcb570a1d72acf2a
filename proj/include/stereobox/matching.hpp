#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "stereobox/types.hpp"

namespace stereobox {

/// Gates deciding whether a left/right detection pair can belong to the same
/// object. The width and height tolerances default to the observed bounds of
/// stereo box-size agreement (3 px width, 8 px height); the vertical gate
/// reuses the height scale since rectified views should agree on y.
struct MatchConfig {
    double max_vertical_offset = 8.0;  // px, on y_min
    double max_width_diff = 3.0;       // px
    double max_height_diff = 8.0;      // px
    bool require_positive_disparity = true;
};

struct MatchResult {
    std::vector<MatchedPair> pairs;
    std::vector<BBox> unmatched_left;
    std::vector<BBox> unmatched_right;
};

inline bool boxes_compatible(const BBox& left, const BBox& right, const MatchConfig& config) {
    if (std::abs(left.y_min - right.y_min) > config.max_vertical_offset) return false;
    if (std::abs(left.width() - right.width()) > config.max_width_diff) return false;
    if (std::abs(left.height() - right.height()) > config.max_height_diff) return false;
    if (config.require_positive_disparity && corner_offsets(left, right).mean() <= 0.0) {
        return false;
    }
    return true;
}

namespace detail {

/// Sort key used on each side before pairing: center x ascending, then
/// y_min, then area. The secondary keys only break exact center-x ties and
/// keep the result independent of input order.
inline bool detection_before(const BBox& a, const BBox& b) {
    if (a.center_x() != b.center_x()) return a.center_x() < b.center_x();
    if (a.y_min != b.y_min) return a.y_min < b.y_min;
    return a.area() < b.area();
}

/// Longest common subsequence of two sorted detection lists under the
/// compatibility predicate. Returns index pairs (ascending on both sides).
/// Ties in the DP prefer pairing at the earliest opportunity, which keeps
/// the reconstruction deterministic.
inline std::vector<std::pair<std::size_t, std::size_t>> compatible_lcs(
    const std::vector<BBox>& left, const std::vector<BBox>& right, const MatchConfig& config) {
    const std::size_t n = left.size();
    const std::size_t m = right.size();
    std::vector<std::vector<int>> dp(n + 1, std::vector<int>(m + 1, 0));
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
            int best = std::max(dp[i + 1][j], dp[i][j + 1]);
            if (boxes_compatible(left[i], right[j], config)) {
                best = std::max(best, 1 + dp[i + 1][j + 1]);
            }
            dp[i][j] = best;
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> picks;
    std::size_t i = 0, j = 0;
    while (i < n && j < m) {
        if (boxes_compatible(left[i], right[j], config) &&
            1 + dp[i + 1][j + 1] >= dp[i + 1][j] && 1 + dp[i + 1][j + 1] >= dp[i][j + 1]) {
            picks.emplace_back(i, j);
            ++i;
            ++j;
        } else if (dp[i + 1][j] >= dp[i][j + 1]) {
            ++i;
        } else {
            ++j;
        }
    }
    return picks;
}

}  // namespace detail

/// Associate left and right detections so paired predictions refer to the
/// same physical object.
///
/// Per class: both sides are sorted by box center x and paired index-by-index
/// when the counts agree; pairs failing the compatibility gates are demoted
/// to unmatched. When the counts differ, the longest common subsequence under
/// the compatibility predicate is paired instead and the remainder is left
/// unmatched. Sorting first makes the result invariant under any permutation
/// of the input detections. Output pairs are ordered by (class_id, left
/// center x).
inline MatchResult match_detections(const StereoFrame& frame, const MatchConfig& config) {
    std::map<int, std::pair<std::vector<BBox>, std::vector<BBox>>> by_class;
    for (const BBox& b : frame.left_detections) by_class[b.class_id].first.push_back(b);
    for (const BBox& b : frame.right_detections) by_class[b.class_id].second.push_back(b);

    MatchResult result;
    for (auto& [class_id, sides] : by_class) {
        auto& left = sides.first;
        auto& right = sides.second;
        std::sort(left.begin(), left.end(), detail::detection_before);
        std::sort(right.begin(), right.end(), detail::detection_before);

        std::vector<bool> left_used(left.size(), false);
        std::vector<bool> right_used(right.size(), false);
        if (left.size() == right.size()) {
            for (std::size_t i = 0; i < left.size(); ++i) {
                if (boxes_compatible(left[i], right[i], config)) {
                    result.pairs.push_back(MatchedPair::make(left[i], right[i]));
                    left_used[i] = right_used[i] = true;
                }
            }
        } else {
            for (const auto& [i, j] : detail::compatible_lcs(left, right, config)) {
                result.pairs.push_back(MatchedPair::make(left[i], right[j]));
                left_used[i] = right_used[j] = true;
            }
        }
        for (std::size_t i = 0; i < left.size(); ++i) {
            if (!left_used[i]) result.unmatched_left.push_back(left[i]);
        }
        for (std::size_t j = 0; j < right.size(); ++j) {
            if (!right_used[j]) result.unmatched_right.push_back(right[j]);
        }
    }
    return result;
}

}  // namespace stereobox
