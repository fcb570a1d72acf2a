#pragma once

#include "stereobox/detail/text.hpp"
#include "stereobox/error.hpp"
#include "stereobox/types.hpp"

namespace stereobox {

/// Per-object disparity, the mean of the four corner offsets of a matched
/// pair. Carries the left box's pixel extent for downstream size estimation
/// (the left image is the reference view).
struct DisparityMeasurement {
    int pair_index = 0;
    int class_id = 0;
    double disparity = 0.0;        // px
    double left_box_width = 0.0;   // px
    double left_box_height = 0.0;  // px
};

inline DisparityMeasurement compute_disparity(const MatchedPair& pair, int pair_index = 0) {
    const double disparity = pair.mean_offset();
    if (disparity <= 0.0) {
        throw NonPositiveDisparity("mean corner offset " + detail::fmt(disparity) +
                                   " is not positive");
    }
    return {pair_index, pair.class_id, disparity, pair.left.width(), pair.left.height()};
}

}  // namespace stereobox
