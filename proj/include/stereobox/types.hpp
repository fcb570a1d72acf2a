#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace stereobox {

/// Axis-aligned detection box in image coordinates: pixels, origin at the
/// top-left corner, x rightward, y downward. Coordinates are fractional —
/// detectors emit sub-pixel boxes and rounding them would inject avoidable
/// disparity error.
struct BBox {
    int class_id = 0;
    double confidence = 1.0;
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double center_x() const { return 0.5 * (x_min + x_max); }
    double center_y() const { return 0.5 * (y_min + y_max); }
    double area() const { return width() * height(); }
};

/// True iff the box is well-formed and lies inside an image of the given
/// dimensions.
inline bool bbox_valid(const BBox& box, double image_width, double image_height) {
    return box.x_min < box.x_max && box.y_min < box.y_max && box.confidence >= 0.0 &&
           box.confidence <= 1.0 && box.x_min >= 0.0 && box.y_min >= 0.0 &&
           box.x_max <= image_width && box.y_max <= image_height;
}

/// One concurrent capture from both cameras: the detections of the left and
/// right image, unordered and unassociated.
struct StereoFrame {
    std::int64_t frame_id = 0;
    int image_width = 0;
    int image_height = 0;
    std::vector<BBox> left_detections;
    std::vector<BBox> right_detections;
};

inline bool frame_valid(const StereoFrame& frame) {
    if (frame.image_width <= 0 || frame.image_height <= 0) return false;
    for (const BBox& b : frame.left_detections) {
        if (!bbox_valid(b, frame.image_width, frame.image_height)) return false;
    }
    for (const BBox& b : frame.right_detections) {
        if (!bbox_valid(b, frame.image_width, frame.image_height)) return false;
    }
    return true;
}

/// Stereo rig geometry. Units: centimeters for the baseline (distance
/// between the optical centers), pixels for the focal length and principal
/// point. The rig is assumed rectified: pure horizontal displacement
/// between views. Zero-initialized rigs are invalid until configured;
/// synthetic.hpp declares the default test geometry.
struct CameraRig {
    double baseline_cm = 0.0;
    double focal_length_px = 0.0;
    double principal_point_x = 0.0;
    int image_width = 0;
    int image_height = 0;
};

inline bool rig_valid(const CameraRig& rig) {
    return rig.baseline_cm > 0.0 && rig.focal_length_px > 0.0 && rig.image_width > 0 &&
           rig.image_height > 0 && rig.principal_point_x > 0.0 &&
           rig.principal_point_x < rig.image_width;
}

/// Signed horizontal pixel offsets (left-image coordinate minus right-image
/// coordinate) of the four box corners. For axis-aligned boxes the top and
/// bottom corners of one side share an x coordinate, so tl == bl and
/// tr == br always; all four are kept so the disparity stays a four-corner
/// mean.
struct CornerOffsets {
    double tl = 0.0;
    double tr = 0.0;
    double bl = 0.0;
    double br = 0.0;

    double mean() const { return 0.25 * (tl + tr + bl + br); }
};

inline CornerOffsets corner_offsets(const BBox& left, const BBox& right) {
    return {left.x_min - right.x_min, left.x_max - right.x_max, left.x_min - right.x_min,
            left.x_max - right.x_max};
}

/// One object observed in both images. The four corner offsets are stored
/// next to the boxes they were computed from; make() fills them and
/// pair_consistent() verifies the copies still agree.
struct MatchedPair {
    int class_id = 0;
    BBox left;
    BBox right;
    double dx_tl = 0.0;
    double dx_tr = 0.0;
    double dx_bl = 0.0;
    double dx_br = 0.0;

    static MatchedPair make(const BBox& left, const BBox& right) {
        if (left.class_id != right.class_id) {
            throw std::invalid_argument("matched pair requires equal class ids");
        }
        const CornerOffsets off = corner_offsets(left, right);
        return {left.class_id, left, right, off.tl, off.tr, off.bl, off.br};
    }

    double mean_offset() const { return 0.25 * (dx_tl + dx_tr + dx_bl + dx_br); }
};

inline bool pair_consistent(const MatchedPair& pair) {
    const CornerOffsets off = corner_offsets(pair.left, pair.right);
    return pair.class_id == pair.left.class_id && pair.class_id == pair.right.class_id &&
           pair.dx_tl == off.tl && pair.dx_tr == off.tr && pair.dx_bl == off.bl &&
           pair.dx_br == off.br;
}

}  // namespace stereobox
