#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stereobox/detail/text.hpp"
#include "stereobox/error.hpp"
#include "stereobox/estimator.hpp"
#include "stereobox/rng.hpp"
#include "stereobox/types.hpp"

namespace stereobox {

/// Default rig for synthetic scenes and the test oracle. The 20 cm baseline
/// is the physical rig's; focal length and principal point are synthetic
/// configuration, not measured values.
inline constexpr CameraRig kDefaultRig{20.0, 800.0, 320.0, 640, 480};

inline constexpr double kDefaultPixelSigma = 0.5;

/// Ground-truth object: lateral offset and depth of its center in
/// centimeters, plus its real extent.
struct SceneObject {
    int class_id = 0;
    double world_x = 0.0;     // cm, lateral (positive right)
    double depth = 0.0;       // cm
    double real_width = 0.0;  // cm
    double real_height = 0.0; // cm
};

/// Additive Gaussian noise on each box coordinate, independently per
/// coordinate and camera. Models detector jitter parametrically.
struct NoiseSpec {
    double pixel_sigma = kDefaultPixelSigma;
    std::uint32_t seed = 0;
};

/// Provenance string recorded in generated dataset and frame files.
inline std::string provenance_comment(const CameraRig& rig, double sigma, std::uint32_t seed) {
    return "seed=" + std::to_string(seed) + " sigma=" + detail::fmt(sigma) + " rig=" +
           detail::fmt(rig.focal_length_px) + ',' + detail::fmt(rig.baseline_cm) + ',' +
           detail::fmt(rig.principal_point_x) + ',' + std::to_string(rig.image_width) + ',' +
           std::to_string(rig.image_height) + " rng=" + Rng::kIdentity;
}

/// Exact pinhole projection of an object into both views. The box spans
/// focal * extent / depth pixels, the left center sits at
/// principal_point + focal * world_x / depth, and the right box is the left
/// one shifted by the true disparity focal * baseline / depth. Vertical
/// placement is centered on the horizon row. Throws OutOfFrame when either
/// box leaves its image.
inline std::pair<BBox, BBox> project_object(const SceneObject& object, const CameraRig& rig) {
    if (object.depth <= 0.0 || object.real_width <= 0.0 || object.real_height <= 0.0) {
        throw std::invalid_argument("scene object needs positive depth and extents");
    }
    const double width_px = rig.focal_length_px * object.real_width / object.depth;
    const double height_px = rig.focal_length_px * object.real_height / object.depth;
    const double left_center_x = rig.principal_point_x + rig.focal_length_px * object.world_x / object.depth;
    const double disparity = rig.focal_length_px * rig.baseline_cm / object.depth;
    const double horizon = 0.5 * rig.image_height;

    BBox left;
    left.class_id = object.class_id;
    left.confidence = 1.0;
    left.x_min = left_center_x - 0.5 * width_px;
    left.x_max = left_center_x + 0.5 * width_px;
    left.y_min = horizon - 0.5 * height_px;
    left.y_max = horizon + 0.5 * height_px;

    BBox right = left;
    right.x_min -= disparity;
    right.x_max -= disparity;

    if (!bbox_valid(left, rig.image_width, rig.image_height) ||
        !bbox_valid(right, rig.image_width, rig.image_height)) {
        throw OutOfFrame("object at depth " + detail::fmt(object.depth) +
                         " projects outside the image");
    }
    return {left, right};
}

/// Ground-truth association for one generated object: where its left and
/// right detections landed after shuffling.
struct ObjectTruth {
    SceneObject object;
    std::size_t left_index = 0;
    std::size_t right_index = 0;
};

struct SyntheticFrame {
    StereoFrame frame;
    std::vector<ObjectTruth> truth;
};

namespace detail {

inline BBox perturb_box(const BBox& box, double sigma, Rng& rng, const CameraRig& rig) {
    if (sigma == 0.0) return box;
    BBox noisy = box;
    noisy.x_min += rng.gaussian(sigma);
    noisy.y_min += rng.gaussian(sigma);
    noisy.x_max += rng.gaussian(sigma);
    noisy.y_max += rng.gaussian(sigma);
    if (!bbox_valid(noisy, rig.image_width, rig.image_height)) {
        throw OutOfFrame("noise pushed a box outside the image; lower sigma or move the object");
    }
    return noisy;
}

}  // namespace detail

/// Project every object, perturb each box coordinate with seeded Gaussian
/// noise, and shuffle the detection order of both sides. Returns the frame
/// plus the true left/right association for matcher validation.
/// Deterministic given the seed: noise is drawn per object in input order
/// (left box coordinates, then right), then the left side is shuffled, then
/// the right.
inline SyntheticFrame generate_frame(std::span<const SceneObject> objects, const CameraRig& rig,
                                     const NoiseSpec& noise, std::int64_t frame_id = 0) {
    Rng rng(noise.seed);
    std::vector<BBox> left(objects.size()), right(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) {
        auto [l, r] = project_object(objects[i], rig);
        left[i] = detail::perturb_box(l, noise.pixel_sigma, rng, rig);
        right[i] = detail::perturb_box(r, noise.pixel_sigma, rng, rig);
    }

    std::vector<std::size_t> left_order(objects.size()), right_order(objects.size());
    std::iota(left_order.begin(), left_order.end(), 0);
    std::iota(right_order.begin(), right_order.end(), 0);
    rng.shuffle(left_order);
    rng.shuffle(right_order);

    SyntheticFrame out;
    out.frame.frame_id = frame_id;
    out.frame.image_width = rig.image_width;
    out.frame.image_height = rig.image_height;
    out.frame.left_detections.resize(objects.size());
    out.frame.right_detections.resize(objects.size());
    out.truth.resize(objects.size());
    for (std::size_t pos = 0; pos < objects.size(); ++pos) {
        out.frame.left_detections[pos] = left[left_order[pos]];
        out.frame.right_detections[pos] = right[right_order[pos]];
        out.truth[left_order[pos]].left_index = pos;
        out.truth[right_order[pos]].right_index = pos;
    }
    for (std::size_t i = 0; i < objects.size(); ++i) out.truth[i].object = objects[i];
    return out;
}

/// Disparity/depth samples from the pinhole relation with box-coordinate
/// noise propagated through the four-corner mean: the left and right x_min
/// and x_max each get independent Gaussian noise, so the disparity
/// perturbation is the average of the two left-minus-right differences.
/// Non-positive noisy disparities are redrawn. Deterministic given the seed.
inline std::vector<DepthSample> generate_depth_dataset(const CameraRig& rig, int n, double z_min,
                                                       double z_max, double pixel_sigma,
                                                       std::uint32_t seed) {
    if (n < 0) throw std::invalid_argument("sample count must be >= 0");
    if (!(z_min > 0.0) || z_max < z_min) throw std::invalid_argument("invalid depth range");
    if (pixel_sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    Rng rng(seed);
    std::vector<DepthSample> samples;
    samples.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double depth = rng.uniform(z_min, z_max);
        const double true_disparity = rig.focal_length_px * rig.baseline_cm / depth;
        double disparity = true_disparity;
        if (pixel_sigma > 0.0) {
            do {
                const double dx_min = rng.gaussian(pixel_sigma) - rng.gaussian(pixel_sigma);
                const double dx_max = rng.gaussian(pixel_sigma) - rng.gaussian(pixel_sigma);
                disparity = true_disparity + 0.5 * (dx_min + dx_max);
            } while (disparity <= 0.0);
        }
        samples.push_back({disparity, depth});
    }
    return samples;
}

/// Size samples: depth and real extent drawn uniformly, pixel extent from
/// the projection with difference-of-two-coordinates noise. Non-positive
/// noisy extents are redrawn. Deterministic given the seed.
inline std::vector<SizeSample> generate_size_dataset(const CameraRig& rig, int n, double z_min,
                                                     double z_max, double extent_min,
                                                     double extent_max, double pixel_sigma,
                                                     std::uint32_t seed) {
    if (n < 0) throw std::invalid_argument("sample count must be >= 0");
    if (!(z_min > 0.0) || z_max < z_min) throw std::invalid_argument("invalid depth range");
    if (!(extent_min > 0.0) || extent_max < extent_min) {
        throw std::invalid_argument("invalid extent range");
    }
    if (pixel_sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    Rng rng(seed);
    std::vector<SizeSample> samples;
    samples.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double depth = rng.uniform(z_min, z_max);
        const double real_extent = rng.uniform(extent_min, extent_max);
        const double true_px = rig.focal_length_px * real_extent / depth;
        double pixel_extent = true_px;
        if (pixel_sigma > 0.0) {
            do {
                pixel_extent = true_px + rng.gaussian(pixel_sigma) - rng.gaussian(pixel_sigma);
            } while (pixel_extent <= 0.0);
        }
        samples.push_back({depth, pixel_extent, real_extent});
    }
    return samples;
}

/// Deterministic multi-object scene tuned for the default rig geometry:
/// objects occupy well-separated lateral slots (so association is
/// unambiguous), the first two share a class with disjoint height bands
/// (so a swapped pairing violates the height gate), and every box stays
/// inside both views across the sampled depth range.
inline std::vector<SceneObject> sample_scene(const CameraRig& rig, int n_objects,
                                             std::uint32_t seed) {
    if (n_objects < 1) throw std::invalid_argument("scene needs at least one object");
    Rng rng(seed);
    std::vector<SceneObject> objects;
    objects.reserve(n_objects);
    const double slot_lo = 0.28 * rig.image_width;
    const double slot_hi = 0.84 * rig.image_width;
    for (int i = 0; i < n_objects; ++i) {
        const double slot = n_objects == 1
                                ? 0.5 * (slot_lo + slot_hi)
                                : slot_lo + (slot_hi - slot_lo) * i / (n_objects - 1);
        SceneObject obj;
        obj.class_id = i < 2 ? 0 : i - 1;
        // Same-class pair: tighter depth band and disjoint height bands keep
        // the wrong pairing outside the matcher's height tolerance.
        if (i == 0) {
            obj.depth = rng.uniform(150.0, 250.0);
            obj.real_height = rng.uniform(10.0, 14.0);
        } else if (i == 1) {
            obj.depth = rng.uniform(150.0, 250.0);
            obj.real_height = rng.uniform(28.0, 35.0);
        } else {
            obj.depth = rng.uniform(150.0, 450.0);
            obj.real_height = rng.uniform(10.0, 35.0);
        }
        obj.real_width = rng.uniform(8.0, 25.0);
        obj.world_x = (slot - rig.principal_point_x) * obj.depth / rig.focal_length_px;
        objects.push_back(obj);
    }
    return objects;
}

}  // namespace stereobox
