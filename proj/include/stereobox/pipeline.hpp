#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "stereobox/detail/text.hpp"
#include "stereobox/disparity.hpp"
#include "stereobox/error.hpp"
#include "stereobox/estimator.hpp"
#include "stereobox/matching.hpp"
#include "stereobox/obstacle.hpp"
#include "stereobox/synthetic.hpp"
#include "stereobox/types.hpp"

namespace stereobox {

/// Everything the end-to-end run needs: rig geometry, matching gates, model
/// file paths, grid layout and cloud sampling density. Loaded from a flat
/// key=value config file; command-line flags override file values, which
/// override the defaults below.
struct PipelineConfig {
    CameraRig rig = kDefaultRig;
    MatchConfig match;
    std::string depth_model_path;
    std::string size_width_model_path;
    std::string size_height_model_path;
    GridSpec grid{5.0, 160, 120, -400.0, 0.0};
    double inflation_radius = 10.0;  // cm
    int angular_steps = kDefaultAngularSteps;
    int vertical_steps = kDefaultVerticalSteps;
};

namespace detail {

inline bool parse_bool(const std::string& value, std::size_t line_no) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ParseError("expected true/false, got '" + value + "'", line_no);
}

}  // namespace detail

/// Apply one key=value entry. Shared between the config file parser and
/// command-line --set overrides; unknown keys fail loudly.
inline void apply_config_entry(PipelineConfig& config, const std::string& key,
                               const std::string& value, std::size_t line_no = 0) {
    const auto num = [&] { return detail::parse_double(value, line_no); };
    const auto integer = [&] { return static_cast<int>(detail::parse_int(value, line_no)); };
    if (key == "rig.baseline_cm") config.rig.baseline_cm = num();
    else if (key == "rig.focal_length_px") config.rig.focal_length_px = num();
    else if (key == "rig.principal_point_x") config.rig.principal_point_x = num();
    else if (key == "rig.image_width") config.rig.image_width = integer();
    else if (key == "rig.image_height") config.rig.image_height = integer();
    else if (key == "match.max_vertical_offset") config.match.max_vertical_offset = num();
    else if (key == "match.max_width_diff") config.match.max_width_diff = num();
    else if (key == "match.max_height_diff") config.match.max_height_diff = num();
    else if (key == "match.require_positive_disparity")
        config.match.require_positive_disparity = detail::parse_bool(value, line_no);
    else if (key == "model.depth") config.depth_model_path = value;
    else if (key == "model.size_width") config.size_width_model_path = value;
    else if (key == "model.size_height") config.size_height_model_path = value;
    else if (key == "grid.resolution") config.grid.resolution = num();
    else if (key == "grid.cols") config.grid.cols = integer();
    else if (key == "grid.rows") config.grid.rows = integer();
    else if (key == "grid.origin_x") config.grid.origin_x = num();
    else if (key == "grid.origin_y") config.grid.origin_y = num();
    else if (key == "grid.inflation_radius") config.inflation_radius = num();
    else if (key == "cloud.angular_steps") config.angular_steps = integer();
    else if (key == "cloud.vertical_steps") config.vertical_steps = integer();
    else throw ParseError("unknown config key '" + key + "'", line_no);
}

/// Flat key=value config, '#' comments, one entry per line.
inline PipelineConfig read_config(std::istream& in) {
    PipelineConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_comment_or_blank(line)) continue;
        const auto pos = line.find('=');
        if (pos == std::string::npos) throw ParseError("expected key=value", line_no);
        std::string key = line.substr(0, pos);
        std::string value = line.substr(pos + 1);
        const auto trim = [](std::string& s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
        };
        trim(key);
        trim(value);
        apply_config_entry(config, key, value, line_no);
    }
    return config;
}

inline PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    return read_config(in);
}

struct PipelineModels {
    PolynomialModel depth;
    PolynomialModel size_width;
    PolynomialModel size_height;
};

struct ObjectEstimate {
    int pair_index = 0;
    int class_id = 0;
    double disparity = 0.0;  // px
    double depth = 0.0;      // cm
    double width = 0.0;      // cm
    double height = 0.0;     // cm
    double center_x = 0.0;   // cm
    double center_y = 0.0;   // cm
    bool depth_extrapolated = false;
    bool size_extrapolated = false;
};

struct FrameReport {
    std::int64_t frame_id = 0;
    std::vector<ObjectEstimate> objects;
    std::vector<BBox> unmatched_left;
    std::vector<BBox> unmatched_right;
    std::vector<std::string> warnings;
    PointCloud cloud;
    OccupancyGrid grid;
};

/// One frame through the full chain: match, disparity, depth, size,
/// cylinder, cloud and grid. Pairs that fail disparity or estimate
/// validation are reported as warnings instead of aborting the frame;
/// unmatched detections are carried through untouched.
inline FrameReport process_frame(const StereoFrame& frame, const PipelineModels& models,
                                 const PipelineConfig& config) {
    FrameReport report;
    report.frame_id = frame.frame_id;
    report.cloud.frame_id = frame.frame_id;

    MatchResult matches = match_detections(frame, config.match);
    report.unmatched_left = std::move(matches.unmatched_left);
    report.unmatched_right = std::move(matches.unmatched_right);

    std::vector<CylinderObstacle> cylinders;
    for (std::size_t i = 0; i < matches.pairs.size(); ++i) {
        const MatchedPair& pair = matches.pairs[i];
        try {
            const DisparityMeasurement meas = compute_disparity(pair, static_cast<int>(i));
            const DepthPrediction depth = predict_depth(models.depth, meas.disparity);
            if (depth.depth <= 0.0) {
                throw InvalidEstimate("non-positive depth prediction " +
                                      detail::fmt(depth.depth));
            }
            const SizePrediction size =
                predict_size(models.size_width, models.size_height, depth.depth,
                             meas.left_box_width, meas.left_box_height);
            const CylinderObstacle cylinder = build_cylinder(
                depth.depth, size.width, size.height, pair.left, config.rig, pair.class_id);

            ObjectEstimate est;
            est.pair_index = meas.pair_index;
            est.class_id = meas.class_id;
            est.disparity = meas.disparity;
            est.depth = depth.depth;
            est.width = size.width;
            est.height = size.height;
            est.center_x = cylinder.center_x;
            est.center_y = cylinder.center_y;
            est.depth_extrapolated = depth.extrapolated;
            est.size_extrapolated = size.extrapolated;
            report.objects.push_back(est);
            cylinders.push_back(cylinder);

            PointCloud part =
                cylinder_to_pointcloud(cylinder, config.angular_steps, config.vertical_steps);
            report.cloud.points.insert(report.cloud.points.end(), part.points.begin(),
                                       part.points.end());
        } catch (const Error& e) {
            report.warnings.push_back("pair " + std::to_string(i) + " skipped: " + e.what());
        }
    }
    report.grid = rasterize(cylinders, config.grid, config.inflation_radius);
    return report;
}

/// Text report consumed by humans and the evaluation tooling: one OBJ line
/// per estimate, UNMATCHED lines for leftovers, WARN lines for skipped
/// pairs.
inline void write_report(const FrameReport& report, std::ostream& out) {
    out << "FRAME " << report.frame_id << " matched " << report.objects.size()
        << " unmatched_left " << report.unmatched_left.size() << " unmatched_right "
        << report.unmatched_right.size() << '\n';
    for (const ObjectEstimate& e : report.objects) {
        out << "OBJ " << e.pair_index << " class " << e.class_id << " disparity "
            << detail::fmt(e.disparity) << " depth " << detail::fmt(e.depth) << " width "
            << detail::fmt(e.width) << " height " << detail::fmt(e.height) << " center_x "
            << detail::fmt(e.center_x) << " center_y " << detail::fmt(e.center_y)
            << " extrapolated " << (e.depth_extrapolated || e.size_extrapolated ? 1 : 0) << '\n';
    }
    for (const BBox& b : report.unmatched_left) {
        out << "UNMATCHED L class " << b.class_id << " center_x " << detail::fmt(b.center_x())
            << '\n';
    }
    for (const BBox& b : report.unmatched_right) {
        out << "UNMATCHED R class " << b.class_id << " center_x " << detail::fmt(b.center_x())
            << '\n';
    }
    for (const std::string& w : report.warnings) out << "WARN " << w << '\n';
}

}  // namespace stereobox
