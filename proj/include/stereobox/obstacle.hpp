#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "stereobox/detail/text.hpp"
#include "stereobox/error.hpp"
#include "stereobox/types.hpp"

namespace stereobox {

inline constexpr int kDefaultAngularSteps = 36;
inline constexpr int kDefaultVerticalSteps = 10;

/// Obstacle proxy for one detected object, in the robot-relative frame
/// (x lateral positive right, y forward, z up, origin at the rig). The
/// diameter equals the estimated object width, the height the estimated
/// object height, and center_y the estimated depth. All lengths cm.
struct CylinderObstacle {
    double center_x = 0.0;
    double center_y = 0.0;
    double diameter = 0.0;
    double height = 0.0;
    int class_id = 0;
};

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct PointCloud {
    std::int64_t frame_id = 0;
    std::vector<Point3> points;
};

struct GroundPosition {
    double center_x = 0.0;  // cm, lateral
    double center_y = 0.0;  // cm, forward
};

/// Pinhole back-projection of the box center onto the ground plane:
/// center_y is the estimated depth, center_x follows from the box center's
/// pixel offset against the principal point.
inline GroundPosition localize_object(double depth, const BBox& left_box, const CameraRig& rig) {
    return {(left_box.center_x() - rig.principal_point_x) * depth / rig.focal_length_px, depth};
}

inline CylinderObstacle build_cylinder(double depth, double width, double height,
                                       const BBox& left_box, const CameraRig& rig, int class_id) {
    if (depth <= 0.0 || width <= 0.0 || height <= 0.0) {
        throw InvalidEstimate("cylinder needs positive depth, width and height");
    }
    const GroundPosition pos = localize_object(depth, left_box, rig);
    return {pos.center_x, pos.center_y, width, height, class_id};
}

/// Sample the lateral surface of a cylinder into angular_steps *
/// vertical_steps points. End caps are omitted: a 2D costmap projection
/// gains nothing from them and the count stays predictable.
inline PointCloud cylinder_to_pointcloud(const CylinderObstacle& cylinder, int angular_steps,
                                         int vertical_steps) {
    if (angular_steps < 3 || vertical_steps < 2) {
        throw InvalidResolution("need at least 3 angular and 2 vertical steps");
    }
    constexpr double kTwoPi = 6.28318530717958647692;
    const double radius = 0.5 * cylinder.diameter;
    PointCloud cloud;
    cloud.points.reserve(static_cast<std::size_t>(angular_steps) * vertical_steps);
    for (int j = 0; j < angular_steps; ++j) {
        const double angle = kTwoPi * j / angular_steps;
        const double px = cylinder.center_x + radius * std::cos(angle);
        const double py = cylinder.center_y + radius * std::sin(angle);
        for (int k = 0; k < vertical_steps; ++k) {
            const double pz = cylinder.height * k / (vertical_steps - 1);
            cloud.points.push_back({px, py, pz});
        }
    }
    return cloud;
}

enum class CellState : std::uint8_t { kFree, kOccupied, kInflated };

struct GridSpec {
    double resolution = 0.0;  // cm per cell
    int cols = 0;
    int rows = 0;
    double origin_x = 0.0;  // cm, world coordinate of the (0,0) cell corner
    double origin_y = 0.0;
};

inline bool grid_spec_valid(const GridSpec& spec) {
    return spec.resolution > 0.0 && spec.cols > 0 && spec.rows > 0;
}

/// Row-major tri-state cost grid. Cell (col, row) spans
/// [origin + col*res, origin + (col+1)*res) on x and likewise on y; its
/// center sits half a cell in.
struct OccupancyGrid {
    GridSpec spec;
    std::vector<CellState> cells;

    CellState at(int col, int row) const { return cells[static_cast<std::size_t>(row) * spec.cols + col]; }
    CellState& at(int col, int row) { return cells[static_cast<std::size_t>(row) * spec.cols + col]; }
    double cell_center_x(int col) const { return spec.origin_x + (col + 0.5) * spec.resolution; }
    double cell_center_y(int row) const { return spec.origin_y + (row + 0.5) * spec.resolution; }
};

/// Mark cells whose center lies within diameter/2 of an obstacle axis as
/// occupied (closed boundary: a center exactly on the rim counts), cells
/// within diameter/2 + inflation_radius as inflated. Occupied wins over
/// inflated. Only the cell window around each obstacle is visited, widened
/// one cell so the distance predicate alone decides the boundary.
inline OccupancyGrid rasterize(std::span<const CylinderObstacle> obstacles, const GridSpec& spec,
                               double inflation_radius) {
    if (!grid_spec_valid(spec)) throw std::invalid_argument("invalid grid spec");
    if (inflation_radius < 0.0) throw std::invalid_argument("inflation radius must be >= 0");
    OccupancyGrid grid{spec, std::vector<CellState>(
                                 static_cast<std::size_t>(spec.cols) * spec.rows,
                                 CellState::kFree)};
    for (const CylinderObstacle& obstacle : obstacles) {
        const double occupied_radius = 0.5 * obstacle.diameter;
        const double inflated_radius = occupied_radius + inflation_radius;
        const auto window = [&](double center, double origin, int count, int& lo, int& hi) {
            lo = static_cast<int>(std::floor((center - inflated_radius - origin) / spec.resolution - 0.5)) - 1;
            hi = static_cast<int>(std::ceil((center + inflated_radius - origin) / spec.resolution - 0.5)) + 1;
            lo = std::max(lo, 0);
            hi = std::min(hi, count - 1);
        };
        int col_lo, col_hi, row_lo, row_hi;
        window(obstacle.center_x, spec.origin_x, spec.cols, col_lo, col_hi);
        window(obstacle.center_y, spec.origin_y, spec.rows, row_lo, row_hi);
        for (int row = row_lo; row <= row_hi; ++row) {
            for (int col = col_lo; col <= col_hi; ++col) {
                const double dx = grid.cell_center_x(col) - obstacle.center_x;
                const double dy = grid.cell_center_y(row) - obstacle.center_y;
                const double dist_sq = dx * dx + dy * dy;
                if (dist_sq <= occupied_radius * occupied_radius) {
                    grid.at(col, row) = CellState::kOccupied;
                } else if (dist_sq <= inflated_radius * inflated_radius &&
                           grid.at(col, row) != CellState::kOccupied) {
                    grid.at(col, row) = CellState::kInflated;
                }
            }
        }
    }
    return grid;
}

/// CLOUD stream format, one block per frame:
///
///   CLOUD <frame_id> <point_count>
///   P <x> <y> <z>
///   ...
///   END
///
/// Flushed per frame so a downstream consumer can read incrementally.
inline void write_cloud(const PointCloud& cloud, std::ostream& out) {
    out << "CLOUD " << cloud.frame_id << ' ' << cloud.points.size() << '\n';
    for (const Point3& p : cloud.points) {
        out << "P " << detail::fmt(p.x) << ' ' << detail::fmt(p.y) << ' ' << detail::fmt(p.z)
            << '\n';
    }
    out << "END\n";
    out.flush();
    if (!out) throw Error("cloud stream write failed");
}

inline void emit_cloud_stream(std::span<const PointCloud> clouds, std::ostream& out) {
    for (const PointCloud& cloud : clouds) write_cloud(cloud, out);
}

inline std::vector<PointCloud> read_cloud_stream(std::istream& in) {
    std::vector<PointCloud> clouds;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_comment_or_blank(line)) continue;
        auto tok = detail::split_ws(line);
        if (tok[0] != "CLOUD" || tok.size() != 3) {
            throw ParseError("expected CLOUD <frame_id> <count>", line_no);
        }
        PointCloud cloud;
        cloud.frame_id = detail::parse_int(tok[1], line_no);
        const long long count = detail::parse_int(tok[2], line_no);
        if (count < 0) throw ParseError("negative point count", line_no);
        cloud.points.reserve(static_cast<std::size_t>(count));
        for (long long i = 0; i < count; ++i) {
            if (!std::getline(in, line)) throw ParseError("truncated cloud block", line_no + 1);
            ++line_no;
            tok = detail::split_ws(line);
            if (tok.size() != 4 || tok[0] != "P") throw ParseError("expected P <x> <y> <z>", line_no);
            cloud.points.push_back({detail::parse_double(tok[1], line_no),
                                    detail::parse_double(tok[2], line_no),
                                    detail::parse_double(tok[3], line_no)});
        }
        if (!std::getline(in, line)) throw ParseError("missing END", line_no + 1);
        ++line_no;
        if (line != "END") throw ParseError("expected END", line_no);
        clouds.push_back(std::move(cloud));
    }
    return clouds;
}

/// Grid export format:
///
///   GRID <cols> <rows> <resolution> <origin_x> <origin_y>
///   <rows lines of cols characters: '.' free, '#' occupied, '+' inflated>
///
/// Row 0 (smallest y) is written first. Multiple grids may be concatenated
/// in one stream (one per frame).
inline void write_grid(const OccupancyGrid& grid, std::ostream& out) {
    out << "GRID " << grid.spec.cols << ' ' << grid.spec.rows << ' '
        << detail::fmt(grid.spec.resolution) << ' ' << detail::fmt(grid.spec.origin_x) << ' '
        << detail::fmt(grid.spec.origin_y) << '\n';
    for (int row = 0; row < grid.spec.rows; ++row) {
        std::string text(grid.spec.cols, '.');
        for (int col = 0; col < grid.spec.cols; ++col) {
            switch (grid.at(col, row)) {
                case CellState::kFree: break;
                case CellState::kOccupied: text[col] = '#'; break;
                case CellState::kInflated: text[col] = '+'; break;
            }
        }
        out << text << '\n';
    }
    out.flush();
}

inline std::vector<OccupancyGrid> read_grids(std::istream& in) {
    std::vector<OccupancyGrid> grids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_comment_or_blank(line)) continue;
        const auto tok = detail::split_ws(line);
        if (tok[0] != "GRID" || tok.size() != 6) {
            throw ParseError("expected GRID <cols> <rows> <res> <ox> <oy>", line_no);
        }
        OccupancyGrid grid;
        grid.spec.cols = static_cast<int>(detail::parse_int(tok[1], line_no));
        grid.spec.rows = static_cast<int>(detail::parse_int(tok[2], line_no));
        grid.spec.resolution = detail::parse_double(tok[3], line_no);
        grid.spec.origin_x = detail::parse_double(tok[4], line_no);
        grid.spec.origin_y = detail::parse_double(tok[5], line_no);
        if (!grid_spec_valid(grid.spec)) throw ParseError("invalid grid header", line_no);
        grid.cells.resize(static_cast<std::size_t>(grid.spec.cols) * grid.spec.rows);
        for (int row = 0; row < grid.spec.rows; ++row) {
            if (!std::getline(in, line)) throw ParseError("truncated grid", line_no + 1);
            ++line_no;
            if (static_cast<int>(line.size()) < grid.spec.cols) {
                throw ParseError("grid row shorter than cols", line_no);
            }
            for (int col = 0; col < grid.spec.cols; ++col) {
                switch (line[col]) {
                    case '.': grid.at(col, row) = CellState::kFree; break;
                    case '#': grid.at(col, row) = CellState::kOccupied; break;
                    case '+': grid.at(col, row) = CellState::kInflated; break;
                    default: throw ParseError("unknown cell character", line_no);
                }
            }
        }
        grids.push_back(std::move(grid));
    }
    return grids;
}

}  // namespace stereobox
