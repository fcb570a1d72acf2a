#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "stereobox/detail/text.hpp"
#include "stereobox/error.hpp"
#include "stereobox/types.hpp"

namespace stereobox {

/// Detection frame format (line-oriented text, one file per frame or a
/// concatenated stream):
///
///   FRAME <frame_id> <image_width> <image_height>
///   DET <L|R> <class_id> <confidence> <x_min> <y_min> <x_max> <y_max>
///
/// Whitespace-separated decimal numbers; '#' starts a comment line.
inline std::vector<StereoFrame> read_frames(std::istream& in) {
    std::vector<StereoFrame> frames;
    std::string line;
    std::size_t line_no = 0;
    bool open = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_comment_or_blank(line)) continue;
        const auto tok = detail::split_ws(line);
        if (tok[0] == "FRAME") {
            if (tok.size() != 4) throw ParseError("FRAME expects 3 fields", line_no);
            StereoFrame f;
            f.frame_id = detail::parse_int(tok[1], line_no);
            f.image_width = static_cast<int>(detail::parse_int(tok[2], line_no));
            f.image_height = static_cast<int>(detail::parse_int(tok[3], line_no));
            if (f.image_width <= 0 || f.image_height <= 0) {
                throw ParseError("image dimensions must be positive", line_no);
            }
            frames.push_back(std::move(f));
            open = true;
        } else if (tok[0] == "DET") {
            if (!open) throw ParseError("DET before any FRAME header", line_no);
            if (tok.size() != 8) throw ParseError("DET expects 7 fields", line_no);
            StereoFrame& f = frames.back();
            BBox box;
            box.class_id = static_cast<int>(detail::parse_int(tok[2], line_no));
            box.confidence = detail::parse_double(tok[3], line_no);
            box.x_min = detail::parse_double(tok[4], line_no);
            box.y_min = detail::parse_double(tok[5], line_no);
            box.x_max = detail::parse_double(tok[6], line_no);
            box.y_max = detail::parse_double(tok[7], line_no);
            if (!bbox_valid(box, f.image_width, f.image_height)) {
                throw ParseError("bounding box violates frame bounds or ordering", line_no);
            }
            if (tok[1] == "L") {
                f.left_detections.push_back(box);
            } else if (tok[1] == "R") {
                f.right_detections.push_back(box);
            } else {
                throw ParseError("detection side must be L or R", line_no);
            }
        } else {
            throw ParseError("unknown record '" + std::string(tok[0]) + "'", line_no);
        }
    }
    return frames;
}

inline void write_frame(const StereoFrame& frame, std::ostream& out) {
    out << "FRAME " << frame.frame_id << ' ' << frame.image_width << ' ' << frame.image_height
        << '\n';
    const auto emit = [&out](char side, const BBox& b) {
        out << "DET " << side << ' ' << b.class_id << ' ' << detail::fmt(b.confidence) << ' '
            << detail::fmt(b.x_min) << ' ' << detail::fmt(b.y_min) << ' ' << detail::fmt(b.x_max)
            << ' ' << detail::fmt(b.y_max) << '\n';
    };
    for (const BBox& b : frame.left_detections) emit('L', b);
    for (const BBox& b : frame.right_detections) emit('R', b);
}

inline std::vector<StereoFrame> load_frames(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open frame file: " + path);
    return read_frames(in);
}

}  // namespace stereobox
