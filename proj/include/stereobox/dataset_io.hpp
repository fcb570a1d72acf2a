#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "stereobox/detail/text.hpp"
#include "stereobox/error.hpp"
#include "stereobox/estimator.hpp"

namespace stereobox {

/// Dataset files are whitespace-separated columns with '#' comment lines.
/// Depth datasets: `disparity depth`. Size datasets:
/// `depth pixel_extent real_extent`. Generators prepend a provenance
/// comment (seed, sigma, rig, rng identity).

inline void write_depth_dataset(std::span<const DepthSample> samples, std::ostream& out,
                                const std::string& provenance = "") {
    if (!provenance.empty()) out << "# " << provenance << '\n';
    out << "# disparity depth\n";
    for (const DepthSample& s : samples) {
        out << detail::fmt(s.disparity) << ' ' << detail::fmt(s.depth) << '\n';
    }
}

inline std::vector<DepthSample> read_depth_dataset(std::istream& in) {
    std::vector<DepthSample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_comment_or_blank(line)) continue;
        const auto tok = detail::split_ws(line);
        if (tok.size() != 2) throw ParseError("depth sample expects 2 columns", line_no);
        DepthSample s{detail::parse_double(tok[0], line_no), detail::parse_double(tok[1], line_no)};
        if (s.disparity <= 0.0 || s.depth <= 0.0) {
            throw ParseError("disparity and depth must be positive", line_no);
        }
        samples.push_back(s);
    }
    return samples;
}

inline void write_size_dataset(std::span<const SizeSample> samples, std::ostream& out,
                               const std::string& provenance = "") {
    if (!provenance.empty()) out << "# " << provenance << '\n';
    out << "# depth pixel_extent real_extent\n";
    for (const SizeSample& s : samples) {
        out << detail::fmt(s.depth) << ' ' << detail::fmt(s.pixel_extent) << ' '
            << detail::fmt(s.real_extent) << '\n';
    }
}

inline std::vector<SizeSample> read_size_dataset(std::istream& in) {
    std::vector<SizeSample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_comment_or_blank(line)) continue;
        const auto tok = detail::split_ws(line);
        if (tok.size() != 3) throw ParseError("size sample expects 3 columns", line_no);
        SizeSample s{detail::parse_double(tok[0], line_no), detail::parse_double(tok[1], line_no),
                     detail::parse_double(tok[2], line_no)};
        if (s.depth <= 0.0 || s.pixel_extent <= 0.0 || s.real_extent <= 0.0) {
            throw ParseError("size sample fields must be positive", line_no);
        }
        samples.push_back(s);
    }
    return samples;
}

inline std::vector<DepthSample> load_depth_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open dataset: " + path);
    return read_depth_dataset(in);
}

inline std::vector<SizeSample> load_size_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open dataset: " + path);
    return read_size_dataset(in);
}

}  // namespace stereobox
