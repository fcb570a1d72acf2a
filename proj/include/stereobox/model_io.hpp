#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "stereobox/detail/text.hpp"
#include "stereobox/error.hpp"
#include "stereobox/polynomial.hpp"

namespace stereobox {

/// POLYMODEL v1 — line-oriented model file:
///
///   POLYMODEL v1
///   degree <k>
///   arity <1|2>
///   units <free text>
///   lambda <real>
///   shift <real>          } repeated per feature
///   scale <real>          }
///   range <min> <max>     }
///   cv_mae <real>         (optional)
///   cv_mse <real>         (optional)
///   coeffs
///   <one coefficient per line, graded-lex order>
///
/// Numbers are written in shortest round-trip form, so a load after a save
/// reproduces the model bit for bit.
inline void save_model(const PolynomialModel& model, std::ostream& out) {
    out << "POLYMODEL v1\n";
    out << "degree " << model.degree << '\n';
    out << "arity " << model.feature_arity << '\n';
    out << "units " << model.units << '\n';
    out << "lambda " << detail::fmt(model.ridge_lambda) << '\n';
    for (int j = 0; j < model.feature_arity; ++j) {
        out << "shift " << detail::fmt(model.input_shift[j]) << '\n';
        out << "scale " << detail::fmt(model.input_scale[j]) << '\n';
        out << "range " << detail::fmt(model.training_range[j].first) << ' '
            << detail::fmt(model.training_range[j].second) << '\n';
    }
    out << "cv_mae " << detail::fmt(model.cv_mae) << '\n';
    out << "cv_mse " << detail::fmt(model.cv_mse) << '\n';
    out << "coeffs\n";
    for (double c : model.coefficients) out << detail::fmt(c) << '\n';
}

namespace detail {

inline std::pair<std::string, std::string> key_value(const std::string& line, std::size_t line_no) {
    const auto pos = line.find(' ');
    if (pos == std::string::npos) throw ParseError("expected 'key value'", line_no);
    return {line.substr(0, pos), line.substr(pos + 1)};
}

}  // namespace detail

inline PolynomialModel load_model(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    const auto next_line = [&]() {
        if (!std::getline(in, line)) throw ParseError("unexpected end of model file", line_no + 1);
        ++line_no;
    };

    next_line();
    if (line != "POLYMODEL v1") throw ParseError("expected POLYMODEL v1 header", line_no);

    PolynomialModel model;
    next_line();
    {
        auto [key, value] = detail::key_value(line, line_no);
        if (key != "degree") throw ParseError("expected degree", line_no);
        model.degree = static_cast<int>(detail::parse_int(value, line_no));
    }
    next_line();
    {
        auto [key, value] = detail::key_value(line, line_no);
        if (key != "arity") throw ParseError("expected arity", line_no);
        model.feature_arity = static_cast<int>(detail::parse_int(value, line_no));
        if (model.feature_arity != 1 && model.feature_arity != 2) {
            throw ParseError("arity must be 1 or 2", line_no);
        }
    }
    next_line();
    {
        auto [key, value] = detail::key_value(line, line_no);
        if (key != "units") throw ParseError("expected units", line_no);
        model.units = value;
    }
    next_line();
    {
        auto [key, value] = detail::key_value(line, line_no);
        if (key != "lambda") throw ParseError("expected lambda", line_no);
        model.ridge_lambda = detail::parse_double(value, line_no);
    }
    for (int j = 0; j < model.feature_arity; ++j) {
        next_line();
        {
            auto [key, value] = detail::key_value(line, line_no);
            if (key != "shift") throw ParseError("expected shift", line_no);
            model.input_shift.push_back(detail::parse_double(value, line_no));
        }
        next_line();
        {
            auto [key, value] = detail::key_value(line, line_no);
            if (key != "scale") throw ParseError("expected scale", line_no);
            const double scale = detail::parse_double(value, line_no);
            if (scale <= 0.0) throw ParseError("scale must be positive", line_no);
            model.input_scale.push_back(scale);
        }
        next_line();
        {
            auto [key, value] = detail::key_value(line, line_no);
            if (key != "range") throw ParseError("expected range", line_no);
            const auto tok = detail::split_ws(value);
            if (tok.size() != 2) throw ParseError("range expects min and max", line_no);
            model.training_range.emplace_back(detail::parse_double(tok[0], line_no),
                                              detail::parse_double(tok[1], line_no));
        }
    }
    next_line();
    while (line != "coeffs") {
        auto [key, value] = detail::key_value(line, line_no);
        if (key == "cv_mae") {
            model.cv_mae = detail::parse_double(value, line_no);
        } else if (key == "cv_mse") {
            model.cv_mse = detail::parse_double(value, line_no);
        } else {
            throw ParseError("expected cv_mae, cv_mse or coeffs", line_no);
        }
        next_line();
    }
    const int m = monomial_count(model.feature_arity, model.degree);
    for (int i = 0; i < m; ++i) {
        next_line();
        model.coefficients.push_back(detail::parse_double(line, line_no));
    }
    return model;
}

inline void save_model_file(const PolynomialModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write model file: " + path);
    save_model(model, out);
}

inline PolynomialModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file: " + path);
    return load_model(in);
}

}  // namespace stereobox
