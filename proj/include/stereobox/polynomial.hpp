#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stereobox/error.hpp"

namespace stereobox {

/// Default ridge strength applied after feature standardization. Zero is
/// allowed; training then fails loudly on rank-deficient systems instead of
/// shrinking through them.
inline constexpr double kDefaultRidgeLambda = 1e-6;

/// Number of monomials of total degree <= degree in `arity` variables.
inline int monomial_count(int arity, int degree) {
    if (arity == 1) return degree + 1;
    if (arity == 2) return (degree + 1) * (degree + 2) / 2;
    throw std::invalid_argument("feature arity must be 1 or 2");
}

/// All monomials of total degree <= degree over the inputs, in graded
/// lexicographic order with the constant term first. Arity 2 at degree 2:
/// 1, x, y, x^2, xy, y^2.
inline std::vector<double> expand_features(std::span<const double> inputs, int degree) {
    if (degree < 0) throw std::invalid_argument("degree must be non-negative");
    std::vector<double> out;
    if (inputs.size() == 1) {
        out.reserve(degree + 1);
        double power = 1.0;
        for (int a = 0; a <= degree; ++a) {
            out.push_back(power);
            power *= inputs[0];
        }
    } else if (inputs.size() == 2) {
        out.reserve(monomial_count(2, degree));
        std::vector<double> xp(degree + 1, 1.0), yp(degree + 1, 1.0);
        for (int a = 1; a <= degree; ++a) {
            xp[a] = xp[a - 1] * inputs[0];
            yp[a] = yp[a - 1] * inputs[1];
        }
        for (int total = 0; total <= degree; ++total) {
            for (int a = total; a >= 0; --a) {
                out.push_back(xp[a] * yp[total - a]);
            }
        }
    } else {
        throw std::invalid_argument("feature arity must be 1 or 2");
    }
    return out;
}

/// A fitted polynomial regressor: coefficients over standardized inputs
/// (z = (x - shift) / scale, one shift/scale per feature), plus the raw
/// training range per feature so predictions can flag extrapolation.
struct PolynomialModel {
    int degree = 0;
    int feature_arity = 1;
    std::vector<double> coefficients;  // graded-lex order, constant first
    std::vector<double> input_shift;
    std::vector<double> input_scale;
    std::vector<std::pair<double, double>> training_range;  // raw units
    double ridge_lambda = 0.0;
    double cv_mae = std::numeric_limits<double>::quiet_NaN();
    double cv_mse = std::numeric_limits<double>::quiet_NaN();
    std::string units = "cm";
};

inline double evaluate(const PolynomialModel& model, std::span<const double> inputs) {
    if (static_cast<int>(inputs.size()) != model.feature_arity) {
        throw std::invalid_argument("input arity does not match the model");
    }
    double z[2] = {0.0, 0.0};
    for (int j = 0; j < model.feature_arity; ++j) {
        z[j] = (inputs[j] - model.input_shift[j]) / model.input_scale[j];
    }
    const auto basis =
        expand_features(std::span<const double>(z, inputs.size()), model.degree);
    double sum = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) sum += model.coefficients[i] * basis[i];
    return sum;
}

/// True iff every input lies inside the model's recorded training range.
inline bool in_training_range(const PolynomialModel& model, std::span<const double> inputs) {
    for (int j = 0; j < model.feature_arity; ++j) {
        if (inputs[j] < model.training_range[j].first ||
            inputs[j] > model.training_range[j].second) {
            return false;
        }
    }
    return true;
}

/// Least-squares polynomial fit with optional ridge shrinkage on the
/// non-intercept coefficients.
///
/// `features` is row-major, `arity` values per sample. Inputs are
/// standardized before monomial expansion (raw disparities to the 5th power
/// would make the system hopelessly ill-conditioned), the ridge term is
/// applied by augmenting the design matrix with sqrt(lambda) rows, and the
/// system is solved through a rank-revealing Householder QR rather than the
/// normal equations. A rank-deficient system with lambda == 0 throws
/// SingularSystem.
inline PolynomialModel fit_polynomial(std::span<const double> features, int arity,
                                      std::span<const double> targets, int degree,
                                      double ridge_lambda) {
    if (arity != 1 && arity != 2) throw std::invalid_argument("feature arity must be 1 or 2");
    if (degree < 0) throw std::invalid_argument("degree must be non-negative");
    if (ridge_lambda < 0.0) throw std::invalid_argument("ridge lambda must be >= 0");
    const std::size_t n = targets.size();
    if (features.size() != n * static_cast<std::size_t>(arity)) {
        throw std::invalid_argument("feature row count does not match target count");
    }
    const int m = monomial_count(arity, degree);
    if (n < static_cast<std::size_t>(m)) {
        throw InsufficientData("need at least " + std::to_string(m) + " samples, got " +
                               std::to_string(n));
    }
    for (double v : features) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
    }
    for (double v : targets) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite target value");
    }

    PolynomialModel model;
    model.degree = degree;
    model.feature_arity = arity;
    model.ridge_lambda = ridge_lambda;
    model.input_shift.resize(arity);
    model.input_scale.resize(arity);
    model.training_range.resize(arity);
    for (int j = 0; j < arity; ++j) {
        double sum = 0.0, lo = features[j], hi = features[j];
        for (std::size_t i = 0; i < n; ++i) {
            const double v = features[i * arity + j];
            sum += v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double mean = sum / static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = features[i * arity + j] - mean;
            var += d * d;
        }
        model.input_shift[j] = mean;
        model.input_scale[j] = std::max(std::sqrt(var / static_cast<double>(n)), 1e-12);
        model.training_range[j] = {lo, hi};
    }

    const std::size_t rows = n + (ridge_lambda > 0.0 ? m - 1 : 0);
    Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, m);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
    for (std::size_t i = 0; i < n; ++i) {
        double z[2];
        for (int j = 0; j < arity; ++j) {
            z[j] = (features[i * arity + j] - model.input_shift[j]) / model.input_scale[j];
        }
        const auto basis = expand_features(std::span<const double>(z, arity), degree);
        for (int c = 0; c < m; ++c) design(i, c) = basis[c];
        rhs(i) = targets[i];
    }
    if (ridge_lambda > 0.0) {
        const double root = std::sqrt(ridge_lambda);
        for (int c = 1; c < m; ++c) design(n + c - 1, c) = root;  // intercept unpenalized
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (ridge_lambda == 0.0 && qr.rank() < m) {
        throw SingularSystem("design matrix rank " + std::to_string(qr.rank()) + " < " +
                             std::to_string(m) + " coefficients");
    }
    const Eigen::VectorXd solution = qr.solve(rhs);
    model.coefficients.assign(solution.data(), solution.data() + m);
    return model;
}

}  // namespace stereobox
