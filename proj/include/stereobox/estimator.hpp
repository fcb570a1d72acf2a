#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "stereobox/error.hpp"
#include "stereobox/polynomial.hpp"
#include "stereobox/rng.hpp"
#include "stereobox/types.hpp"

namespace stereobox {

/// One disparity/depth training pair. Depth is the ground-truth distance in
/// centimeters.
struct DepthSample {
    double disparity = 0.0;  // px
    double depth = 0.0;      // cm
};

/// One size training triple: ground-truth depth, the box extent in pixels
/// (width or height) and the matching real-world extent in centimeters.
struct SizeSample {
    double depth = 0.0;         // cm
    double pixel_extent = 0.0;  // px
    double real_extent = 0.0;   // cm
};

struct CvReport {
    int k = 0;
    std::vector<double> per_fold_mae;
    std::vector<double> per_fold_mse;
    double mean_mae = 0.0;
    double mean_mse = 0.0;
};

inline double mae(std::span<const double> predictions, std::span<const double> truth) {
    if (predictions.size() != truth.size()) {
        throw LengthMismatch("prediction and truth lengths differ");
    }
    if (predictions.empty()) throw EmptyInput("mae over zero samples");
    double sum = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        sum += std::abs(predictions[i] - truth[i]);
    }
    return sum / static_cast<double>(predictions.size());
}

inline double mse(std::span<const double> predictions, std::span<const double> truth) {
    if (predictions.size() != truth.size()) {
        throw LengthMismatch("prediction and truth lengths differ");
    }
    if (predictions.empty()) throw EmptyInput("mse over zero samples");
    double sum = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double r = predictions[i] - truth[i];
        sum += r * r;
    }
    return sum / static_cast<double>(predictions.size());
}

/// Round-robin fold assignment over already-ordered indices: index i goes to
/// fold i % k. Every index lands in exactly one fold and fold sizes differ
/// by at most one.
inline std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, int k) {
    if (k < 2) throw std::invalid_argument("k-fold needs k >= 2");
    if (n < static_cast<std::size_t>(k)) {
        throw InsufficientData("k-fold needs at least k samples");
    }
    std::vector<std::vector<std::size_t>> folds(k);
    for (std::size_t i = 0; i < n; ++i) folds[i % k].push_back(i);
    return folds;
}

struct TrainResult {
    PolynomialModel model;
    CvReport cv;
};

namespace detail {

/// Shared k-fold driver. `order` is the deterministic sample order (sorted
/// by feature, or seeded-shuffled when requested); folds are dealt
/// round-robin over it. The returned model is fit on all samples and carries
/// the cross-validated scores.
inline TrainResult train_with_cv(const std::vector<double>& features, int arity,
                                 const std::vector<double>& targets, int degree,
                                 double ridge_lambda, int k,
                                 std::optional<std::uint32_t> shuffle_seed) {
    const std::size_t n = targets.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (shuffle_seed) {
        Rng rng(*shuffle_seed);
        rng.shuffle(order);
    } else {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            for (int j = 0; j < arity; ++j) {
                if (features[a * arity + j] != features[b * arity + j]) {
                    return features[a * arity + j] < features[b * arity + j];
                }
            }
            return targets[a] < targets[b];
        });
    }

    const auto folds = kfold_partition(n, k);
    const int m = monomial_count(arity, degree);
    for (const auto& fold : folds) {
        if (n - fold.size() < static_cast<std::size_t>(m)) {
            throw InsufficientData("training split smaller than coefficient count");
        }
    }

    CvReport report;
    report.k = k;
    for (const auto& fold : folds) {
        std::vector<bool> held(n, false);
        for (std::size_t pos : fold) held[order[pos]] = true;
        std::vector<double> train_x, train_y, test_pred, test_truth;
        for (std::size_t i = 0; i < n; ++i) {
            if (held[i]) continue;
            for (int j = 0; j < arity; ++j) train_x.push_back(features[i * arity + j]);
            train_y.push_back(targets[i]);
        }
        const PolynomialModel fold_model =
            fit_polynomial(train_x, arity, train_y, degree, ridge_lambda);
        for (std::size_t i = 0; i < n; ++i) {
            if (!held[i]) continue;
            test_pred.push_back(
                evaluate(fold_model, std::span<const double>(&features[i * arity], arity)));
            test_truth.push_back(targets[i]);
        }
        report.per_fold_mae.push_back(mae(test_pred, test_truth));
        report.per_fold_mse.push_back(mse(test_pred, test_truth));
    }
    report.mean_mae = std::accumulate(report.per_fold_mae.begin(), report.per_fold_mae.end(), 0.0) /
                      static_cast<double>(k);
    report.mean_mse = std::accumulate(report.per_fold_mse.begin(), report.per_fold_mse.end(), 0.0) /
                      static_cast<double>(k);

    TrainResult result;
    result.model = fit_polynomial(features, arity, targets, degree, ridge_lambda);
    result.model.cv_mae = report.mean_mae;
    result.model.cv_mse = report.mean_mse;
    result.cv = report;
    return result;
}

}  // namespace detail

/// Fit the disparity -> depth regressor with k-fold cross-validation.
/// Fold assignment is deterministic (samples sorted by disparity, dealt
/// round-robin); pass `shuffle_seed` to use a seeded shuffle instead.
inline TrainResult train_depth_model(std::span<const DepthSample> samples, int degree = 5,
                                     double ridge_lambda = kDefaultRidgeLambda, int k = 5,
                                     std::optional<std::uint32_t> shuffle_seed = std::nullopt) {
    std::vector<double> features, targets;
    features.reserve(samples.size());
    targets.reserve(samples.size());
    for (const DepthSample& s : samples) {
        features.push_back(s.disparity);
        targets.push_back(s.depth);
    }
    TrainResult result =
        detail::train_with_cv(features, 1, targets, degree, ridge_lambda, k, shuffle_seed);
    result.model.units = "cm";
    return result;
}

/// Fit one (depth, pixel extent) -> real extent regressor. Width and height
/// get separate models trained on their own sample sets.
inline TrainResult train_size_model(std::span<const SizeSample> samples, int degree = 5,
                                    double ridge_lambda = kDefaultRidgeLambda, int k = 5,
                                    std::optional<std::uint32_t> shuffle_seed = std::nullopt) {
    std::vector<double> features, targets;
    features.reserve(samples.size() * 2);
    targets.reserve(samples.size());
    for (const SizeSample& s : samples) {
        features.push_back(s.depth);
        features.push_back(s.pixel_extent);
        targets.push_back(s.real_extent);
    }
    TrainResult result =
        detail::train_with_cv(features, 2, targets, degree, ridge_lambda, k, shuffle_seed);
    result.model.units = "cm";
    return result;
}

struct DepthPrediction {
    double depth = 0.0;  // cm
    bool extrapolated = false;
};

/// Evaluate the depth model. Quintic extrapolation is untrustworthy, so a
/// disparity outside the training range flags the prediction instead of
/// failing.
inline DepthPrediction predict_depth(const PolynomialModel& model, double disparity) {
    if (model.feature_arity != 1) {
        throw std::invalid_argument("depth prediction needs an arity-1 model");
    }
    if (disparity <= 0.0) throw NonPositiveDisparity("disparity must be positive");
    const double in[1] = {disparity};
    return {evaluate(model, in), !in_training_range(model, in)};
}

struct SizePrediction {
    double width = 0.0;   // cm
    double height = 0.0;  // cm
    bool extrapolated = false;
};

inline SizePrediction predict_size(const PolynomialModel& width_model,
                                   const PolynomialModel& height_model, double depth,
                                   double box_width_px, double box_height_px) {
    if (width_model.feature_arity != 2 || height_model.feature_arity != 2) {
        throw std::invalid_argument("size prediction needs arity-2 models");
    }
    if (depth <= 0.0 || box_width_px <= 0.0 || box_height_px <= 0.0) {
        throw std::invalid_argument("size prediction needs positive inputs");
    }
    const double win[2] = {depth, box_width_px};
    const double hin[2] = {depth, box_height_px};
    SizePrediction out;
    out.width = evaluate(width_model, win);
    out.height = evaluate(height_model, hin);
    out.extrapolated =
        !in_training_range(width_model, win) || !in_training_range(height_model, hin);
    return out;
}

/// Classical rectified pinhole relation depth = focal * baseline / disparity.
/// Used as the comparison baseline for the trained regressor.
inline double analytical_depth(double disparity, const CameraRig& rig) {
    if (disparity <= 0.0) throw NonPositiveDisparity("disparity must be positive");
    return rig.focal_length_px * rig.baseline_cm / disparity;
}

}  // namespace stereobox
