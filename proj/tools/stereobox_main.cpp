// stereobox command-line tool: synthetic data generation, model training,
// evaluation, and the end-to-end frame pipeline.
//
// Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 model error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "stereobox/stereobox.hpp"

namespace sb = stereobox;

namespace {

// Thrown for anything wrong with a model file or its contents; mapped to
// exit code 3 as opposed to data errors (2).
struct ModelError {
    std::string message;
};

template <typename Fn>
int guard(Fn&& fn) {
    try {
        return fn();
    } catch (const ModelError& e) {
        std::cerr << "model error: " << e.message << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const sb::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

sb::PolynomialModel must_load_model(const std::string& path, int expected_arity) {
    try {
        sb::PolynomialModel model = sb::load_model_file(path);
        if (model.feature_arity != expected_arity) {
            throw ModelError{"model " + path + " has arity " +
                             std::to_string(model.feature_arity) + ", expected " +
                             std::to_string(expected_arity)};
        }
        return model;
    } catch (const sb::Error& e) {
        throw ModelError{e.what()};
    }
}

std::ofstream must_open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw sb::Error("cannot write file: " + path);
    return out;
}

std::uint32_t derive_frame_seed(std::uint32_t seed, int frame) {
    return seed ^ (0x9E3779B9u * static_cast<std::uint32_t>(frame + 1));
}

// "f=800,b=20,pp=320,w=640,h=480" with any subset of keys.
sb::CameraRig parse_rig_spec(const std::string& spec) {
    sb::CameraRig rig = sb::kDefaultRig;
    std::size_t start = 0;
    while (start < spec.size()) {
        std::size_t end = spec.find(',', start);
        if (end == std::string::npos) end = spec.size();
        const std::string item = spec.substr(start, end - start);
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--rig expects k=v pairs");
        const std::string key = item.substr(0, eq);
        const double value = std::stod(item.substr(eq + 1));
        if (key == "f") rig.focal_length_px = value;
        else if (key == "b") rig.baseline_cm = value;
        else if (key == "pp") rig.principal_point_x = value;
        else if (key == "w") rig.image_width = static_cast<int>(value);
        else if (key == "h") rig.image_height = static_cast<int>(value);
        else throw std::invalid_argument("--rig key must be one of f,b,pp,w,h");
        start = end + 1;
    }
    if (!sb::rig_valid(rig)) throw std::invalid_argument("--rig describes an invalid rig");
    return rig;
}

struct RigFlags {
    double focal = sb::kDefaultRig.focal_length_px;
    double baseline = sb::kDefaultRig.baseline_cm;
    double ppx = sb::kDefaultRig.principal_point_x;
    int width = sb::kDefaultRig.image_width;
    int height = sb::kDefaultRig.image_height;

    void attach(CLI::App* cmd) {
        cmd->add_option("--focal", focal, "Focal length, pixels");
        cmd->add_option("--baseline", baseline, "Camera baseline, cm");
        cmd->add_option("--ppx", ppx, "Principal point x, pixels");
        cmd->add_option("--img-width", width, "Image width, pixels");
        cmd->add_option("--img-height", height, "Image height, pixels");
    }

    sb::CameraRig rig() const {
        sb::CameraRig r{baseline, focal, ppx, width, height};
        if (!sb::rig_valid(r)) throw std::invalid_argument("rig flags describe an invalid rig");
        return r;
    }
};

int cmd_gen_scene(const RigFlags& rig_flags, int objects, int frames, double sigma,
                  std::uint32_t seed, const std::string& out_path) {
    const sb::CameraRig rig = rig_flags.rig();
    const auto scene = sb::sample_scene(rig, objects, seed);
    auto out = must_open_out(out_path);
    out << "# " << sb::provenance_comment(rig, sigma, seed) << '\n';
    for (const sb::SceneObject& obj : scene) {
        out << "# TRUTH " << obj.class_id << ' ' << sb::detail::fmt(obj.world_x) << ' '
            << sb::detail::fmt(obj.depth) << ' ' << sb::detail::fmt(obj.real_width) << ' '
            << sb::detail::fmt(obj.real_height) << '\n';
    }
    for (int f = 0; f < frames; ++f) {
        const sb::NoiseSpec noise{sigma, derive_frame_seed(seed, f)};
        const sb::SyntheticFrame synth = sb::generate_frame(scene, rig, noise, f);
        sb::write_frame(synth.frame, out);
    }
    std::cout << "wrote " << frames << " frame(s), " << objects << " object(s) to " << out_path
              << '\n';
    return 0;
}

int cmd_gen_depth(const RigFlags& rig_flags, int n, double z_min, double z_max, double sigma,
                  std::uint32_t seed, const std::string& out_path) {
    const sb::CameraRig rig = rig_flags.rig();
    const auto samples = sb::generate_depth_dataset(rig, n, z_min, z_max, sigma, seed);
    auto out = must_open_out(out_path);
    sb::write_depth_dataset(samples, out, sb::provenance_comment(rig, sigma, seed));
    std::cout << "wrote " << samples.size() << " depth samples to " << out_path << '\n';
    return 0;
}

int cmd_gen_size(const RigFlags& rig_flags, int n, double z_min, double z_max, double e_min,
                 double e_max, double sigma, std::uint32_t seed, const std::string& out_path) {
    const sb::CameraRig rig = rig_flags.rig();
    const auto samples = sb::generate_size_dataset(rig, n, z_min, z_max, e_min, e_max, sigma, seed);
    auto out = must_open_out(out_path);
    sb::write_size_dataset(samples, out, sb::provenance_comment(rig, sigma, seed));
    std::cout << "wrote " << samples.size() << " size samples to " << out_path << '\n';
    return 0;
}

void print_train_report(const sb::TrainResult& result, const std::vector<double>& full_pred,
                        const std::vector<double>& full_truth) {
    for (int f = 0; f < result.cv.k; ++f) {
        std::cout << "fold " << (f + 1) << " mae " << sb::detail::fmt(result.cv.per_fold_mae[f])
                  << " mse " << sb::detail::fmt(result.cv.per_fold_mse[f]) << '\n';
    }
    std::cout << "cv mean mae " << sb::detail::fmt(result.cv.mean_mae) << " mse "
              << sb::detail::fmt(result.cv.mean_mse) << '\n';
    std::cout << "full-fit mae " << sb::detail::fmt(sb::mae(full_pred, full_truth)) << " mse "
              << sb::detail::fmt(sb::mse(full_pred, full_truth)) << '\n';
}

int cmd_train(const std::string& kind, const std::string& data_path, const std::string& out_path,
              int degree, double lambda, int k, std::optional<std::uint32_t> shuffle_seed) {
    if (kind == "depth") {
        const auto samples = sb::load_depth_dataset(data_path);
        const sb::TrainResult result =
            sb::train_depth_model(samples, degree, lambda, k, shuffle_seed);
        std::vector<double> pred, truth;
        for (const sb::DepthSample& s : samples) {
            pred.push_back(sb::predict_depth(result.model, s.disparity).depth);
            truth.push_back(s.depth);
        }
        print_train_report(result, pred, truth);
        sb::save_model_file(result.model, out_path);
    } else {
        const auto samples = sb::load_size_dataset(data_path);
        sb::TrainResult result = sb::train_size_model(samples, degree, lambda, k, shuffle_seed);
        result.model.units = kind == "size-width" ? "cm(width)" : "cm(height)";
        std::vector<double> pred, truth;
        for (const sb::SizeSample& s : samples) {
            const double in[2] = {s.depth, s.pixel_extent};
            pred.push_back(sb::evaluate(result.model, in));
            truth.push_back(s.real_extent);
        }
        print_train_report(result, pred, truth);
        sb::save_model_file(result.model, out_path);
    }
    std::cout << "model written to " << out_path << '\n';
    return 0;
}

int cmd_eval(const std::string& model_path, const std::string& data_path,
             const std::string& rig_spec) {
    sb::PolynomialModel model;
    try {
        model = sb::load_model_file(model_path);
    } catch (const sb::Error& e) {
        throw ModelError{e.what()};
    }
    std::vector<double> pred, truth;
    if (model.feature_arity == 1) {
        const auto samples = sb::load_depth_dataset(data_path);
        std::optional<sb::CameraRig> rig;
        if (!rig_spec.empty()) rig = parse_rig_spec(rig_spec);
        std::cout << (rig ? "# idx disparity truth predicted residual analytical\n"
                          : "# idx disparity truth predicted residual\n");
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const double p = sb::predict_depth(model, samples[i].disparity).depth;
            pred.push_back(p);
            truth.push_back(samples[i].depth);
            std::cout << i << ' ' << sb::detail::fmt(samples[i].disparity) << ' '
                      << sb::detail::fmt(samples[i].depth) << ' ' << sb::detail::fmt(p) << ' '
                      << sb::detail::fmt(p - samples[i].depth);
            if (rig) {
                std::cout << ' '
                          << sb::detail::fmt(sb::analytical_depth(samples[i].disparity, *rig));
            }
            std::cout << '\n';
        }
    } else {
        const auto samples = sb::load_size_dataset(data_path);
        std::cout << "# idx depth pixel_extent truth predicted residual\n";
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const double in[2] = {samples[i].depth, samples[i].pixel_extent};
            const double p = sb::evaluate(model, in);
            pred.push_back(p);
            truth.push_back(samples[i].real_extent);
            std::cout << i << ' ' << sb::detail::fmt(samples[i].depth) << ' '
                      << sb::detail::fmt(samples[i].pixel_extent) << ' '
                      << sb::detail::fmt(samples[i].real_extent) << ' ' << sb::detail::fmt(p)
                      << ' ' << sb::detail::fmt(p - samples[i].real_extent) << '\n';
        }
    }
    if (pred.empty()) throw sb::Error("dataset is empty");
    std::cout << "mae " << sb::detail::fmt(sb::mae(pred, truth)) << '\n';
    std::cout << "mse " << sb::detail::fmt(sb::mse(pred, truth)) << '\n';
    return 0;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            const std::vector<std::string>& frame_paths, const std::string& cloud_path,
            const std::string& grid_path) {
    sb::PipelineConfig config;
    if (!config_path.empty()) config = sb::load_config(config_path);
    for (const std::string& entry : overrides) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value");
        sb::apply_config_entry(config, entry.substr(0, eq), entry.substr(eq + 1));
    }
    if (config.depth_model_path.empty() || config.size_width_model_path.empty() ||
        config.size_height_model_path.empty()) {
        throw std::invalid_argument("run needs model.depth, model.size_width and "
                                    "model.size_height (config file or --set)");
    }
    if (!sb::rig_valid(config.rig)) throw std::invalid_argument("configured rig is invalid");

    sb::PipelineModels models;
    models.depth = must_load_model(config.depth_model_path, 1);
    models.size_width = must_load_model(config.size_width_model_path, 2);
    models.size_height = must_load_model(config.size_height_model_path, 2);

    std::vector<sb::StereoFrame> frames;
    for (const std::string& path : frame_paths) {
        for (sb::StereoFrame& f : sb::load_frames(path)) frames.push_back(std::move(f));
    }

    auto cloud_out = must_open_out(cloud_path);
    auto grid_out = must_open_out(grid_path);
    for (const sb::StereoFrame& frame : frames) {
        const sb::FrameReport report = sb::process_frame(frame, models, config);
        sb::write_report(report, std::cout);
        sb::write_cloud(report.cloud, cloud_out);
        sb::write_grid(report.grid, grid_out);
    }
    std::cerr << "processed " << frames.size() << " frame(s); clouds -> " << cloud_path
              << ", grids -> " << grid_path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stereo bounding-box depth and size estimation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint32_t global_seed = 0;
    app.add_option("--config", config_path, "Pipeline config file (key=value lines)");
    auto* global_seed_opt = app.add_option("--seed", global_seed, "Default seed for generators");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate synthetic scenes and datasets");
    gen->require_subcommand(1);

    auto* gen_scene = gen->add_subcommand("scene", "Write a detection frame file");
    RigFlags scene_rig;
    scene_rig.attach(gen_scene);
    int scene_objects = 4, scene_frames = 1;
    double scene_sigma = sb::kDefaultPixelSigma;
    std::uint32_t scene_seed = 0;
    std::string scene_out = "scene.txt";
    gen_scene->add_option("--objects", scene_objects, "Objects in the scene");
    gen_scene->add_option("--frames", scene_frames, "Frames to emit (re-noised per frame)");
    gen_scene->add_option("--sigma", scene_sigma, "Box coordinate noise, px");
    auto* scene_seed_opt = gen_scene->add_option("--seed", scene_seed, "Scene seed");
    gen_scene->add_option("-o,--out", scene_out, "Output path");

    auto* gen_depth = gen->add_subcommand("depth-data", "Write a disparity/depth dataset");
    RigFlags depth_rig;
    depth_rig.attach(gen_depth);
    int depth_n = 200;
    double depth_zmin = 50.0, depth_zmax = 500.0, depth_sigma = 0.0;
    std::uint32_t depth_seed = 0;
    std::string depth_out = "depth_data.txt";
    gen_depth->add_option("--n", depth_n, "Sample count");
    gen_depth->add_option("--zmin", depth_zmin, "Minimum depth, cm");
    gen_depth->add_option("--zmax", depth_zmax, "Maximum depth, cm");
    gen_depth->add_option("--sigma", depth_sigma, "Box coordinate noise, px");
    auto* depth_seed_opt = gen_depth->add_option("--seed", depth_seed, "Dataset seed");
    gen_depth->add_option("-o,--out", depth_out, "Output path");

    auto* gen_size = gen->add_subcommand("size-data", "Write a depth/extent dataset");
    RigFlags size_rig;
    size_rig.attach(gen_size);
    int size_n = 200;
    double size_zmin = 50.0, size_zmax = 500.0, size_emin = 5.0, size_emax = 50.0,
           size_sigma = 0.0;
    std::uint32_t size_seed = 0;
    std::string size_out = "size_data.txt";
    gen_size->add_option("--n", size_n, "Sample count");
    gen_size->add_option("--zmin", size_zmin, "Minimum depth, cm");
    gen_size->add_option("--zmax", size_zmax, "Maximum depth, cm");
    gen_size->add_option("--emin", size_emin, "Minimum real extent, cm");
    gen_size->add_option("--emax", size_emax, "Maximum real extent, cm");
    gen_size->add_option("--sigma", size_sigma, "Box coordinate noise, px");
    auto* size_seed_opt = gen_size->add_option("--seed", size_seed, "Dataset seed");
    gen_size->add_option("-o,--out", size_out, "Output path");

    // train
    auto* train = app.add_subcommand("train", "Fit a polynomial model with k-fold CV");
    train->require_subcommand(1);
    std::string train_data, train_out = "model.poly";
    int train_degree = 5, train_k = 5;
    double train_lambda = sb::kDefaultRidgeLambda;
    std::uint32_t train_shuffle_seed = 0;
    CLI::Option* train_shuffle_opt = nullptr;
    std::vector<CLI::App*> train_kinds;
    for (const char* kind : {"depth", "size-width", "size-height"}) {
        auto* sub = train->add_subcommand(kind);
        sub->add_option("--data", train_data, "Dataset path")->required();
        sub->add_option("-o,--out", train_out, "Model output path");
        sub->add_option("--degree", train_degree, "Polynomial degree");
        sub->add_option("--lambda", train_lambda, "Ridge strength");
        sub->add_option("--k", train_k, "Cross-validation folds");
        auto* opt = sub->add_option("--shuffle-seed", train_shuffle_seed,
                                    "Use a seeded shuffle instead of sorted folds");
        if (!train_shuffle_opt) train_shuffle_opt = opt;
        train_kinds.push_back(sub);
    }

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a model on a dataset");
    std::string eval_model, eval_data, eval_rig;
    eval->add_option("--model", eval_model, "Model path")->required();
    eval->add_option("--data", eval_data, "Dataset path")->required();
    eval->add_option("--rig", eval_rig,
                     "Add an analytical depth column; e.g. f=800,b=20,pp=320,w=640,h=480");

    // run
    auto* run = app.add_subcommand("run", "Full pipeline over detection frame files");
    std::vector<std::string> run_frames, run_overrides;
    std::string run_cloud = "clouds.txt", run_grid = "grids.txt";
    run->add_option("frames", run_frames, "Detection frame files")->required();
    run->add_option("--set", run_overrides, "Config override key=value (repeatable)");
    run->add_option("--cloud-out", run_cloud, "Point cloud stream output path");
    run->add_option("--grid-out", run_grid, "Occupancy grid output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (gen_scene->parsed()) {
        if (!*scene_seed_opt && *global_seed_opt) scene_seed = global_seed;
        return guard([&] {
            return cmd_gen_scene(scene_rig, scene_objects, scene_frames, scene_sigma, scene_seed,
                                 scene_out);
        });
    }
    if (gen_depth->parsed()) {
        if (!*depth_seed_opt && *global_seed_opt) depth_seed = global_seed;
        return guard([&] {
            return cmd_gen_depth(depth_rig, depth_n, depth_zmin, depth_zmax, depth_sigma,
                                 depth_seed, depth_out);
        });
    }
    if (gen_size->parsed()) {
        if (!*size_seed_opt && *global_seed_opt) size_seed = global_seed;
        return guard([&] {
            return cmd_gen_size(size_rig, size_n, size_zmin, size_zmax, size_emin, size_emax,
                                size_sigma, size_seed, size_out);
        });
    }
    for (CLI::App* sub : train_kinds) {
        if (sub->parsed()) {
            std::optional<std::uint32_t> shuffle;
            if (sub->count("--shuffle-seed")) shuffle = train_shuffle_seed;
            return guard([&] {
                return cmd_train(sub->get_name(), train_data, train_out, train_degree,
                                 train_lambda, train_k, shuffle);
            });
        }
    }
    if (eval->parsed()) {
        return guard([&] { return cmd_eval(eval_model, eval_data, eval_rig); });
    }
    if (run->parsed()) {
        return guard(
            [&] { return cmd_run(config_path, run_overrides, run_frames, run_cloud, run_grid); });
    }
    return 1;
}
