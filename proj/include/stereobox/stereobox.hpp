#pragma once

// Umbrella header: stereo bounding-box depth and size estimation, obstacle
// construction and occupancy-grid output.

#include "stereobox/dataset_io.hpp"
#include "stereobox/disparity.hpp"
#include "stereobox/error.hpp"
#include "stereobox/estimator.hpp"
#include "stereobox/frame_io.hpp"
#include "stereobox/matching.hpp"
#include "stereobox/model_io.hpp"
#include "stereobox/obstacle.hpp"
#include "stereobox/pipeline.hpp"
#include "stereobox/polynomial.hpp"
#include "stereobox/rng.hpp"
#include "stereobox/synthetic.hpp"
#include "stereobox/types.hpp"
