#pragma once

// Everything except io.hpp, which additionally needs nlohmann/json.

#include "circumsphere.hpp"
#include "curve_curvature.hpp"
#include "embedding_curvature.hpp"
#include "errors.hpp"
#include "gh_space.hpp"
#include "mesh_io.hpp"
#include "metric_core.hpp"
#include "model_space.hpp"
#include "robinson.hpp"
#include "root_finding.hpp"
#include "sampling.hpp"
#include "surface.hpp"
#include "wald.hpp"
