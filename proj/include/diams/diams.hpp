#pragma once

#include "analysis.hpp"
#include "asymptotic_net.hpp"
#include "conormal_net.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "orient.hpp"
#include "poly_curve.hpp"
#include "singularity.hpp"
#include "smooth_oracle.hpp"
#include "surface_mesh.hpp"
#include "vec3.hpp"
