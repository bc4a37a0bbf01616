#pragma once

// Transforms between Bergman spaces on model domains in C^2 and their dual
// realizations: convex geometry, quadrature, kernels, coefficient-space
// norms, the Fantappie/Laplace/Borel maps, and the verification harness.

#include "holodual/domain.hpp"
#include "holodual/json_io.hpp"
#include "holodual/kernels.hpp"
#include "holodual/numerics.hpp"
#include "holodual/point.hpp"
#include "holodual/prng.hpp"
#include "holodual/quadrature.hpp"
#include "holodual/report.hpp"
#include "holodual/series.hpp"
#include "holodual/transforms.hpp"
#include "holodual/verify.hpp"
