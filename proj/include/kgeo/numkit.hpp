#pragma once

// Umbrella header for the numerical kernels.

#include "kgeo/cmatrix.hpp"
#include "kgeo/quadrature.hpp"
#include "kgeo/rational.hpp"
