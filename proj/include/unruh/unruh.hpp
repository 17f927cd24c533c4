#pragma once

#include "unruh/config.hpp"
#include "unruh/constants.hpp"
#include "unruh/errors.hpp"
#include "unruh/grid.hpp"
#include "unruh/kinematics.hpp"
#include "unruh/numerics.hpp"
#include "unruh/potential.hpp"
#include "unruh/relaxation.hpp"
#include "unruh/report.hpp"
#include "unruh/scales.hpp"
#include "unruh/scenario.hpp"
#include "unruh/spectral.hpp"
#include "unruh/thermometry.hpp"
#include "unruh/tridiag.hpp"
#include "unruh/version.hpp"
