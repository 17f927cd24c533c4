#pragma once

// Uniform 1-d grid in scaled coordinates.

#include <cmath>

#include "unruh/errors.hpp"

namespace unruh {

struct Grid {
    double zeta_min;
    double zeta_max;
    int n; // number of points including both endpoints

    Grid(double lo, double hi, int npts) : zeta_min(lo), zeta_max(hi), n(npts) {
        if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
            throw DomainError("Grid: zeta_max > zeta_min required");
        }
        if (n < 3) {
            throw DomainError("Grid: n >= 3 required");
        }
    }

    double h() const { return (zeta_max - zeta_min) / (n - 1); }
    double point(int i) const { return zeta_min + h() * i; }

    // Same interval, spacing halved (n -> 2n - 1): grid points nest exactly.
    Grid refined() const { return Grid(zeta_min, zeta_max, 2 * n - 1); }
};

} // namespace unruh
