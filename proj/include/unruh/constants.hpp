#pragma once

// Physical constants, CODATA 2018 exact/recommended values. Fixed literals so
// results are bit-reproducible across platforms.

namespace unruh {

struct PhysicalConstants {
    double hbar = 1.054571817e-34;   // reduced Planck constant [J s]
    double c = 2.99792458e8;         // speed of light [m/s]
    double k_B = 1.380649e-23;       // Boltzmann constant [J/K]
    double m_e = 9.1093837015e-31;   // electron mass [kg]
    double e = 1.602176634e-19;      // elementary charge [C]
};

constexpr PhysicalConstants codata2018() { return PhysicalConstants{}; }

} // namespace unruh
