#pragma once

// Small numeric helpers shared across modules. Everything here is pure and
// allocation-free unless stated otherwise.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "unruh/errors.hpp"

namespace unruh {

inline constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();
inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// artanh(u) evaluated through log1p so that accuracy degrades gracefully as
// |u| -> 1 instead of cancelling in log((1+u)/(1-u)).
inline double artanh(double u) {
    if (!(u > -1.0 && u < 1.0)) {
        throw DomainError("artanh: |u| < 1 required");
    }
    return 0.5 * (std::log1p(u) - std::log1p(-u));
}

// log(sum_i exp(x_i)) with the usual max shift. Exact when one finite term
// dominates and the rest underflow: the shifted sum is then exactly zero and
// log1p(0) contributes nothing.
inline double logsumexp(std::span<const double> x) {
    double m = neg_inf;
    for (double v : x) {
        if (v > m) m = v;
    }
    if (!std::isfinite(m)) return m; // empty, or all -inf
    double s = 0.0;
    for (double v : x) {
        if (v != m) s += std::exp(v - m);
    }
    return m + std::log1p(s);
}

inline double logsumexp(const std::vector<double>& x) {
    return logsumexp(std::span<const double>(x.data(), x.size()));
}

// Normalized pair (p_a, p_b) with p_a = exp(la)/(exp(la)+exp(lb)),
// overflow-free in either direction.
struct ProbabilityPair {
    double a = 0.0;
    double b = 0.0;
};

inline ProbabilityPair softmax_pair(double la, double lb) {
    ProbabilityPair p;
    if (la >= lb) {
        const double d = std::exp(lb - la);
        p.a = 1.0 / (1.0 + d);
        p.b = d / (1.0 + d);
    } else {
        const double d = std::exp(la - lb);
        p.a = d / (1.0 + d);
        p.b = 1.0 / (1.0 + d);
    }
    return p;
}

// log(1 + exp(x)) without overflow; used by heat-bath rates.
inline double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

// Trapezoid rule on a uniform grid with spacing h.
inline double trapezoid_uniform(std::span<const double> f, double h) {
    if (f.size() < 2) throw DomainError("trapezoid_uniform: need >= 2 samples");
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * h;
}

// splitmix64: tiny deterministic generator for inverse-iteration start
// vectors. Not for statistics; just needs to be reproducible and to avoid
// pathological alignment with eigenvectors.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in (-1, 1)
    double next_symmetric() {
        return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0;
    }

private:
    std::uint64_t state_;
};

inline bool nearly_equal(double x, double y, double rel, double abs = 0.0) {
    const double d = std::fabs(x - y);
    return d <= abs + rel * std::fmax(std::fabs(x), std::fabs(y));
}

} // namespace unruh
