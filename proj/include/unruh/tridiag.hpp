#pragma once

// Symmetric tridiagonal eigensolver: Sturm-sequence bisection for selected
// eigenvalues, LU-with-pivoting inverse iteration for eigenvectors, explicit
// handling of degenerate clusters. Deterministic: start vectors come from a
// fixed-seed generator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "unruh/errors.hpp"
#include "unruh/numerics.hpp"

namespace unruh {

struct SymTridiag {
    std::vector<double> diag; // size n
    std::vector<double> off;  // size n-1, off[i] couples i and i+1

    std::size_t size() const { return diag.size(); }
};

struct EigenOptions {
    int max_bisect = 160;      // bisection steps per eigenvalue
    int max_iters = 8;         // inverse-iteration steps per start vector
    int max_restarts = 5;      // fresh start vectors before giving up
    double cluster_rel = 1e-10; // relative gap treated as degenerate
    std::uint64_t seed = 0x5eed0f42u;
};

namespace tridiag_detail {

inline double inf_norm(const SymTridiag& t) {
    double m = 0.0;
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::fabs(t.diag[i]);
        if (i > 0) row += std::fabs(t.off[i - 1]);
        if (i + 1 < n) row += std::fabs(t.off[i]);
        m = std::fmax(m, row);
    }
    return m;
}

inline double pivmin_for(const SymTridiag& t) {
    double e2max = 1.0;
    for (double e : t.off) e2max = std::fmax(e2max, e * e);
    return std::numeric_limits<double>::min() * e2max;
}

// Number of eigenvalues strictly below x (Sturm sequence count).
inline int count_below(const SymTridiag& t, double x, double pivmin) {
    int count = 0;
    double q = 1.0;
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0) {
            q = t.diag[0] - x;
        } else {
            const double e = t.off[i - 1];
            q = t.diag[i] - x - e * e / q;
        }
        if (std::fabs(q) <= pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

struct GershgorinBounds {
    double lo;
    double hi;
};

inline GershgorinBounds gershgorin(const SymTridiag& t) {
    const std::size_t n = t.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::fabs(t.off[i - 1]);
        if (i + 1 < n) r += std::fabs(t.off[i]);
        lo = std::fmin(lo, t.diag[i] - r);
        hi = std::fmax(hi, t.diag[i] + r);
    }
    // widen so that count(lo) == 0 and count(hi) == n robustly
    const double pad = 1e-3 * (hi - lo) + 1e3 * pivmin_for(t);
    return {lo - pad, hi + pad};
}

// LU factorization of (T - lambda I) with partial pivoting. Row swaps
// introduce a second superdiagonal (du2).
struct ShiftedFactor {
    std::vector<double> dl, d, du, du2;
    std::vector<std::uint8_t> swapped;
};

inline ShiftedFactor factor_shifted(const SymTridiag& t, double lambda, double pivmin) {
    const std::size_t n = t.size();
    ShiftedFactor f;
    f.dl.assign(n > 1 ? n - 1 : 0, 0.0);
    f.d.assign(n, 0.0);
    f.du.assign(n > 1 ? n - 1 : 0, 0.0);
    f.du2.assign(n > 2 ? n - 2 : 0, 0.0);
    f.swapped.assign(n > 1 ? n - 1 : 0, 0);
    for (std::size_t i = 0; i < n; ++i) f.d[i] = t.diag[i] - lambda;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        f.dl[i] = t.off[i];
        f.du[i] = t.off[i];
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::fabs(f.d[i]) >= std::fabs(f.dl[i])) {
            if (f.d[i] == 0.0) f.d[i] = pivmin;
            const double fact = f.dl[i] / f.d[i];
            f.dl[i] = fact;
            f.d[i + 1] -= fact * f.du[i];
        } else {
            const double fact = f.d[i] / f.dl[i];
            f.d[i] = f.dl[i];
            f.dl[i] = fact;
            const double temp = f.du[i];
            f.du[i] = f.d[i + 1];
            f.d[i + 1] = temp - fact * f.d[i + 1];
            if (i + 2 < n) {
                f.du2[i] = f.du[i + 1];
                f.du[i + 1] = -fact * f.du[i + 1];
            }
            f.swapped[i] = 1;
        }
    }
    if (f.d[n - 1] == 0.0) f.d[n - 1] = pivmin;
    return f;
}

inline void solve_shifted(const ShiftedFactor& f, std::vector<double>& b) {
    const std::size_t n = f.d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!f.swapped[i]) {
            b[i + 1] -= f.dl[i] * b[i];
        } else {
            const double temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - f.dl[i] * b[i];
        }
    }
    b[n - 1] /= f.d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - f.du[n - 2] * b[n - 1]) / f.d[n - 2];
    for (std::size_t ip = n; ip-- > 2;) {
        const std::size_t i = ip - 2;
        b[i] = (b[i] - f.du[i] * b[i + 1] -
                (i + 2 < n ? f.du2[i] * b[i + 2] : 0.0)) / f.d[i];
    }
}

inline void matvec(const SymTridiag& t, const std::vector<double>& x,
                   std::vector<double>& y) {
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        double v = t.diag[i] * x[i];
        if (i > 0) v += t.off[i - 1] * x[i - 1];
        if (i + 1 < n) v += t.off[i] * x[i + 1];
        y[i] = v;
    }
}

inline double norm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace tridiag_detail

inline int sturm_count(const SymTridiag& t, double x) {
    return tridiag_detail::count_below(t, x, tridiag_detail::pivmin_for(t));
}

// Eigenvalue of 0-based index `idx` in ascending order, by bisection.
inline double eigenvalue_by_index(const SymTridiag& t, int idx,
                                  const EigenOptions& opts = {}) {
    const std::size_t n = t.size();
    if (idx < 0 || static_cast<std::size_t>(idx) >= n) {
        throw DomainError("eigenvalue_by_index: index out of range");
    }
    const double pivmin = tridiag_detail::pivmin_for(t);
    auto [lo, hi] = tridiag_detail::gershgorin(t);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < opts.max_bisect; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break; // interval at rounding resolution
        if (tridiag_detail::count_below(t, mid, pivmin) <= idx) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 2.0 * eps * (std::fabs(lo) + std::fabs(hi)) + 2.0 * pivmin) break;
    }
    return lo + 0.5 * (hi - lo);
}

inline std::vector<double> lowest_eigenvalues(const SymTridiag& t, int k,
                                              const EigenOptions& opts = {}) {
    if (k < 1 || static_cast<std::size_t>(k) > t.size()) {
        throw DomainError("lowest_eigenvalues: 1 <= k <= n required");
    }
    std::vector<double> vals(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) vals[i] = eigenvalue_by_index(t, i, opts);
    std::sort(vals.begin(), vals.end());
    return vals;
}

struct TridiagEigenResult {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors; // unit l2 norm
    double residual_max = 0.0;    // max_i ||T v_i - lambda_i v_i||_2
    double ortho_defect_max = 0.0;
};

// Eigenvalues by bisection, eigenvectors by inverse iteration. Consecutive
// eigenvalues closer than cluster_rel (relatively) or than the backward-error
// floor are treated as one degenerate cluster: members are re-orthogonalized
// against each other during iteration, and their shifts are separated by a
// few ulps so the linear solves differ.
inline TridiagEigenResult lowest_eigenpairs_tridiag(const SymTridiag& t, int k,
                                                    const EigenOptions& opts = {}) {
    using namespace tridiag_detail;
    const std::size_t n = t.size();
    TridiagEigenResult res;
    res.values = lowest_eigenvalues(t, k, opts);

    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double norm_t = inf_norm(t);
    const double pivmin = pivmin_for(t);
    const double be_floor = 32.0 * eps * norm_t; // backward-error resolution

    // cluster boundaries
    std::vector<std::size_t> cluster_start(res.values.size(), 0);
    for (std::size_t i = 1; i < res.values.size(); ++i) {
        const double gap = res.values[i] - res.values[i - 1];
        const double thr = std::fmax(
            opts.cluster_rel * std::fmax(std::fabs(res.values[i]), std::fabs(res.values[i - 1])),
            be_floor);
        cluster_start[i] = (gap <= thr) ? cluster_start[i - 1] : i;
    }

    res.vectors.assign(res.values.size(), {});
    std::vector<double> work(n), tv(n);
    const double resid_tol = std::fmax(1e-8, 64.0 * eps * norm_t);

    for (std::size_t j = 0; j < res.values.size(); ++j) {
        const std::size_t cs = cluster_start[j];
        const std::size_t pos_in_cluster = j - cs;
        bool accepted = false;
        for (int restart = 0; restart <= opts.max_restarts && !accepted; ++restart) {
            // Distinct shifts inside a cluster keep the factorizations from
            // being identical for every member.
            const double sep = (4.0 + restart) * eps * std::fmax(std::fabs(res.values[j]), be_floor)
                             + static_cast<double>(pos_in_cluster) * 2.0 * pivmin;
            const double shift = res.values[j] + static_cast<double>(pos_in_cluster + 1) * sep;
            const auto fac = factor_shifted(t, shift, pivmin);

            SplitMix64 rng(opts.seed ^ (0x9e3779b9ULL * (j + 1)) ^
                           (0x7f4a7c15ULL * (restart + 1)));
            for (std::size_t i = 0; i < n; ++i) work[i] = rng.next_symmetric();

            for (int iter = 0; iter < opts.max_iters; ++iter) {
                solve_shifted(fac, work);
                // project out earlier members of the same cluster
                for (std::size_t m = cs; m < j; ++m) {
                    const double c = dot(work, res.vectors[m]);
                    for (std::size_t i = 0; i < n; ++i) work[i] -= c * res.vectors[m][i];
                }
                const double nrm = norm2(work);
                if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
                for (std::size_t i = 0; i < n; ++i) work[i] /= nrm;
                matvec(t, work, tv);
                double r = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = tv[i] - res.values[j] * work[i];
                    r += d * d;
                }
                if (std::sqrt(r) <= resid_tol) {
                    res.vectors[j] = work;
                    accepted = true;
                    break;
                }
            }
        }
        if (!accepted) {
            throw ConvergenceError(
                "inverse iteration failed for eigenvalue index " + std::to_string(j) +
                " after bounded restarts (degenerate cluster beyond separation tolerance)");
        }
    }

    // Final modified Gram-Schmidt sweep (two passes) over all vectors: keeps
    // cross-eigenvalue orthogonality at rounding level without pushing the
    // residual above the backward-error floor.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < res.vectors.size(); ++j) {
            auto& vj = res.vectors[j];
            for (std::size_t m = 0; m < j; ++m) {
                const double c = dot(vj, res.vectors[m]);
                for (std::size_t i = 0; i < n; ++i) vj[i] -= c * res.vectors[m][i];
            }
            const double nrm = norm2(vj);
            if (!(nrm > 0.0)) {
                throw ConvergenceError("orthogonalization annihilated an eigenvector "
                                       "(cluster size exceeds eigenspace dimension?)");
            }
            for (std::size_t i = 0; i < n; ++i) vj[i] /= nrm;
        }
    }

    // fix sign: largest-magnitude entry positive, for reproducibility
    for (auto& v : res.vectors) {
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (std::fabs(v[i]) > std::fabs(v[imax])) imax = i;
        }
        if (v[imax] < 0.0) {
            for (auto& x : v) x = -x;
        }
    }

    for (std::size_t j = 0; j < res.vectors.size(); ++j) {
        matvec(t, res.vectors[j], tv);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = tv[i] - res.values[j] * res.vectors[j][i];
            r += d * d;
        }
        res.residual_max = std::fmax(res.residual_max, std::sqrt(r));
        for (std::size_t m = 0; m < j; ++m) {
            res.ortho_defect_max = std::fmax(
                res.ortho_defect_max, std::fabs(dot(res.vectors[j], res.vectors[m])));
        }
    }
    if (res.residual_max > resid_tol) {
        throw ConvergenceError("eigenpair residual exceeds tolerance after iteration");
    }

    // Sturm self-check: the interval around each accepted value must contain
    // the right number of eigenvalues.
    for (std::size_t j = 0; j < res.values.size(); ++j) {
        const double lam = res.values[j];
        const double w = std::fmax(4.0 * eps * std::fabs(lam), 4.0 * be_floor) + 4.0 * pivmin;
        if (count_below(t, lam + w, pivmin) < static_cast<int>(j) + 1 ||
            count_below(t, lam - w, pivmin) > static_cast<int>(j)) {
            throw ConvergenceError("Sturm count inconsistent with bisection result");
        }
    }
    return res;
}

} // namespace unruh
