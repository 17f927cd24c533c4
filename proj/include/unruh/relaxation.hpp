#pragma once

// Classical master-equation relaxation over a discrete level set:
//
//   dp_m/dt = sum_{n != m} W(n->m) p_n  -  p_m sum_{n != m} W(m->n),
//
// with rates obeying detailed balance W(n->m)/W(m->n) = exp(-b (E_m - E_n)).
// Rates are stored both linearly and in log space: at wedge-scale gaps
// (b dE ~ 1e4) uphill rates underflow to zero linearly, while their logs stay
// exact, which is what the balance checks use.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "unruh/errors.hpp"
#include "unruh/numerics.hpp"

namespace unruh {

enum class RateKind { metropolis, heat_bath };

struct RateModel {
    RateKind kind = RateKind::metropolis;
    double gamma0 = 1.0; // attempt rate [1/s]
};

struct RateSystem {
    std::vector<double> energies; // scaled units
    double b = 0.0;
    std::size_t n = 0;
    std::vector<double> w;        // w[m*n + k] = rate k -> m, zero diagonal [1/s]
    std::vector<double> logw;     // log rates; -inf where w == 0 structurally
    std::vector<double> exit;     // exit[k] = sum_m w[m][k]
    double max_exit_rate = 0.0;

    double rate(std::size_t to, std::size_t from) const { return w[to * n + from]; }
    double log_rate(std::size_t to, std::size_t from) const { return logw[to * n + from]; }
};

inline RateSystem build_rates(const std::vector<double>& energies, double b,
                              const RateModel& model) {
    if (energies.size() < 2) throw DomainError("build_rates: need >= 2 levels");
    if (!(b > 0.0)) throw DomainError("build_rates: b > 0 required");
    if (!(model.gamma0 > 0.0)) throw DomainError("build_rates: gamma0 > 0 required");

    RateSystem rs;
    rs.energies = energies;
    rs.b = b;
    rs.n = energies.size();
    rs.w.assign(rs.n * rs.n, 0.0);
    rs.logw.assign(rs.n * rs.n, neg_inf);
    rs.exit.assign(rs.n, 0.0);
    const double lg = std::log(model.gamma0);

    for (std::size_t from = 0; from < rs.n; ++from) {
        for (std::size_t to = 0; to < rs.n; ++to) {
            if (to == from) continue;
            const double x = b * (energies[to] - energies[from]); // uphill > 0
            double logr;
            if (model.kind == RateKind::metropolis) {
                logr = lg + std::fmin(0.0, -x);
            } else {
                logr = lg - softplus(x);
            }
            rs.logw[to * rs.n + from] = logr;
            rs.w[to * rs.n + from] = std::exp(logr);
        }
    }
    for (std::size_t from = 0; from < rs.n; ++from) {
        double e = 0.0;
        for (std::size_t to = 0; to < rs.n; ++to) e += rs.w[to * rs.n + from];
        rs.exit[from] = e;
        rs.max_exit_rate = std::fmax(rs.max_exit_rate, e);
    }
    return rs;
}

// Rate table from CSV rows (to, from, rate) [1/s]; missing pairs stay zero.
// Positive pairs must obey detailed balance against the supplied energies.
inline RateSystem load_rates_csv(const std::string& path,
                                 const std::vector<double>& energies, double b,
                                 double balance_tol = 1e-9) {
    if (energies.size() < 2) throw DomainError("load_rates_csv: need >= 2 levels");
    if (!(b > 0.0)) throw DomainError("load_rates_csv: b > 0 required");
    std::ifstream in(path);
    if (!in) throw IoError("load_rates_csv: cannot open " + path);

    RateSystem rs;
    rs.energies = energies;
    rs.b = b;
    rs.n = energies.size();
    rs.w.assign(rs.n * rs.n, 0.0);
    rs.logw.assign(rs.n * rs.n, neg_inf);
    rs.exit.assign(rs.n, 0.0);

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        long to = 0, from = 0;
        double rate = 0.0;
        if (!(ss >> to >> from >> rate)) {
            if (lineno == 1) continue; // header
            throw ParseError("load_rates_csv: bad row at line " + std::to_string(lineno));
        }
        if (to < 0 || from < 0 || static_cast<std::size_t>(to) >= rs.n ||
            static_cast<std::size_t>(from) >= rs.n || to == from) {
            throw ValidationError("load_rates_csv: index out of range or diagonal at line " +
                                  std::to_string(lineno));
        }
        if (!(rate >= 0.0)) {
            throw ValidationError("load_rates_csv: rate >= 0 required at line " +
                                  std::to_string(lineno));
        }
        rs.w[static_cast<std::size_t>(to) * rs.n + static_cast<std::size_t>(from)] = rate;
        rs.logw[static_cast<std::size_t>(to) * rs.n + static_cast<std::size_t>(from)] =
            rate > 0.0 ? std::log(rate) : neg_inf;
    }

    for (std::size_t i = 0; i < rs.n; ++i) {
        for (std::size_t j = i + 1; j < rs.n; ++j) {
            const double wij = rs.rate(i, j), wji = rs.rate(j, i);
            if ((wij > 0.0) != (wji > 0.0)) {
                throw ValidationError("load_rates_csv: one-way transition between levels " +
                                      std::to_string(i) + " and " + std::to_string(j) +
                                      " breaks detailed balance");
            }
            if (wij > 0.0) {
                const double lhs = rs.log_rate(i, j) - rs.log_rate(j, i);
                const double rhs = -b * (rs.energies[i] - rs.energies[j]);
                if (std::fabs(lhs - rhs) > balance_tol * std::fmax(1.0, std::fabs(rhs))) {
                    throw ValidationError("load_rates_csv: detailed balance violated for pair (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
                }
            }
        }
    }
    for (std::size_t from = 0; from < rs.n; ++from) {
        double e = 0.0;
        for (std::size_t to = 0; to < rs.n; ++to) e += rs.w[to * rs.n + from];
        rs.exit[from] = e;
        rs.max_exit_rate = std::fmax(rs.max_exit_rate, e);
    }
    return rs;
}

struct PopulationState {
    std::vector<double> p;
    double t = 0.0; // [s]
};

inline void validate_population(const PopulationState& st) {
    double sum = 0.0;
    for (double v : st.p) {
        if (!(v >= -1e-13)) {
            throw ValidationError("population: p_i >= 0 required");
        }
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
        throw ValidationError("population: sum p_i = 1 within 1e-12 required");
    }
}

struct Trajectory {
    std::vector<double> times;                    // [s]
    std::vector<std::vector<double>> populations; // per sample
};

// Fixed-step RK4 on the linear master equation. The step must satisfy
// dt * max_exit_rate <= 0.1 or the integrator refuses to run.
inline Trajectory evolve(const RateSystem& rs, const PopulationState& p0,
                         double dt, double t_max, int samples = 200) {
    if (p0.p.size() != rs.n) throw DomainError("evolve: population size mismatch");
    validate_population(p0);
    if (!(dt > 0.0) || !(t_max > 0.0)) throw DomainError("evolve: dt, t_max > 0 required");
    if (dt * rs.max_exit_rate > 0.1 + 1e-12) {
        throw StabilityError("evolve: dt * max_exit_rate <= 0.1 required");
    }
    if (samples < 2) throw DomainError("evolve: samples >= 2 required");

    const std::size_t n = rs.n;
    auto deriv = [&rs, n](const std::vector<double>& p, std::vector<double>& dp) {
        for (std::size_t m = 0; m < n; ++m) {
            double gain = 0.0;
            const double* row = &rs.w[m * n];
            for (std::size_t k = 0; k < n; ++k) gain += row[k] * p[k];
            dp[m] = gain - rs.exit[m] * p[m];
        }
    };

    const long steps = static_cast<long>(std::ceil(t_max / dt - 1e-12));
    const long stride = std::max(1L, steps / std::max(1, samples - 1));

    std::vector<double> p = p0.p, k1(n), k2(n), k3(n), k4(n), tmp(n);
    Trajectory traj;
    traj.times.push_back(0.0);
    traj.populations.push_back(p);

    for (long s = 1; s <= steps; ++s) {
        deriv(p, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * dt * k1[i];
        deriv(tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * dt * k2[i];
        deriv(tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + dt * k3[i];
        deriv(tmp, k4);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if (s % stride == 0 || s == steps) {
            traj.times.push_back(dt * static_cast<double>(s));
            traj.populations.push_back(p);
        }
    }
    PopulationState last{traj.populations.back(), traj.times.back()};
    validate_population(last);
    return traj;
}

// Detailed balance forces the Gibbs stationary state; computed directly in
// log space and then verified to annihilate the generator.
inline PopulationState stationary_distribution(const RateSystem& rs) {
    // connectivity over the undirected support of W
    {
        std::vector<int> comp(rs.n, -1);
        std::vector<std::size_t> stack{0};
        comp[0] = 0;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < rs.n; ++j) {
                if (comp[j] < 0 && (rs.rate(i, j) > 0.0 || rs.rate(j, i) > 0.0)) {
                    comp[j] = 0;
                    stack.push_back(j);
                }
            }
        }
        for (std::size_t j = 0; j < rs.n; ++j) {
            if (comp[j] < 0) {
                throw DisconnectedError("stationary_distribution: rate graph is "
                                        "disconnected; stationary state not unique");
            }
        }
    }

    std::vector<double> logw(rs.n);
    for (std::size_t i = 0; i < rs.n; ++i) logw[i] = -rs.b * rs.energies[i];
    const double z = logsumexp(logw);
    PopulationState pi;
    pi.t = 0.0;
    pi.p.resize(rs.n);
    for (std::size_t i = 0; i < rs.n; ++i) pi.p[i] = std::exp(logw[i] - z);

    // annihilation check, scaled by the attempt-rate magnitude
    double scale = 0.0;
    for (double v : rs.w) scale = std::fmax(scale, v);
    for (std::size_t m = 0; m < rs.n; ++m) {
        double r = 0.0;
        for (std::size_t k = 0; k < rs.n; ++k) r += rs.rate(m, k) * pi.p[k];
        r -= rs.exit[m] * pi.p[m];
        if (std::fabs(r) > 1e-10 * std::fmax(scale, 1e-300)) {
            throw ValidationError("stationary_distribution: Gibbs state fails to "
                                  "annihilate the generator (rates inconsistent)");
        }
    }
    return pi;
}

// Normalized Gibbs log weights log pi_i = -b E_i - log Z. Stay finite even
// where pi itself underflows, which happens already at b dE ~ 7.5e2.
inline std::vector<double> gibbs_log_weights(const RateSystem& rs) {
    std::vector<double> lw(rs.n);
    for (std::size_t i = 0; i < rs.n; ++i) lw[i] = -rs.b * rs.energies[i];
    const double z = logsumexp(lw);
    for (auto& v : lw) v -= z;
    return lw;
}

// KL divergence D(p || pi) = sum p (ln p - log pi), with the reference given
// in log space so underflowed Gibbs weights still yield a finite divergence.
// p entries at or below zero contribute zero (0 ln 0 = 0; tiny negative RK4
// undershoot is clipped).
inline double kl_to_gibbs_log(const std::vector<double>& p,
                              const std::vector<double>& log_pi) {
    if (p.size() != log_pi.size()) throw DomainError("kl_to_gibbs: size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (!std::isfinite(log_pi[i])) {
            throw DomainError("kl_to_gibbs: reference weight must be finite");
        }
        d += p[i] * (std::log(p[i]) - log_pi[i]);
    }
    // the sum can land a few ulps below zero at convergence; the divergence
    // itself is nonnegative, so do not report the rounding residue
    return std::fmax(0.0, d);
}

inline double kl_to_gibbs(const std::vector<double>& p, const std::vector<double>& pi) {
    std::vector<double> log_pi(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (!(pi[i] > 0.0)) throw DomainError("kl_to_gibbs: reference must be positive");
        log_pi[i] = std::log(pi[i]);
    }
    return kl_to_gibbs_log(p, log_pi);
}

inline std::vector<double> kl_to_gibbs(const Trajectory& traj, const RateSystem& rs) {
    const auto log_pi = gibbs_log_weights(rs);
    std::vector<double> out;
    out.reserve(traj.populations.size());
    for (const auto& p : traj.populations) out.push_back(kl_to_gibbs_log(p, log_pi));
    return out;
}

} // namespace unruh
