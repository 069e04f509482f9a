#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltheory/galerkin.hpp"

namespace ltheory {

/// J0(u) = int_0^1 [(|u'|^2 - 1)^2 + u^2] dx, exact per element on Hat
/// levels; Sine levels fall back to 5-point Gauss quadrature.
double j0_value(const Ultrafunction& u);

/// Analytic nodal gradient of the Hat closed form. Sine is unsupported.
std::vector<double> j0_gradient(const Ultrafunction& u);

/// Convex surrogate J_c(u) = int (|u'|^2 + u^2) dx, whose minimizer is 0.
double convex_value(const Ultrafunction& u);
std::vector<double> convex_gradient(const Ultrafunction& u);

/// The +-1-slope zigzag start: nodal values h * (i mod 2).
Ultrafunction sawtooth(const LevelPtr& level);

struct MinimizeConfig {
    unsigned random_starts = 6;
    std::uint64_t seed = 0x5EED;
    double grad_tol = 1e-8;
    unsigned max_iterations = 10000;
    bool convex_surrogate = false;

    /// Reads LAMBDA_ORACLE_SEED from the environment when set.
    static MinimizeConfig create_default();
};

struct LevelMinimizer {
    Ultrafunction u_star;
    double j_value = 0.0;
    double grad_norm = 0.0;
    unsigned iterations = 0;
    unsigned starts_used = 0;
    bool converged = false;
};

struct NetResult {
    std::vector<LevelMinimizer> levels;
    double order_j = 0.0;    // log-log slope of j_value against h
    double order_sup = 0.0;  // log-log slope of the sup norm against h
};

struct CertificationReport {
    bool pass = false;
    std::vector<std::string> reasons;  // empty on PASS
    double order_j = 0.0;
    std::string reading;  // the net of positive energies as an infinitesimal
};

/// Multistart local minimization of J0 over the Hat level of m elements
/// (m even): zigzag start, zero start, seeded random perturbations,
/// plus any supplied warm starts.
LevelMinimizer minimize_level(std::size_t m, const MinimizeConfig& cfg = {},
                              const std::vector<Ultrafunction>& warm_starts = {});

/// Runs the level chain in increasing order, warm-starting each level with
/// the embedded previous minimizer, and fits the decay orders.
NetResult minimize_net(const std::vector<std::size_t>& element_counts,
                       const MinimizeConfig& cfg = {});

CertificationReport certify_infinitesimal(const NetResult& net);

/// Least-squares slope of log(y) against log(h) over the given levels.
double fit_loglog_order(const std::vector<double>& h, const std::vector<double>& y);

}  // namespace ltheory
