#include "ltheory/variational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <random>

#include "ltheory/errors.hpp"

namespace ltheory {

namespace {

constexpr double kGaussX[5] = {0.0, -0.5384693101056831, 0.5384693101056831,
                               -0.9061798459386640, 0.9061798459386640};
constexpr double kGaussW[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                               0.2369268850561891, 0.2369268850561891};

double node(const Ultrafunction& u, std::size_t g) {
    return (g == 0 || g >= u.level->m()) ? 0.0 : u.coeffs[g - 1];
}

double quadrature_energy(const Ultrafunction& u, bool convex) {
    double h = u.level->h();
    double acc = 0.0;
    for (std::size_t e = 0; e < u.level->m(); ++e) {
        double a = static_cast<double>(e) * h;
        for (int g = 0; g < 5; ++g) {
            double x = a + 0.5 * h * (1.0 + kGaussX[g]);
            double du = u.derivative_value(x), v = u.value(x);
            double grad_term = convex ? du * du : (du * du - 1.0) * (du * du - 1.0);
            acc += 0.5 * h * kGaussW[g] * (grad_term + v * v);
        }
    }
    return acc;
}

double hat_energy(const Ultrafunction& u, bool convex) {
    double h = u.level->h();
    double acc = 0.0;
    for (std::size_t e = 0; e < u.level->m(); ++e) {
        double a = node(u, e), b = node(u, e + 1);
        double s = (b - a) / h;
        double grad_term = convex ? s * s : (s * s - 1.0) * (s * s - 1.0);
        acc += h * (grad_term + (a * a + a * b + b * b) / 3.0);
    }
    return acc;
}

std::vector<double> hat_energy_gradient(const Ultrafunction& u, bool convex) {
    double h = u.level->h();
    std::size_t n = u.level->dim();
    std::vector<double> grad(n, 0.0);
    for (std::size_t e = 0; e < u.level->m(); ++e) {
        double a = node(u, e), b = node(u, e + 1);
        double s = (b - a) / h;
        double ds = convex ? 2.0 * s : 4.0 * s * (s * s - 1.0);
        if (e >= 1 && e <= n) grad[e - 1] += -ds + h * (2.0 * a + b) / 3.0;
        if (e + 1 <= n) grad[e] += ds + h * (a + 2.0 * b) / 3.0;
    }
    return grad;
}

double sup_abs(const std::vector<double>& v) {
    double mx = 0.0;
    for (double x : v) mx = std::max(mx, std::abs(x));
    return mx;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

struct LocalRun {
    std::vector<double> x;
    double f = 0.0;
    double gnorm = 0.0;
    unsigned iterations = 0;
    bool converged = false;
};

/// L-BFGS (memory 10) with backtracking Armijo line search.
template <typename F, typename G>
LocalRun lbfgs(std::vector<double> x, F&& fval, G&& grad, double tol, unsigned max_iter) {
    const std::size_t memory = 10;
    std::deque<std::vector<double>> ss, ys;
    std::deque<double> rhos;
    LocalRun run;
    double f = fval(x);
    std::vector<double> g = grad(x);
    unsigned it = 0;
    for (; it < max_iter; ++it) {
        if (sup_abs(g) <= tol) {
            run.converged = true;
            break;
        }
        // two-loop recursion
        std::vector<double> q = g;
        std::vector<double> alpha(ss.size());
        for (std::size_t k = ss.size(); k-- > 0;) {
            alpha[k] = rhos[k] * dot(ss[k], q);
            for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[k] * ys[k][i];
        }
        double gamma = 1.0;
        if (!ss.empty()) gamma = dot(ss.back(), ys.back()) / dot(ys.back(), ys.back());
        for (double& v : q) v *= gamma;
        for (std::size_t k = 0; k < ss.size(); ++k) {
            double beta = rhos[k] * dot(ys[k], q);
            for (std::size_t i = 0; i < q.size(); ++i) q[i] += (alpha[k] - beta) * ss[k][i];
        }
        std::vector<double> d(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) d[i] = -q[i];
        double slope = dot(g, d);
        if (slope >= 0.0) {  // bad curvature; fall back to steepest descent
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = -g[i];
            slope = -dot(g, g);
            ss.clear();
            ys.clear();
            rhos.clear();
        }
        double step = 1.0;
        std::vector<double> xn(x.size());
        double fn = f;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] + step * d[i];
            fn = fval(xn);
            if (fn <= f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        std::vector<double> gn = grad(xn);
        std::vector<double> s(x.size()), y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            s[i] = xn[i] - x[i];
            y[i] = gn[i] - g[i];
        }
        double sy = dot(s, y);
        if (sy > 1e-14) {
            ss.push_back(std::move(s));
            ys.push_back(std::move(y));
            rhos.push_back(1.0 / sy);
            if (ss.size() > memory) {
                ss.pop_front();
                ys.pop_front();
                rhos.pop_front();
            }
        }
        x = std::move(xn);
        f = fn;
        g = std::move(gn);
    }
    run.x = std::move(x);
    run.f = f;
    run.gnorm = sup_abs(g);
    run.iterations = it;
    return run;
}

}  // namespace

double j0_value(const Ultrafunction& u) {
    if (u.level->basis() == Basis::Sine) return quadrature_energy(u, false);
    return hat_energy(u, false);
}

std::vector<double> j0_gradient(const Ultrafunction& u) {
    if (u.level->basis() == Basis::Sine)
        throw UnsupportedBasis("analytic energy gradient needs the hat basis");
    return hat_energy_gradient(u, false);
}

double convex_value(const Ultrafunction& u) {
    if (u.level->basis() == Basis::Sine) return quadrature_energy(u, true);
    return hat_energy(u, true);
}

std::vector<double> convex_gradient(const Ultrafunction& u) {
    if (u.level->basis() == Basis::Sine)
        throw UnsupportedBasis("analytic energy gradient needs the hat basis");
    return hat_energy_gradient(u, true);
}

Ultrafunction sawtooth(const LevelPtr& level) {
    if (level->basis() != Basis::Hat) throw UnsupportedBasis("zigzag start needs the hat basis");
    if (level->m() % 2 != 0) throw DomainViolation("zigzag start needs an even element count");
    std::vector<double> c(level->dim());
    for (std::size_t g = 1; g < level->m(); ++g) c[g - 1] = (g % 2) ? level->h() : 0.0;
    return Ultrafunction(level, std::move(c));
}

MinimizeConfig MinimizeConfig::create_default() {
    MinimizeConfig cfg;
    if (const char* s = std::getenv("LAMBDA_ORACLE_SEED")) cfg.seed = std::strtoull(s, nullptr, 10);
    return cfg;
}

LevelMinimizer minimize_level(std::size_t m, const MinimizeConfig& cfg,
                              const std::vector<Ultrafunction>& warm_starts) {
    if (m < 2 || m % 2 != 0) throw DomainViolation("element count must be even and >= 2");
    LevelPtr level = make_level(m, Basis::Hat);
    bool convex = cfg.convex_surrogate;

    auto fval = [&](const std::vector<double>& x) {
        return hat_energy(Ultrafunction(level, x), convex);
    };
    auto grad = [&](const std::vector<double>& x) {
        return hat_energy_gradient(Ultrafunction(level, x), convex);
    };

    std::vector<std::vector<double>> starts;
    starts.push_back(sawtooth(level).coeffs);
    starts.emplace_back(level->dim(), 0.0);
    std::mt19937_64 rng(cfg.seed + m);
    std::uniform_real_distribution<double> noise(-0.5 * level->h(), 0.5 * level->h());
    for (unsigned k = 0; k < cfg.random_starts; ++k) {
        std::vector<double> s = starts[0];
        for (double& v : s) v += noise(rng);
        starts.push_back(std::move(s));
    }
    for (const auto& w : warm_starts) {
        if (w.level->m() == m && w.level->basis() == Basis::Hat) starts.push_back(w.coeffs);
    }

    LocalRun best;
    unsigned total_iterations = 0;
    bool have = false;
    for (const auto& s : starts) {
        LocalRun run = lbfgs(s, fval, grad, cfg.grad_tol, cfg.max_iterations);
        total_iterations += run.iterations;
        if (!have || run.f < best.f) {
            have = true;
            best = std::move(run);
        }
    }
    return LevelMinimizer{Ultrafunction(level, std::move(best.x)),
                          best.f,
                          best.gnorm,
                          total_iterations,
                          static_cast<unsigned>(starts.size()),
                          best.converged};
}

double fit_loglog_order(const std::vector<double>& h, const std::vector<double>& y) {
    if (h.size() != y.size() || h.size() < 2) throw DomainViolation("order fit needs >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    auto n = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i] <= 0.0 || y[i] <= 0.0) throw DomainViolation("order fit needs positive data");
        double lx = std::log(h[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

NetResult minimize_net(const std::vector<std::size_t>& element_counts,
                       const MinimizeConfig& cfg) {
    if (element_counts.size() < 4) throw DomainViolation("net needs at least 4 levels");
    for (std::size_t i = 1; i < element_counts.size(); ++i)
        if (element_counts[i] <= element_counts[i - 1])
            throw DomainViolation("levels must strictly increase");

    NetResult net;
    std::vector<double> hs, js, sups;
    for (std::size_t m : element_counts) {
        std::vector<Ultrafunction> warm;
        if (!net.levels.empty()) {
            const Ultrafunction& prev = net.levels.back().u_star;
            if (m % prev.level->m() == 0) warm.push_back(embed(prev, make_level(m, Basis::Hat)));
        }
        LevelMinimizer lm = minimize_level(m, cfg, warm);
        hs.push_back(1.0 / static_cast<double>(m));
        js.push_back(lm.j_value);
        sups.push_back(lm.u_star.sup_norm());
        net.levels.push_back(std::move(lm));
    }
    net.order_j = fit_loglog_order(hs, js);
    net.order_sup = fit_loglog_order(hs, sups);
    return net;
}

CertificationReport certify_infinitesimal(const NetResult& net) {
    CertificationReport rep;
    rep.order_j = net.order_j;
    for (const auto& lm : net.levels)
        if (!(lm.j_value > 0.0)) {
            rep.reasons.push_back("a level energy is not strictly positive");
            break;
        }
    for (std::size_t i = 1; i < net.levels.size(); ++i)
        if (net.levels[i].j_value > net.levels[i - 1].j_value + 1e-10) {
            rep.reasons.push_back("energies do not decrease along the level chain");
            break;
        }
    if (!(net.order_j >= 1.0))
        rep.reasons.push_back("fitted decay order is below 1");
    rep.pass = rep.reasons.empty();
    rep.reading = rep.pass
                      ? "the net of level energies represents a positive infinitesimal"
                      : "the net of level energies does not certify as a positive infinitesimal";
    return rep;
}

}  // namespace ltheory
