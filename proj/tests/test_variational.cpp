#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "ltheory/variational.hpp"

using namespace ltheory;

namespace {

// independent energy evaluation: 5-point Gauss per element is exact for the
// quartic integrand of a piecewise-linear function
double quadrature_energy(const Ultrafunction& u) {
    static const double gx[5] = {0.0, -0.5384693101056831, 0.5384693101056831,
                                 -0.9061798459386640, 0.9061798459386640};
    static const double gw[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                 0.2369268850561891, 0.2369268850561891};
    std::size_t m = u.level->m();
    double h = u.level->h(), acc = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
        double a = static_cast<double>(e) * h;
        for (int g = 0; g < 5; ++g) {
            double x = a + 0.5 * h * (1.0 + gx[g]);
            double s = u.derivative_value(x), v = u.value(x);
            double t = s * s - 1.0;
            acc += 0.5 * h * gw[g] * (t * t + v * v);
        }
    }
    return acc;
}

Ultrafunction with_coeffs(std::size_t m, std::vector<double> c) {
    return Ultrafunction(make_level(m, Basis::Hat), std::move(c));
}

}  // namespace

TEST_CASE("the zero function has unit energy") {
    CHECK(j0_value(Ultrafunction::zero(make_level(8, Basis::Hat))) == 1.0);
    CHECK(convex_value(Ultrafunction::zero(make_level(8, Basis::Hat))) == 0.0);
}

TEST_CASE("the zigzag start evaluates to h^2/3") {
    for (std::size_t m : {2, 4, 8, 32}) {
        Ultrafunction z = sawtooth(make_level(m, Basis::Hat));
        double h = z.level->h();
        CHECK(j0_value(z) == doctest::Approx(h * h / 3.0).epsilon(1e-12));
        CHECK(j0_value(z) == doctest::Approx(quadrature_energy(z)).epsilon(1e-12));
    }
}

TEST_CASE("closed-form energy matches quadrature on random coefficients") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> coeff(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> c(7);
        for (double& v : c) v = coeff(rng);
        Ultrafunction u = with_coeffs(8, c);
        CHECK(j0_value(u) == doctest::Approx(quadrature_energy(u)).epsilon(1e-12));
    }
}

TEST_CASE("the analytic gradient matches central differences") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    const double step = 1e-5;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> c(7);
        for (double& v : c) v = coeff(rng);
        Ultrafunction u = with_coeffs(8, c);
        std::vector<double> g = j0_gradient(u);
        std::vector<double> gc = convex_gradient(u);
        REQUIRE(g.size() == c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            auto probe = [&](double d, bool convex) {
                std::vector<double> cc = c;
                cc[i] += d;
                Ultrafunction v = with_coeffs(8, cc);
                return convex ? convex_value(v) : j0_value(v);
            };
            double fd = (probe(step, false) - probe(-step, false)) / (2 * step);
            CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6));
            double fdc = (probe(step, true) - probe(-step, true)) / (2 * step);
            CHECK(gc[i] == doctest::Approx(fdc).epsilon(1e-6));
        }
    }
}

TEST_CASE("the two-element minimizer matches a brute-force scan") {
    double best = 1e300, arg = 0.0;
    for (double c = -1.0; c <= 1.0 + 1e-12; c += 1e-4) {
        double j = j0_value(with_coeffs(2, {c}));
        if (j < best) {
            best = j;
            arg = c;
        }
    }
    LevelMinimizer r = minimize_level(2);
    CHECK(r.converged);
    CHECK(std::abs(r.j_value - best) < 1e-3);
    CHECK(std::abs(std::abs(r.u_star.coeffs[0]) - std::abs(arg)) < 1e-3);
}

TEST_CASE("local minimization improves on the zigzag start") {
    LevelMinimizer r = minimize_level(8);
    double saw = j0_value(sawtooth(make_level(8, Basis::Hat)));
    CHECK(r.converged);
    CHECK(r.j_value <= saw + 1e-12);
    CHECK(r.j_value > 0.0);
    CHECK(r.grad_norm <= 1e-8);
}

TEST_CASE("odd element counts are rejected") {
    CHECK_THROWS_AS(minimize_level(7), DomainViolation);
    CHECK_THROWS_AS(minimize_level(0), DomainViolation);
}

TEST_CASE("the convex surrogate collapses to zero") {
    MinimizeConfig cfg;
    cfg.convex_surrogate = true;
    LevelMinimizer r = minimize_level(8, cfg);
    CHECK(r.converged);
    CHECK(r.u_star.sup_norm() <= 1e-8);
    CHECK(r.j_value <= 1e-12);
}

TEST_CASE("the net sweep decreases strictly and certifies at order two") {
    NetResult net = minimize_net({2, 4, 8, 16});
    REQUIRE(net.levels.size() == 4);
    for (std::size_t i = 1; i < net.levels.size(); ++i)
        CHECK(net.levels[i].j_value < net.levels[i - 1].j_value);
    CHECK(net.order_j > 1.7);
    CHECK(net.order_j < 2.3);
    CertificationReport cert = certify_infinitesimal(net);
    CHECK(cert.pass);
    CHECK(cert.reasons.empty());
    CHECK_THROWS_AS(minimize_net({2, 4}), DomainViolation);
    CHECK_THROWS_AS(minimize_net({8, 4, 2, 16}), DomainViolation);
}

TEST_CASE("certification rejects nets whose energies do not vanish") {
    auto fabricate = [](const std::vector<std::size_t>& ms,
                        const std::function<double(double)>& j_of_h) {
        NetResult net;
        std::vector<double> hs, js;
        for (std::size_t m : ms) {
            LevelMinimizer lm{Ultrafunction::zero(make_level(m, Basis::Hat)),
                              j_of_h(1.0 / static_cast<double>(m)), 0.0, 1, 1, true};
            net.levels.push_back(lm);
            hs.push_back(1.0 / static_cast<double>(m));
            js.push_back(lm.j_value);
        }
        if (*std::min_element(js.begin(), js.end()) > 0.0)
            net.order_j = fit_loglog_order(hs, js);
        return net;
    };
    NetResult flat = fabricate({2, 4, 8, 16}, [](double) { return 0.5; });
    CHECK(!certify_infinitesimal(flat).pass);
    CHECK(!certify_infinitesimal(flat).reasons.empty());

    NetResult quadratic = fabricate({2, 4, 8, 16}, [](double h) { return h * h / 3.0; });
    CertificationReport cert = certify_infinitesimal(quadratic);
    CHECK(cert.pass);
    CHECK(cert.order_j == doctest::Approx(2.0).epsilon(1e-9));

    NetResult negative = fabricate({2, 4, 8, 16}, [](double h) { return h - 0.3; });
    CHECK(!certify_infinitesimal(negative).pass);
}

TEST_CASE("log-log order fitting recovers power laws") {
    std::vector<double> h{0.5, 0.25, 0.125, 0.0625};
    std::vector<double> lin = h, quad, cube;
    for (double v : h) {
        quad.push_back(3.0 * v * v);
        cube.push_back(0.1 * v * v * v);
    }
    CHECK(fit_loglog_order(h, lin) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit_loglog_order(h, quad) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit_loglog_order(h, cube) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("identical configurations reproduce identical sweeps") {
    MinimizeConfig cfg;
    cfg.random_starts = 3;
    NetResult a = minimize_net({2, 4, 8, 16}, cfg);
    NetResult b = minimize_net({2, 4, 8, 16}, cfg);
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
        CHECK(a.levels[i].j_value == b.levels[i].j_value);
        CHECK(a.levels[i].u_star.coeffs == b.levels[i].u_star.coeffs);
        CHECK(a.levels[i].iterations == b.levels[i].iterations);
    }
}
