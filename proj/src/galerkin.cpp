#include "ltheory/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ltheory/errors.hpp"

namespace ltheory {

const char* to_string(Basis b) {
    return b == Basis::Hat ? "hat" : "sine";
}

Basis basis_from_string(const std::string& s) {
    if (s == "hat") return Basis::Hat;
    if (s == "sine") return Basis::Sine;
    throw UnsupportedBasis("unknown basis '" + s + "'");
}

ScalarField ScalarField::polynomial(Polynomial p) {
    ScalarField f;
    f.kind_ = Kind::Poly;
    f.name_ = p.to_string("x");
    for (const auto& c : p.coeffs()) f.poly_.push_back(to_double(c));
    return f;
}

ScalarField ScalarField::sin_pi(unsigned k) {
    ScalarField f;
    f.kind_ = Kind::SinPi;
    f.freq_ = k;
    f.name_ = "sin(" + std::to_string(k) + "*pi*x)";
    return f;
}

ScalarField ScalarField::cos_pi(unsigned k) {
    ScalarField f;
    f.kind_ = Kind::CosPi;
    f.freq_ = k;
    f.name_ = "cos(" + std::to_string(k) + "*pi*x)";
    return f;
}

ScalarField ScalarField::piecewise_linear(std::vector<double> interior_values) {
    ScalarField f;
    f.kind_ = Kind::PiecewiseLinear;
    f.name_ = "nodal[" + std::to_string(interior_values.size()) + "]";
    f.nodal_ = std::move(interior_values);
    return f;
}

ScalarField ScalarField::callback(std::function<double(double)> fn, std::string name) {
    ScalarField f;
    f.kind_ = Kind::Callback;
    f.fn_ = std::move(fn);
    f.name_ = std::move(name);
    return f;
}

double ScalarField::operator()(double x) const {
    switch (kind_) {
        case Kind::Poly: {
            double acc = 0.0;
            for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) acc = acc * x + *it;
            return acc;
        }
        case Kind::SinPi:
            return std::sin(freq_ * std::numbers::pi * x);
        case Kind::CosPi:
            return std::cos(freq_ * std::numbers::pi * x);
        case Kind::PiecewiseLinear: {
            std::size_t m = nodal_.size() + 1;
            double t = x * static_cast<double>(m);
            auto node = [&](std::size_t g) {
                return (g == 0 || g >= m) ? 0.0 : nodal_[g - 1];
            };
            if (t <= 0.0) return node(0);
            if (t >= static_cast<double>(m)) return node(m);
            auto e = static_cast<std::size_t>(t);
            double frac = t - static_cast<double>(e);
            return node(e) * (1.0 - frac) + node(e + 1) * frac;
        }
        case Kind::Callback:
            return fn_(x);
    }
    return 0.0;
}

GalerkinLevel::GalerkinLevel(std::size_t m, Basis basis) : m_(m), basis_(basis) {
    if (m < 2) throw DomainViolation("level needs m >= 2");
}

Rational GalerkinLevel::mass_entry(std::size_t i, std::size_t j) const {
    if (i >= dim() || j >= dim()) throw DomainViolation("mass index out of range");
    Rational h(1, static_cast<unsigned long>(m_));
    if (basis_ == Basis::Hat) {
        if (i == j) return 2 * h / 3;
        if (i + 1 == j || j + 1 == i) return h / 6;
        return Rational(0);
    }
    return i == j ? Rational(1, 2) : Rational(0);
}

Rational GalerkinLevel::derivative_entry(std::size_t i, std::size_t j) const {
    if (i >= dim() || j >= dim()) throw DomainViolation("derivative index out of range");
    if (basis_ == Basis::Hat) {
        if (i + 1 == j) return Rational(-1, 2);
        if (j + 1 == i) return Rational(1, 2);
        return Rational(0);
    }
    auto k = static_cast<long>(i + 1), l = static_cast<long>(j + 1);
    if (((k + l) & 1) == 0) return Rational(0);
    long num = 2 * k * l, den = l * l - k * k;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Rational r(num, static_cast<unsigned long>(den));
    r.canonicalize();
    return r;
}

double GalerkinLevel::basis_value(std::size_t i, double x) const {
    if (basis_ == Basis::Sine) return std::sin((i + 1) * std::numbers::pi * x);
    double xi = static_cast<double>(i + 1) * h();
    double v = 1.0 - std::abs(x - xi) / h();
    return v > 0.0 ? v : 0.0;
}

double GalerkinLevel::basis_derivative(std::size_t i, double x) const {
    if (basis_ == Basis::Sine) {
        double w = (i + 1) * std::numbers::pi;
        return w * std::cos(w * x);
    }
    double xi = static_cast<double>(i + 1) * h();
    if (x <= xi - h() || x >= xi + h()) return 0.0;
    return x < xi ? 1.0 / h() : -1.0 / h();
}

std::vector<double> GalerkinLevel::solve_mass(const std::vector<double>& rhs) const {
    if (rhs.size() != dim()) throw LevelMismatch("right-hand side has wrong dimension");
    if (basis_ == Basis::Sine) {
        std::vector<double> c(rhs);
        for (double& v : c) v *= 2.0;
        return c;
    }
    // Thomas recursion; the matrix is SPD tridiagonal with constant bands
    std::size_t n = dim();
    double d = 2.0 * h() / 3.0, o = h() / 6.0;
    std::vector<double> cp(n), dp(n);
    cp[0] = o / d;
    dp[0] = rhs[0] / d;
    for (std::size_t i = 1; i < n; ++i) {
        double denom = d - o * cp[i - 1];
        cp[i] = o / denom;
        dp[i] = (rhs[i] - o * dp[i - 1]) / denom;
    }
    std::vector<double> c(n);
    c[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) c[i] = dp[i] - cp[i] * c[i + 1];
    return c;
}

std::vector<double> GalerkinLevel::apply_mass(const std::vector<double>& u) const {
    if (u.size() != dim()) throw LevelMismatch("vector has wrong dimension");
    std::size_t n = dim();
    std::vector<double> r(n);
    if (basis_ == Basis::Sine) {
        for (std::size_t i = 0; i < n; ++i) r[i] = 0.5 * u[i];
        return r;
    }
    double d = 2.0 * h() / 3.0, o = h() / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = d * u[i];
        if (i > 0) r[i] += o * u[i - 1];
        if (i + 1 < n) r[i] += o * u[i + 1];
    }
    return r;
}

std::vector<double> GalerkinLevel::apply_derivative_t(const std::vector<double>& u) const {
    if (u.size() != dim()) throw LevelMismatch("vector has wrong dimension");
    std::size_t n = dim();
    std::vector<double> r(n, 0.0);
    if (basis_ == Basis::Hat) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) r[i] -= 0.5 * u[i - 1];
            if (i + 1 < n) r[i] += 0.5 * u[i + 1];
        }
        return r;
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            r[j] += to_double(derivative_entry(k, j)) * u[k];
    return r;
}

LevelPtr make_level(std::size_t m, Basis basis) {
    return std::make_shared<const GalerkinLevel>(m, basis);
}

Ultrafunction::Ultrafunction(LevelPtr lv, std::vector<double> c)
    : level(std::move(lv)), coeffs(std::move(c)) {
    if (!level) throw DomainViolation("ultrafunction needs a level");
    if (coeffs.size() != level->dim())
        throw LevelMismatch("coefficient count does not match the level dimension");
}

Ultrafunction Ultrafunction::zero(LevelPtr lv) {
    std::size_t n = lv->dim();
    return Ultrafunction(std::move(lv), std::vector<double>(n, 0.0));
}

double Ultrafunction::value(double x) const {
    if (level->basis() == Basis::Sine) {
        double acc = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            acc += coeffs[k] * std::sin((k + 1) * std::numbers::pi * x);
        return acc;
    }
    auto m = static_cast<double>(level->m());
    double t = std::clamp(x, 0.0, 1.0) * m;
    auto e = std::min(static_cast<std::size_t>(t), level->m() - 1);
    double frac = t - static_cast<double>(e);
    auto node = [&](std::size_t g) {
        return (g == 0 || g >= level->m()) ? 0.0 : coeffs[g - 1];
    };
    return node(e) * (1.0 - frac) + node(e + 1) * frac;
}

double Ultrafunction::derivative_value(double x) const {
    if (level->basis() == Basis::Sine) {
        double acc = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            double w = (k + 1) * std::numbers::pi;
            acc += coeffs[k] * w * std::cos(w * x);
        }
        return acc;
    }
    auto m = static_cast<double>(level->m());
    auto e = std::min(static_cast<std::size_t>(std::clamp(x, 0.0, 1.0) * m), level->m() - 1);
    auto node = [&](std::size_t g) {
        return (g == 0 || g >= level->m()) ? 0.0 : coeffs[g - 1];
    };
    return (node(e + 1) - node(e)) * m;
}

double Ultrafunction::sup_norm() const {
    if (level->basis() == Basis::Hat) {
        double mx = 0.0;
        for (double c : coeffs) mx = std::max(mx, std::abs(c));
        return mx;
    }
    double mx = 0.0;
    const int samples = 2048;
    for (int s = 0; s <= samples; ++s)
        mx = std::max(mx, std::abs(value(static_cast<double>(s) / samples)));
    return mx;
}

namespace {

void check_same_level(const Ultrafunction& u, const Ultrafunction& v) {
    if (u.level->m() != v.level->m() || u.level->basis() != v.level->basis())
        throw LevelMismatch("operands live on different levels");
}

constexpr double kGaussX[5] = {0.0, -0.5384693101056831, 0.5384693101056831,
                               -0.9061798459386640, 0.9061798459386640};
constexpr double kGaussW[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                               0.2369268850561891, 0.2369268850561891};

}  // namespace

std::vector<double> assemble_load(const std::function<double(double)>& f,
                                  const GalerkinLevel& lv) {
    std::size_t n = lv.dim();
    std::vector<double> b(n, 0.0);
    double h = lv.h();
    for (std::size_t e = 0; e < lv.m(); ++e) {
        double a = static_cast<double>(e) * h;
        std::size_t lo = 0, hi = n;  // basis functions touching this element
        if (lv.basis() == Basis::Hat) {
            lo = e > 0 ? e - 1 : 0;
            hi = std::min(e + 1, n);
        }
        for (int g = 0; g < 5; ++g) {
            double x = a + 0.5 * h * (1.0 + kGaussX[g]);
            double wf = 0.5 * h * kGaussW[g] * f(x);
            for (std::size_t i = lo; i < hi; ++i) b[i] += wf * lv.basis_value(i, x);
        }
    }
    return b;
}

double inner_product(const Ultrafunction& u, const Ultrafunction& v) {
    check_same_level(u, v);
    std::vector<double> mv = u.level->apply_mass(v.coeffs);
    double acc = 0.0;
    for (std::size_t i = 0; i < mv.size(); ++i) acc += u.coeffs[i] * mv[i];
    return acc;
}

Ultrafunction project(const ScalarField& f, const LevelPtr& level) {
    if (!f.is_registered())
        throw QuadratureFailure("cannot integrate unregistered function '" + f.name() + "'");
    auto b = assemble_load([&f](double x) { return f(x); }, *level);
    return Ultrafunction(level, level->solve_mass(b));
}

Ultrafunction generalized_derivative(const Ultrafunction& u) {
    return Ultrafunction(u.level, u.level->solve_mass(u.level->apply_derivative_t(u.coeffs)));
}

OperatorDescriptor OperatorDescriptor::identity() {
    return {Kind::Identity, nullptr, "id"};
}
OperatorDescriptor OperatorDescriptor::derivative() {
    return {Kind::Derivative, nullptr, "d/dx"};
}
OperatorDescriptor OperatorDescriptor::multiply_by(ScalarField w) {
    std::string n = "mul[" + w.name() + "]";
    return {Kind::Multiply, std::make_shared<ScalarField>(std::move(w)), std::move(n)};
}

Ultrafunction extend_operator(const OperatorDescriptor& a, const Ultrafunction& u) {
    switch (a.kind) {
        case OperatorDescriptor::Kind::Identity:
            return Ultrafunction(u.level, u.level->solve_mass(u.level->apply_mass(u.coeffs)));
        case OperatorDescriptor::Kind::Derivative:
            return generalized_derivative(u);
        case OperatorDescriptor::Kind::Multiply: {
            if (!a.weight->is_registered())
                throw QuadratureFailure("cannot integrate unregistered weight '" +
                                        a.weight->name() + "'");
            const ScalarField& w = *a.weight;
            auto b = assemble_load([&](double x) { return w(x) * u.value(x); }, *u.level);
            return Ultrafunction(u.level, u.level->solve_mass(b));
        }
    }
    throw DomainViolation("unreachable operator kind");
}

Ultrafunction embed(const Ultrafunction& u, const LevelPtr& fine) {
    if (fine->basis() != u.level->basis())
        throw LevelMismatch("cannot embed across different bases");
    if (fine->basis() == Basis::Sine) {
        if (fine->dim() < u.level->dim()) throw LevelMismatch("target level is smaller");
        std::vector<double> c(fine->dim(), 0.0);
        std::copy(u.coeffs.begin(), u.coeffs.end(), c.begin());
        return Ultrafunction(fine, std::move(c));
    }
    if (fine->m() % u.level->m() != 0) throw LevelMismatch("element counts are not nested");
    std::size_t ratio = fine->m() / u.level->m();
    std::vector<double> c(fine->dim(), 0.0);
    for (std::size_t i = 0; i < fine->dim(); ++i) {
        std::size_t g = i + 1;  // fine node g/fine->m() = (q + r/ratio)/coarse->m()
        std::size_t q = g / ratio, r = g % ratio;
        auto coarse = [&](std::size_t cg) {
            return (cg == 0 || cg >= u.level->m()) ? 0.0 : u.coeffs[cg - 1];
        };
        double frac = static_cast<double>(r) / static_cast<double>(ratio);
        c[i] = coarse(q) * (1.0 - frac) + coarse(q + 1) * frac;
    }
    return Ultrafunction(fine, std::move(c));
}

}  // namespace ltheory
