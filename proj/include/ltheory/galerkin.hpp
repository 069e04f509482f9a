#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ltheory/polynomial.hpp"
#include "ltheory/rational.hpp"

namespace ltheory {

enum class Basis { Hat, Sine };

const char* to_string(Basis b);
Basis basis_from_string(const std::string& s);

/// Square-integrable functions on (0,1) the projector knows how to integrate:
/// polynomials, sin/cos multiples of pi, and piecewise-linear nodal data.
/// Arbitrary callbacks evaluate fine but are rejected by project().
class ScalarField {
  public:
    static ScalarField polynomial(Polynomial p);
    static ScalarField sin_pi(unsigned k);  // sin(k pi x)
    static ScalarField cos_pi(unsigned k);  // cos(k pi x)
    /// Piecewise linear through (i/m, values[i-1]), zero at both endpoints.
    static ScalarField piecewise_linear(std::vector<double> interior_values);
    static ScalarField callback(std::function<double(double)> f, std::string name);

    double operator()(double x) const;
    bool is_registered() const { return kind_ != Kind::Callback; }
    const std::string& name() const { return name_; }

  private:
    enum class Kind { Poly, SinPi, CosPi, PiecewiseLinear, Callback };
    ScalarField() = default;

    Kind kind_ = Kind::Poly;
    std::vector<double> poly_;  // double coefficients, ascending
    unsigned freq_ = 1;
    std::vector<double> nodal_;
    std::function<double(double)> fn_;
    std::string name_;
};

/// One finite-dimensional space V_m on (0,1) with zero boundary values:
/// interior hat functions at x_i = i h, or sin(k pi x). Matrices are
/// assembled in exact rational arithmetic and stored as doubles.
class GalerkinLevel {
  public:
    GalerkinLevel(std::size_t m, Basis basis);

    std::size_t m() const { return m_; }
    std::size_t dim() const { return m_ - 1; }
    Basis basis() const { return basis_; }
    double h() const { return 1.0 / static_cast<double>(m_); }

    Rational mass_entry(std::size_t i, std::size_t j) const;        // M_ij = int phi_i phi_j
    Rational derivative_entry(std::size_t i, std::size_t j) const;  // B_ij = int phi_i' phi_j

    double basis_value(std::size_t i, double x) const;
    double basis_derivative(std::size_t i, double x) const;

    /// Solves M c = rhs (Thomas recursion for Hat, diagonal for Sine).
    std::vector<double> solve_mass(const std::vector<double>& rhs) const;
    std::vector<double> apply_mass(const std::vector<double>& u) const;
    /// B^T u, the right-hand side of the generalized derivative system.
    std::vector<double> apply_derivative_t(const std::vector<double>& u) const;

  private:
    std::size_t m_;
    Basis basis_;
};

using LevelPtr = std::shared_ptr<const GalerkinLevel>;

LevelPtr make_level(std::size_t m, Basis basis = Basis::Hat);

struct Ultrafunction {
    LevelPtr level;
    std::vector<double> coeffs;

    Ultrafunction(LevelPtr lv, std::vector<double> c);

    double value(double x) const;
    double derivative_value(double x) const;  // undefined at Hat nodes
    double sup_norm() const;

    static Ultrafunction zero(LevelPtr lv);
};

double inner_product(const Ultrafunction& u, const Ultrafunction& v);

/// L2-orthogonal projection onto the level: solves M c = b with
/// b_i = int f phi_i by 5-point Gauss-Legendre per element.
Ultrafunction project(const ScalarField& f, const LevelPtr& level);

/// Du with <Du, phi_i> = int u' phi_i, i.e. M c = B^T u.
Ultrafunction generalized_derivative(const Ultrafunction& u);

/// A level-wise linear operator lifted through the projection:
/// u |-> solve(M, assemble(A, u)).
struct OperatorDescriptor {
    enum class Kind { Identity, Derivative, Multiply };
    Kind kind = Kind::Identity;
    std::shared_ptr<ScalarField> weight;  // Multiply
    std::string name;

    static OperatorDescriptor identity();
    static OperatorDescriptor derivative();
    static OperatorDescriptor multiply_by(ScalarField w);
};

Ultrafunction extend_operator(const OperatorDescriptor& a, const Ultrafunction& u);

/// Exact nodal re-interpolation into a finer nested level (Hat, coarse.m()
/// dividing fine m) or coefficient zero-padding (Sine).
Ultrafunction embed(const Ultrafunction& u, const LevelPtr& fine);

/// int f phi_i over each element by 5-point Gauss-Legendre.
std::vector<double> assemble_load(const std::function<double(double)>& f, const GalerkinLevel& lv);

}  // namespace ltheory
