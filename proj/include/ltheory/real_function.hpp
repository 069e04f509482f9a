#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ltheory/hyperreal.hpp"
#include "ltheory/polynomial.hpp"
#include "ltheory/rational.hpp"

namespace ltheory {

/// Registered library of exact real functions Q -> Q: polynomials, abs,
/// min/max, piecewise-rational. Arbitrary callbacks are allowed too but lose
/// all symbolic structure (results become opaque representatives).
class RealFunction {
  public:
    static RealFunction polynomial(Polynomial p);
    static RealFunction identity() { return polynomial(Polynomial::variable()); }
    static RealFunction constant(const Rational& c) { return polynomial(Polynomial::constant(c)); }
    static RealFunction absolute();
    static RealFunction min(RealFunction a, RealFunction b);
    static RealFunction max(RealFunction a, RealFunction b);
    /// pieces[j] applies on [breaks[j-1], breaks[j]) with breaks[-1] = -inf,
    /// breaks[k] = +inf; pieces.size() == breaks.size() + 1.
    static RealFunction piecewise(std::vector<Rational> breaks, std::vector<Polynomial> pieces);
    static RealFunction callback(std::function<Rational(const Rational&)> f, std::string name);

    Rational operator()(const Rational& t) const;

    /// Natural extension: n |-> f(x(n)), with the form preserved where the
    /// registered structure allows (polynomials and abs on closed forms,
    /// pointwise on periodic representatives).
    Hyperreal extend_apply(const Hyperreal& x) const;

    const std::string& name() const { return name_; }
    bool is_registered() const { return kind_ != Kind::Callback; }

  private:
    enum class Kind { Poly, Abs, Min, Max, Piecewise, Callback };
    RealFunction() = default;

    SequenceRep apply_rep(const SequenceRep& rep) const;

    Kind kind_ = Kind::Poly;
    Polynomial poly_;
    std::shared_ptr<RealFunction> lhs_, rhs_;           // Min/Max
    std::vector<Rational> breaks_;                      // Piecewise
    std::vector<Polynomial> pieces_;                    // Piecewise
    std::function<Rational(const Rational&)> fn_;       // Callback
    std::string name_;
};

}  // namespace ltheory
