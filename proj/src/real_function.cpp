#include "ltheory/real_function.hpp"

#include "ltheory/errors.hpp"

namespace ltheory {

RealFunction RealFunction::polynomial(Polynomial p) {
    RealFunction f;
    f.kind_ = Kind::Poly;
    f.name_ = p.to_string("t");
    f.poly_ = std::move(p);
    return f;
}

RealFunction RealFunction::absolute() {
    RealFunction f;
    f.kind_ = Kind::Abs;
    f.name_ = "abs";
    return f;
}

RealFunction RealFunction::min(RealFunction a, RealFunction b) {
    RealFunction f;
    f.kind_ = Kind::Min;
    f.name_ = "min(" + a.name_ + "," + b.name_ + ")";
    f.lhs_ = std::make_shared<RealFunction>(std::move(a));
    f.rhs_ = std::make_shared<RealFunction>(std::move(b));
    return f;
}

RealFunction RealFunction::max(RealFunction a, RealFunction b) {
    RealFunction f;
    f.kind_ = Kind::Max;
    f.name_ = "max(" + a.name_ + "," + b.name_ + ")";
    f.lhs_ = std::make_shared<RealFunction>(std::move(a));
    f.rhs_ = std::make_shared<RealFunction>(std::move(b));
    return f;
}

RealFunction RealFunction::piecewise(std::vector<Rational> breaks, std::vector<Polynomial> pieces) {
    if (pieces.size() != breaks.size() + 1)
        throw DomainViolation("piecewise function needs pieces.size() == breaks.size() + 1");
    for (std::size_t i = 1; i < breaks.size(); ++i)
        if (!(breaks[i - 1] < breaks[i])) throw DomainViolation("piecewise breaks must increase");
    RealFunction f;
    f.kind_ = Kind::Piecewise;
    f.name_ = "piecewise[" + std::to_string(pieces.size()) + "]";
    f.breaks_ = std::move(breaks);
    f.pieces_ = std::move(pieces);
    return f;
}

RealFunction RealFunction::callback(std::function<Rational(const Rational&)> f, std::string name) {
    RealFunction r;
    r.kind_ = Kind::Callback;
    r.fn_ = std::move(f);
    r.name_ = std::move(name);
    return r;
}

Rational RealFunction::operator()(const Rational& t) const {
    switch (kind_) {
        case Kind::Poly:
            return poly_.eval(t);
        case Kind::Abs:
            return rational_abs(t);
        case Kind::Min: {
            Rational a = (*lhs_)(t), b = (*rhs_)(t);
            return a < b ? a : b;
        }
        case Kind::Max: {
            Rational a = (*lhs_)(t), b = (*rhs_)(t);
            return a > b ? a : b;
        }
        case Kind::Piecewise: {
            std::size_t j = 0;
            while (j < breaks_.size() && t >= breaks_[j]) ++j;
            return pieces_[j].eval(t);
        }
        case Kind::Callback:
            if (!fn_) throw DomainViolation("callback function '" + name_ + "' is empty");
            return fn_(t);
    }
    throw DomainViolation("unreachable");
}

SequenceRep RealFunction::apply_rep(const SequenceRep& rep) const {
    std::string label = name_ + "(" + rep.label + ")";
    if (kind_ == Kind::Poly) {
        if (auto* cf = std::get_if<ClosedForm>(&rep.form)) {
            // p(num/den) = sum a_k num^k den^(d-k) / den^d
            int d = std::max(poly_.degree(), 0);
            Polynomial num, den_pow = Polynomial::constant(Rational(1));
            std::vector<Polynomial> den_powers;  // den^0 .. den^d
            for (int k = 0; k <= d; ++k) {
                den_powers.push_back(den_pow);
                den_pow = den_pow * cf->den;
            }
            Polynomial num_pow = Polynomial::constant(Rational(1));
            for (int k = 0; k <= poly_.degree(); ++k) {
                num = num + Polynomial::constant(poly_.coeffs()[static_cast<std::size_t>(k)]) *
                                num_pow * den_powers[static_cast<std::size_t>(d - k)];
                num_pow = num_pow * cf->num;
            }
            if (poly_.is_zero()) num = Polynomial();
            auto x = *cf;
            auto p = poly_;
            auto patch = [x, p](std::uint64_t n) { return p.eval(x.eval(n)); };
            return seq_closed_form(
                ClosedForm::make(std::move(num), den_powers.back(), patch, cf->valid_from),
                std::move(label));
        }
    }
    if (auto ep = rep.as_periodic()) {
        EventuallyPeriodic r;
        for (const auto& v : ep->pre) r.pre.push_back((*this)(v));
        for (const auto& v : ep->period) r.period.push_back((*this)(v));
        return SequenceRep{std::move(r), std::move(label)};
    }
    if (kind_ == Kind::Abs) {
        if (auto* cf = std::get_if<ClosedForm>(&rep.form)) {
            int sign = cf->num.eventual_sign() * cf->den.eventual_sign();
            std::uint64_t bound = std::max({cf->valid_from, cf->num.sign_stability_bound(),
                                            cf->den.sign_stability_bound()});
            auto x = *cf;
            auto patch = [x](std::uint64_t n) { return rational_abs(x.eval(n)); };
            Polynomial num = sign < 0 ? -cf->num : cf->num;
            return seq_closed_form(ClosedForm::make(std::move(num), cf->den, patch, bound),
                                   std::move(label));
        }
    }
    RealFunction f = *this;
    SequenceRep x = rep;
    return seq_opaque([f, x](std::uint64_t n) { return f(x.eval(n)); }, std::move(label));
}

Hyperreal RealFunction::extend_apply(const Hyperreal& x) const {
    return Hyperreal(apply_rep(x.rep()), x.ctx());
}

}  // namespace ltheory
