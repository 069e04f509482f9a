#include "ltheory/sequence.hpp"

#include <numeric>

#include "ltheory/errors.hpp"

namespace ltheory {

ClosedForm ClosedForm::make(Polynomial num, Polynomial den,
                            const std::function<Rational(std::uint64_t)>& patch,
                            std::uint64_t at_least, bool den_nonzero_beyond) {
    if (den.is_zero()) throw DivisionByZero("closed form with identically zero denominator");
    ClosedForm cf;
    cf.valid_from = den_nonzero_beyond
                        ? at_least
                        : std::max<std::uint64_t>(at_least, den.sign_stability_bound());
    cf.head.reserve(cf.valid_from);
    for (std::uint64_t n = 0; n < cf.valid_from; ++n) {
        if (patch) {
            cf.head.push_back(patch(n));
        } else {
            Rational d = den.eval(n);
            cf.head.push_back(d == 0 ? Rational(0) : num.eval(n) / d);
        }
    }
    cf.num = std::move(num);
    cf.den = std::move(den);
    return cf;
}

Rational SequenceRep::eval(std::uint64_t n) const {
    if (auto* cf = std::get_if<ClosedForm>(&form)) return cf->eval(n);
    if (auto* ep = std::get_if<EventuallyPeriodic>(&form)) return ep->eval(n);
    return std::get<OpaqueSeq>(form).eval(n);
}

namespace {

// exact closed-form view when the rep admits one (periodic reps with a
// constant period collapse to a constant with a head patch)
std::optional<ClosedForm> as_closed_form(const SequenceRep& r) {
    if (auto* cf = std::get_if<ClosedForm>(&r.form)) return *cf;
    if (auto* ep = std::get_if<EventuallyPeriodic>(&r.form)) {
        for (const auto& v : ep->period)
            if (v != ep->period.front()) return std::nullopt;
        ClosedForm cf;
        cf.num = Polynomial::constant(ep->period.front());
        cf.den = Polynomial::constant(Rational(1));
        cf.valid_from = ep->pre.size();
        cf.head = ep->pre;
        return cf;
    }
    return std::nullopt;
}

}  // namespace

std::optional<EventuallyPeriodic> SequenceRep::as_periodic() const {
    if (auto* ep = std::get_if<EventuallyPeriodic>(&form)) return *ep;
    if (auto* cf = std::get_if<ClosedForm>(&form)) {
        // eventually constant iff num == c * den as polynomials
        Rational c(0);
        if (!cf->num.is_zero()) {
            if (cf->num.degree() != cf->den.degree()) return std::nullopt;
            c = cf->num.leading() / cf->den.leading();
            if (!(cf->num == cf->den * Polynomial::constant(c))) return std::nullopt;
        }
        EventuallyPeriodic ep;
        ep.pre = cf->head;
        ep.period = {c};
        return ep;
    }
    return std::nullopt;
}

SequenceRep seq_constant(const Rational& c, std::string label) {
    return SequenceRep{ClosedForm::constant(c), label.empty() ? to_string(c) : std::move(label)};
}

SequenceRep seq_identity() {
    return SequenceRep{ClosedForm{Polynomial::variable(), Polynomial::constant(Rational(1)), 0, {}},
                       "omega"};
}

SequenceRep seq_closed_form(ClosedForm cf, std::string label) {
    return SequenceRep{std::move(cf), std::move(label)};
}

SequenceRep seq_periodic(std::vector<Rational> pre, std::vector<Rational> period,
                         std::string label) {
    if (period.empty()) throw DomainViolation("periodic rep needs a nonempty period");
    return SequenceRep{EventuallyPeriodic{std::move(pre), std::move(period)}, std::move(label)};
}

SequenceRep seq_opaque(std::function<Rational(std::uint64_t)> f, std::string label) {
    return SequenceRep{OpaqueSeq{std::move(f)}, std::move(label)};
}

namespace {

template <typename Op>
SequenceRep binop(const SequenceRep& a, const SequenceRep& b, Op op, const char* sym) {
    std::string label = "(" + a.label + sym + b.label + ")";
    auto ac = as_closed_form(a);
    auto bc = as_closed_form(b);
    if (ac && bc) {
        Polynomial num, den;
        if (*sym == '*') {
            num = ac->num * bc->num;
            den = ac->den * bc->den;
        } else {
            Polynomial lhs = ac->num * bc->den;
            Polynomial rhs = bc->num * ac->den;
            num = (*sym == '+') ? lhs + rhs : lhs - rhs;
            den = ac->den * bc->den;
        }
        auto av = *ac;
        auto bv = *bc;
        auto patch = [av, bv, op](std::uint64_t n) { return op(av.eval(n), bv.eval(n)); };
        return seq_closed_form(
            ClosedForm::make(std::move(num), std::move(den), patch,
                             std::max(ac->valid_from, bc->valid_from), true),
            std::move(label));
    }
    auto ap = a.as_periodic();
    auto bp = b.as_periodic();
    if (ap && bp) {
        std::size_t pre = std::max(ap->pre.size(), bp->pre.size());
        std::size_t per = std::lcm(ap->period.size(), bp->period.size());
        EventuallyPeriodic r;
        r.pre.reserve(pre);
        for (std::size_t n = 0; n < pre; ++n) r.pre.push_back(op(ap->eval(n), bp->eval(n)));
        r.period.reserve(per);
        for (std::size_t k = 0; k < per; ++k)
            r.period.push_back(op(ap->eval(pre + k), bp->eval(pre + k)));
        return SequenceRep{std::move(r), std::move(label)};
    }
    SequenceRep ra = a, rb = b;
    return seq_opaque([ra, rb, op](std::uint64_t n) { return op(ra.eval(n), rb.eval(n)); },
                      std::move(label));
}

}  // namespace

SequenceRep seq_add(const SequenceRep& a, const SequenceRep& b) {
    return binop(a, b, [](const Rational& x, const Rational& y) { return Rational(x + y); }, "+");
}

SequenceRep seq_sub(const SequenceRep& a, const SequenceRep& b) {
    return binop(a, b, [](const Rational& x, const Rational& y) { return Rational(x - y); }, "-");
}

SequenceRep seq_mul(const SequenceRep& a, const SequenceRep& b) {
    return binop(a, b, [](const Rational& x, const Rational& y) { return Rational(x * y); }, "*");
}

SequenceRep seq_neg(const SequenceRep& a) {
    return seq_sub(seq_constant(Rational(0), "0"), a);
}

}  // namespace ltheory
