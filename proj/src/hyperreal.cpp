#include "ltheory/hyperreal.hpp"

#include <array>

#include "ltheory/errors.hpp"

namespace ltheory {

const char* to_string(HClass c) {
    switch (c) {
        case HClass::Infinitesimal:
            return "Infinitesimal";
        case HClass::FiniteNonInfinitesimal:
            return "FiniteNonInfinitesimal";
        case HClass::Infinite:
            return "Infinite";
    }
    return "?";
}

void Hyperreal::check_ctx(const Hyperreal& a, const Hyperreal& b) {
    if (a.ctx_ != b.ctx_)
        throw ContextMismatch("hyperreals '" + a.label() + "' and '" + b.label() +
                              "' belong to different oracle contexts");
}

namespace {

enum class Rel { Eq, Lt };

// closed-form view shared with sequence.cpp's promotion rules
std::optional<ClosedForm> cf_view(const SequenceRep& r) {
    if (auto* cf = std::get_if<ClosedForm>(&r.form)) return *cf;
    if (auto ep = r.as_periodic()) {
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

SetDescriptor relation_set(const Hyperreal& a, const Hyperreal& b, Rel rel) {
    SequenceRep d = seq_sub(a.rep(), b.rep());
    SetDescriptor s;
    SequenceRep dc = d;
    if (rel == Rel::Eq) {
        s.member = [dc](std::uint64_t n) { return dc.eval(n) == 0; };
        s.label = "eq[" + a.label() + "," + b.label() + "]";
    } else {
        s.member = [dc](std::uint64_t n) { return dc.eval(n) < 0; };
        s.label = "lt[" + a.label() + "," + b.label() + "]";
    }
    if (auto cf = cf_view(d)) {
        // sign of num(n)/den(n) is constant beyond the stability bounds
        std::uint64_t bound = std::max({cf->valid_from, cf->num.sign_stability_bound(),
                                        cf->den.sign_stability_bound()});
        int sign = cf->num.eventual_sign() * cf->den.eventual_sign();
        bool eventually = (rel == Rel::Eq) ? (sign == 0) : (sign < 0);
        auto raw = s.member;
        s.member = [raw, bound, eventually](std::uint64_t n) {
            return n >= bound ? eventually : raw(n);
        };
        if (eventually)
            s.classification = SetDescriptor::Cofinite{bound};
        else
            s.classification = SetDescriptor::Finite{bound};
        return s;
    }
    if (auto ep = d.as_periodic()) {
        SetDescriptor::PeriodicUnion p;
        p.preperiod.reserve(ep->pre.size());
        for (const auto& v : ep->pre)
            p.preperiod.push_back(rel == Rel::Eq ? v == 0 : v < 0);
        p.period.reserve(ep->period.size());
        for (const auto& v : ep->period)
            p.period.push_back(rel == Rel::Eq ? v == 0 : v < 0);
        auto pre = p.preperiod;
        auto per = p.period;
        s.member = [pre, per](std::uint64_t n) {
            if (n < pre.size()) return static_cast<bool>(pre[n]);
            return static_cast<bool>(per[(n - pre.size()) % per.size()]);
        };
        s.classification = std::move(p);
        return s;
    }
    s.classification = SetDescriptor::Unknown{};
    return s;
}

}  // namespace

SetDescriptor Hyperreal::equality_set(const Hyperreal& a, const Hyperreal& b) {
    check_ctx(a, b);
    return relation_set(a, b, Rel::Eq);
}

SetDescriptor Hyperreal::less_than_set(const Hyperreal& a, const Hyperreal& b) {
    check_ctx(a, b);
    return relation_set(a, b, Rel::Lt);
}

bool Hyperreal::eq(const Hyperreal& a, const Hyperreal& b) {
    return a.ctx_->is_qualified(equality_set(a, b));
}

bool Hyperreal::lt(const Hyperreal& a, const Hyperreal& b) {
    return a.ctx_->is_qualified(less_than_set(a, b));
}

Hyperreal Hyperreal::inv() const {
    Hyperreal zero = from_rational(ctx_, Rational(0));
    if (eq(*this, zero)) throw DivisionByZero("inverse of a hyperreal equal to zero: " + label());
    // {n : x(n) != 0} is now committed as qualified; patch off that set with 1
    std::string label_ = "inv(" + label() + ")";
    if (auto cf = cf_view(rep_)) {
        auto x = *cf;
        auto patch = [x](std::uint64_t n) {
            Rational v = x.eval(n);
            return v == 0 ? Rational(1) : Rational(1 / v);
        };
        return Hyperreal(
            seq_closed_form(ClosedForm::make(cf->den, cf->num, patch, cf->valid_from), label_),
            ctx_);
    }
    if (auto ep = rep_.as_periodic()) {
        auto map = [](const Rational& v) { return v == 0 ? Rational(1) : Rational(1 / v); };
        EventuallyPeriodic r;
        for (const auto& v : ep->pre) r.pre.push_back(map(v));
        for (const auto& v : ep->period) r.period.push_back(map(v));
        return Hyperreal(SequenceRep{std::move(r), label_}, ctx_);
    }
    SequenceRep x = rep_;
    return Hyperreal(seq_opaque(
                         [x](std::uint64_t n) {
                             Rational v = x.eval(n);
                             return v == 0 ? Rational(1) : Rational(1 / v);
                         },
                         label_),
                     ctx_);
}

Hyperreal Hyperreal::abs() const {
    std::string label_ = "abs(" + label() + ")";
    if (auto cf = cf_view(rep_)) {
        int sign = cf->num.eventual_sign() * cf->den.eventual_sign();
        std::uint64_t bound = std::max({cf->valid_from, cf->num.sign_stability_bound(),
                                        cf->den.sign_stability_bound()});
        auto x = *cf;
        auto patch = [x](std::uint64_t n) { return rational_abs(x.eval(n)); };
        Polynomial num = sign < 0 ? -cf->num : cf->num;
        return Hyperreal(seq_closed_form(ClosedForm::make(std::move(num), cf->den, patch, bound),
                                         label_),
                         ctx_);
    }
    if (auto ep = rep_.as_periodic()) {
        EventuallyPeriodic r;
        for (const auto& v : ep->pre) r.pre.push_back(rational_abs(v));
        for (const auto& v : ep->period) r.period.push_back(rational_abs(v));
        return Hyperreal(SequenceRep{std::move(r), label_}, ctx_);
    }
    SequenceRep x = rep_;
    return Hyperreal(seq_opaque([x](std::uint64_t n) { return rational_abs(x.eval(n)); }, label_),
                     ctx_);
}

Hyperreal Hyperreal::pow(unsigned exponent) const {
    Hyperreal acc = from_rational(ctx_, Rational(1));
    for (unsigned i = 0; i < exponent; ++i) acc = acc * (*this);
    return acc;
}

ClassifyResult Hyperreal::classify() const {
    if (auto cf = cf_view(rep_)) {
        if (cf->num.is_zero() || cf->num.degree() < cf->den.degree())
            return {HClass::Infinitesimal, false};
        if (cf->num.degree() > cf->den.degree()) return {HClass::Infinite, false};
        return {HClass::FiniteNonInfinitesimal, false};
    }
    if (auto ep = rep_.as_periodic()) {
        // the oracle picks the residue class; the chosen value classifies x
        for (const auto& v : ep->period) {
            if (eq(*this, from_rational(ctx_, v)))
                return {v == 0 ? HClass::Infinitesimal : HClass::FiniteNonInfinitesimal, false};
        }
        throw Undecided("no period value qualified for '" + label() + "'");
    }
    // opaque: ladder of order queries, heuristic
    Hyperreal a = abs();
    static const std::array<long, 7> ladder = {1, 10, 100, 1000, 10000, 100000, 1000000};
    bool all_small = true;
    for (long k : ladder)
        if (!lt(a, from_rational(ctx_, Rational(1, k)))) {
            all_small = false;
            break;
        }
    if (all_small) return {HClass::Infinitesimal, true};
    bool all_big = true;
    for (long k : ladder)
        if (!lt(from_rational(ctx_, Rational(k)), a)) {
            all_big = false;
            break;
        }
    if (all_big) return {HClass::Infinite, true};
    if (lt(a, from_rational(ctx_, Rational(1000000)))) return {HClass::FiniteNonInfinitesimal, true};
    throw Undecided("order-query ladder exhausted for '" + label() + "'");
}

std::optional<Rational> Hyperreal::standard_part() const {
    if (auto cf = cf_view(rep_)) {
        if (cf->num.is_zero() || cf->num.degree() < cf->den.degree()) return Rational(0);
        if (cf->num.degree() > cf->den.degree()) return std::nullopt;
        return cf->num.leading() / cf->den.leading();
    }
    if (auto ep = rep_.as_periodic()) {
        for (const auto& v : ep->period)
            if (eq(*this, from_rational(ctx_, v))) return v;
        return std::nullopt;
    }
    ClassifyResult c = classify();
    if (c.kind == HClass::Infinitesimal) return Rational(0);
    return std::nullopt;  // no exact standard part for opaque finite reps
}

}  // namespace ltheory
