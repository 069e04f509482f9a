#include "ltheory/internal.hpp"

#include <algorithm>

#include "ltheory/errors.hpp"

namespace ltheory {

RealSetDescriptor RealSetDescriptor::interval(std::optional<Rational> lo, std::optional<Rational> hi,
                                              bool lo_closed, bool hi_closed, std::string label) {
    RealSetDescriptor e;
    Interval iv{std::move(lo), std::move(hi), lo_closed, hi_closed};
    e.contains = [iv](const Rational& t) { return iv.contains(t); };
    e.intervals = {iv};
    e.label = std::move(label);
    return e;
}

RealSetDescriptor RealSetDescriptor::closed_interval(const Rational& lo, const Rational& hi,
                                                     std::string label) {
    return interval(lo, hi, true, true, std::move(label));
}

RealSetDescriptor RealSetDescriptor::positives() {
    return interval(Rational(0), std::nullopt, false, true, "positives");
}

RealSetDescriptor RealSetDescriptor::predicate(std::function<bool(const Rational&)> contains,
                                               std::string label) {
    RealSetDescriptor e;
    e.contains = std::move(contains);
    e.label = std::move(label);
    return e;
}

HyperfiniteSet::HyperfiniteSet(std::function<std::vector<Rational>(std::uint64_t)> at_level,
                               std::string label)
    : at_level_(std::move(at_level)),
      label_(std::move(label)),
      cache_(std::make_shared<Cache>()) {}

const std::vector<Rational>& HyperfiniteSet::at_level(std::uint64_t n) const {
    auto it = cache_->levels.find(n);
    if (it != cache_->levels.end()) return it->second;
    std::vector<Rational> v = at_level_(n);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    constexpr std::size_t kBudget = 1u << 20;
    if (cache_->levels.size() > 4096 || cache_->total_elements + v.size() > kBudget) {
        cache_->levels.clear();
        cache_->total_elements = 0;
    }
    cache_->total_elements += v.size();
    return cache_->levels.emplace(n, std::move(v)).first->second;
}

HyperfiniteSet HyperfiniteSet::prefix(std::string label) {
    return HyperfiniteSet(
        [](std::uint64_t n) {
            std::vector<Rational> v;
            v.reserve(n + 1);
            for (std::uint64_t k = 0; k <= n; ++k) v.emplace_back(static_cast<unsigned long>(k));
            return v;
        },
        std::move(label));
}

HyperfiniteSet HyperfiniteSet::unit_grid(std::string label) {
    return HyperfiniteSet(
        [](std::uint64_t n) {
            std::vector<Rational> v;
            v.reserve(n);
            for (std::uint64_t k = 1; k <= n; ++k)
                v.emplace_back(Rational(static_cast<unsigned long>(k),
                                        static_cast<unsigned long>(std::max<std::uint64_t>(n, 1))));
            return v;
        },
        std::move(label));
}

HyperfiniteSet HyperfiniteSet::constant(std::vector<Rational> values, std::string label) {
    return HyperfiniteSet([values](std::uint64_t) { return values; }, std::move(label));
}

HyperfiniteSet HyperfiniteSet::empty() {
    return HyperfiniteSet([](std::uint64_t) { return std::vector<Rational>{}; }, "empty");
}

namespace {

// {n : x(n) relop c} as an exactly classified descriptor for closed forms;
// relop is encoded by (strict, flipped): flipped=false tests x(n) ? c.
std::optional<SetDescriptor::Classification> one_sided_classification(const ClosedForm& cf,
                                                                      const Rational& c,
                                                                      bool strict, bool less) {
    ClosedForm d;  // x - c
    d.num = cf.num - Polynomial::constant(c) * cf.den;
    d.den = cf.den;
    std::uint64_t bound = std::max({cf.valid_from, d.num.sign_stability_bound(),
                                    d.den.sign_stability_bound()});
    int sign = d.num.eventual_sign() * d.den.eventual_sign();
    bool eventually;
    if (less)
        eventually = strict ? sign < 0 : sign <= 0;
    else
        eventually = strict ? sign > 0 : sign >= 0;
    if (eventually) return SetDescriptor::Classification{SetDescriptor::Cofinite{bound}};
    return SetDescriptor::Classification{SetDescriptor::Finite{bound}};
}

std::uint64_t classification_bound(const SetDescriptor::Classification& c) {
    if (auto* f = std::get_if<SetDescriptor::Finite>(&c)) return f->bound;
    return std::get<SetDescriptor::Cofinite>(c).bound;
}

bool classification_cofinite(const SetDescriptor::Classification& c) {
    return std::holds_alternative<SetDescriptor::Cofinite>(c);
}

std::optional<ClosedForm> closed_form_view(const SequenceRep& r) {
    if (auto* cf = std::get_if<ClosedForm>(&r.form)) return *cf;
    return std::nullopt;
}

}  // namespace

SetDescriptor star_membership_set(const Hyperreal& x, const RealSetDescriptor& e) {
    SetDescriptor s;
    SequenceRep rep = x.rep();
    auto contains = e.contains;
    s.member = [rep, contains](std::uint64_t n) { return contains(rep.eval(n)); };
    s.label = "in[" + x.label() + "," + e.label + "]";
    s.classification = SetDescriptor::Unknown{};

    if (auto ep = rep.as_periodic()) {
        SetDescriptor::PeriodicUnion p;
        for (const auto& v : ep->pre) p.preperiod.push_back(contains(v));
        for (const auto& v : ep->period) p.period.push_back(contains(v));
        s.classification = std::move(p);
        return s;
    }
    if (!e.intervals.empty()) {
        if (auto cf = closed_form_view(rep)) {
            // union over intervals of (x >= lo) and (x <= hi), each eventually
            // constant for a rational-function representative
            bool any_cofinite = false;
            std::uint64_t bound = cf->valid_from;
            for (const auto& iv : e.intervals) {
                bool piece_cofinite = true;
                if (iv.lo) {
                    auto c = one_sided_classification(*cf, *iv.lo, !iv.lo_closed, false);
                    bound = std::max(bound, classification_bound(*c));
                    piece_cofinite = piece_cofinite && classification_cofinite(*c);
                }
                if (iv.hi) {
                    auto c = one_sided_classification(*cf, *iv.hi, !iv.hi_closed, true);
                    bound = std::max(bound, classification_bound(*c));
                    piece_cofinite = piece_cofinite && classification_cofinite(*c);
                }
                any_cofinite = any_cofinite || piece_cofinite;
            }
            if (any_cofinite)
                s.classification = SetDescriptor::Cofinite{bound};
            else
                s.classification = SetDescriptor::Finite{bound};
        }
    }
    return s;
}

bool star_membership(const Hyperreal& x, const RealSetDescriptor& e) {
    return x.ctx()->is_qualified(star_membership_set(x, e));
}

Hyperreal hypercardinality(const HyperfiniteSet& a, const Hyperreal::Ctx& ctx) {
    HyperfiniteSet set = a;
    return Hyperreal(seq_opaque(
                         [set](std::uint64_t n) {
                             return Rational(static_cast<unsigned long>(set.at_level(n).size()));
                         },
                         "card(" + a.label() + ")"),
                     ctx);
}

Hyperreal hyperfinite_sum(const HyperfiniteSet& a, const RealFunction& f,
                          const Hyperreal::Ctx& ctx) {
    HyperfiniteSet set = a;
    RealFunction fn = f;
    return Hyperreal(seq_opaque(
                         [set, fn](std::uint64_t n) {
                             Rational acc(0);
                             for (const auto& v : set.at_level(n)) acc += fn(v);
                             return acc;
                         },
                         "sum[" + f.name() + "," + a.label() + "]"),
                     ctx);
}

}  // namespace ltheory
