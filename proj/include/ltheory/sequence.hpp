#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ltheory/polynomial.hpp"
#include "ltheory/rational.hpp"

namespace ltheory {

/// Rational function of the index, num(n)/den(n), valid for n >= valid_from;
/// below that bound the stored head values apply (the "patch" region).
struct ClosedForm {
    Polynomial num;
    Polynomial den = Polynomial::constant(Rational(1));
    std::uint64_t valid_from = 0;
    std::vector<Rational> head;  // head.size() == valid_from

    Rational eval(std::uint64_t n) const {
        if (n < valid_from) return head[n];
        return num.eval(n) / den.eval(n);
    }
    bool is_constant() const { return num.degree() <= 0 && den.degree() == 0 && valid_from == 0; }

    /// Normalizes valid_from so that den(n) != 0 for all n >= valid_from,
    /// filling the head by the given fallback where den vanishes. When the
    /// caller already knows den cannot vanish at or beyond at_least (e.g. it
    /// is a product of denominators with that property), den_nonzero_beyond
    /// skips the conservative root bound and keeps the head short.
    static ClosedForm make(Polynomial num, Polynomial den,
                           const std::function<Rational(std::uint64_t)>& patch = nullptr,
                           std::uint64_t at_least = 0, bool den_nonzero_beyond = false);
    static ClosedForm constant(const Rational& c) {
        return ClosedForm{Polynomial::constant(c), Polynomial::constant(Rational(1)), 0, {}};
    }
};

struct EventuallyPeriodic {
    std::vector<Rational> pre;
    std::vector<Rational> period;  // nonempty

    const Rational& eval(std::uint64_t n) const {
        if (n < pre.size()) return pre[n];
        return period[(n - pre.size()) % period.size()];
    }
};

struct OpaqueSeq {
    std::function<Rational(std::uint64_t)> eval;
};

/// A representative of a hyperreal: a total map index -> rational, with its
/// form retained so that comparisons can be classified exactly when possible.
struct SequenceRep {
    std::variant<ClosedForm, EventuallyPeriodic, OpaqueSeq> form;
    std::string label;

    Rational eval(std::uint64_t n) const;
    bool is_closed_form() const { return std::holds_alternative<ClosedForm>(form); }
    bool is_periodic() const { return std::holds_alternative<EventuallyPeriodic>(form); }
    bool is_opaque() const { return std::holds_alternative<OpaqueSeq>(form); }

    /// EventuallyPeriodic view of this rep, when its form admits one
    /// (periodic reps, and closed forms that are eventually constant).
    std::optional<EventuallyPeriodic> as_periodic() const;
};

SequenceRep seq_constant(const Rational& c, std::string label = "");
SequenceRep seq_identity();  // n |-> n
SequenceRep seq_closed_form(ClosedForm cf, std::string label);
SequenceRep seq_periodic(std::vector<Rational> pre, std::vector<Rational> period, std::string label);
SequenceRep seq_opaque(std::function<Rational(std::uint64_t)> f, std::string label);

SequenceRep seq_add(const SequenceRep& a, const SequenceRep& b);
SequenceRep seq_sub(const SequenceRep& a, const SequenceRep& b);
SequenceRep seq_mul(const SequenceRep& a, const SequenceRep& b);
SequenceRep seq_neg(const SequenceRep& a);

}  // namespace ltheory
