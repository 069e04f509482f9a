#pragma once

#include <memory>
#include <optional>

#include "ltheory/oracle.hpp"
#include "ltheory/sequence.hpp"

namespace ltheory {

enum class HClass { Infinitesimal, FiniteNonInfinitesimal, Infinite };

struct ClassifyResult {
    HClass kind;
    bool heuristic = false;
};

const char* to_string(HClass c);

/// An element of the hyperreal field: a sequence representative paired with
/// the ultrafilter oracle that interprets eventual equality and order.
class Hyperreal {
  public:
    using Ctx = std::shared_ptr<UltrafilterOracle>;

    Hyperreal(SequenceRep rep, Ctx ctx) : rep_(std::move(rep)), ctx_(std::move(ctx)) {}

    static Hyperreal from_rational(const Ctx& ctx, const Rational& c) {
        return Hyperreal(seq_constant(c), ctx);
    }
    static Hyperreal omega(const Ctx& ctx) { return Hyperreal(seq_identity(), ctx); }

    const SequenceRep& rep() const { return rep_; }
    const Ctx& ctx() const { return ctx_; }
    const std::string& label() const { return rep_.label; }

    friend Hyperreal operator+(const Hyperreal& a, const Hyperreal& b) {
        check_ctx(a, b);
        return Hyperreal(seq_add(a.rep_, b.rep_), a.ctx_);
    }
    friend Hyperreal operator-(const Hyperreal& a, const Hyperreal& b) {
        check_ctx(a, b);
        return Hyperreal(seq_sub(a.rep_, b.rep_), a.ctx_);
    }
    friend Hyperreal operator*(const Hyperreal& a, const Hyperreal& b) {
        check_ctx(a, b);
        return Hyperreal(seq_mul(a.rep_, b.rep_), a.ctx_);
    }
    Hyperreal operator-() const { return Hyperreal(seq_neg(rep_), ctx_); }

    /// Multiplicative inverse via the qualified-set patch: the representative
    /// is 1/x(n) where x(n) != 0 and 1 elsewhere.
    Hyperreal inv() const;
    friend Hyperreal operator/(const Hyperreal& a, const Hyperreal& b) { return a * b.inv(); }

    Hyperreal abs() const;
    Hyperreal pow(unsigned exponent) const;

    /// Oracle queries on {n : x(n) = y(n)} resp. {n : x(n) < y(n)}.
    static bool eq(const Hyperreal& a, const Hyperreal& b);
    static bool lt(const Hyperreal& a, const Hyperreal& b);

    ClassifyResult classify() const;
    std::optional<Rational> standard_part() const;

    /// The qualified-set descriptor for {n : x(n) = y(n)} / {n : x(n) < y(n)},
    /// with an exact classification when the forms allow it.
    static SetDescriptor equality_set(const Hyperreal& a, const Hyperreal& b);
    static SetDescriptor less_than_set(const Hyperreal& a, const Hyperreal& b);

  private:
    static void check_ctx(const Hyperreal& a, const Hyperreal& b);
    SequenceRep rep_;
    Ctx ctx_;
};

}  // namespace ltheory
