#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ltheory/hyperreal.hpp"
#include "ltheory/real_function.hpp"

namespace ltheory {

/// A subset of the rationals given by a total membership test; optional
/// interval structure lets star-membership queries be classified exactly.
struct RealSetDescriptor {
    struct Interval {
        std::optional<Rational> lo, hi;  // nullopt = unbounded
        bool lo_closed = true;
        bool hi_closed = true;
        bool contains(const Rational& t) const {
            if (lo && (lo_closed ? t < *lo : t <= *lo)) return false;
            if (hi && (hi_closed ? t > *hi : t >= *hi)) return false;
            return true;
        }
    };

    std::function<bool(const Rational&)> contains;
    std::vector<Interval> intervals;  // empty => opaque predicate
    std::string label;

    static RealSetDescriptor interval(std::optional<Rational> lo, std::optional<Rational> hi,
                                      bool lo_closed, bool hi_closed, std::string label);
    static RealSetDescriptor closed_interval(const Rational& lo, const Rational& hi,
                                             std::string label);
    static RealSetDescriptor positives();
    static RealSetDescriptor predicate(std::function<bool(const Rational&)> contains,
                                       std::string label);
};

/// A level-indexed family of finite rational sets (sorted, deduplicated);
/// its Lambda-limit behaves like a finite set under transfer.
class HyperfiniteSet {
  public:
    HyperfiniteSet(std::function<std::vector<Rational>(std::uint64_t)> at_level, std::string label);

    /// Level n holds {0, 1, ..., n}.
    static HyperfiniteSet prefix(std::string label = "prefix");
    /// Level n holds {k/n : k = 1..n} (level 0 is empty).
    static HyperfiniteSet unit_grid(std::string label = "unit_grid");
    static HyperfiniteSet constant(std::vector<Rational> values, std::string label = "constant");
    static HyperfiniteSet empty();

    const std::vector<Rational>& at_level(std::uint64_t n) const;
    const std::string& label() const { return label_; }

  private:
    std::function<std::vector<Rational>(std::uint64_t)> at_level_;
    std::string label_;
    // levels get re-visited heavily by oracle sampling; the cache is bounded
    // by total element count since high levels can be large
    struct Cache {
        std::unordered_map<std::uint64_t, std::vector<Rational>> levels;
        std::size_t total_elements = 0;
    };
    mutable std::shared_ptr<Cache> cache_;
};

/// Membership of x in the natural extension E*: queries {n : x(n) in E}.
bool star_membership(const Hyperreal& x, const RealSetDescriptor& e);
SetDescriptor star_membership_set(const Hyperreal& x, const RealSetDescriptor& e);

/// Lambda-limit of the level cardinalities.
Hyperreal hypercardinality(const HyperfiniteSet& a, const Hyperreal::Ctx& ctx);

/// Lambda-limit of the level sums of f over the set.
Hyperreal hyperfinite_sum(const HyperfiniteSet& a, const RealFunction& f,
                          const Hyperreal::Ctx& ctx);

}  // namespace ltheory
