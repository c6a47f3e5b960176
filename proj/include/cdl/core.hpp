// core.hpp -- restriction semantics, domain construction and counting

#pragma once

#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "cdl/types.hpp"

namespace cdl {

/// All k-subsets of {1..n} in lexicographic order. Empty when k > n.
std::vector<KTuple> all_tuples(int n, int k);

/// The standardized subsequence of `order` on the members of `tuple`: each
/// member is replaced by its rank within the tuple. `order` may cover only a
/// prefix {1..m}; throws std::invalid_argument if a tuple element is absent.
Pattern restrict_to(const LinearOrder &order, const KTuple &tuple);

/// The two length-3 patterns that place rank `rule.rank()` at position
/// `rule.position()`.
Law rule_to_patterns(NeverRule rule);

/// The never rule whose pattern pair equals `law`, if there is one.
std::optional<NeverRule> law_to_rule(const Law &law);

/// A law forbidding a single pattern.
Law single_pattern_law(const Pattern &pattern);

/// True when no assigned entry whose tuple lies inside {1..order.size()}
/// restricts `order` to a forbidden pattern.
bool satisfies(const LinearOrder &order, const ConstraintList &constraints);

/// Inserts alternative m = order.size()+1 at every position (front first)
/// and keeps the results that satisfy the constraints.
std::vector<LinearOrder> extend(const LinearOrder &order, const ConstraintList &constraints);

/// All orders on {1..n} satisfying every assigned law, built breadth first.
Domain build_domain(const ConstraintList &constraints);

/// |build_domain(constraints)| computed depth first without materializing the
/// domain. `jobs` > 1 splits the search tree across threads; the total is
/// identical for every job count. Throws CountOverflowError past 2^64 - 1.
Count domain_size(const ConstraintList &constraints, unsigned jobs = 1);

/// Counts one constraint list repeatedly, each time with a single trial law
/// added on top, without copying the list. A law already on the trial tuple
/// stays in force. Safe to share between threads.
class TrialCounter
{
public:
    explicit TrialCounter(const ConstraintList &constraints);
    ~TrialCounter();

    /// Same as domain_size(constraints).
    Count count() const;
    /// Size once `law` also holds on `tuple`, or `limit` if the size is at
    /// least `limit` (counting stops there). Throws std::invalid_argument
    /// when the arities differ or the tuple leaves 1..n.
    Count count_with(const KTuple &tuple, const Law &law,
                     Count limit = std::numeric_limits<Count>::max()) const;

private:
    Count count_with_check(const void *extra, int extra_max, Count limit) const;

    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// For each tuple, the patterns that no member of `domain` realizes.
/// Throws std::invalid_argument on an empty domain.
std::vector<std::pair<KTuple, std::vector<Pattern>>>
unrealized_patterns(const Domain &domain, const std::vector<KTuple> &tuples);

/// For each triple, every never rule that all members of `domain` satisfy.
/// Throws std::invalid_argument on an empty domain or a non-triple.
std::vector<std::pair<KTuple, std::vector<NeverRule>>>
domain_to_rules(const Domain &domain, const std::vector<KTuple> &triples);

/// True when every triple of alternatives satisfies at least one never rule
/// over the whole domain.
bool is_condorcet(const Domain &domain);

/// Every k-tuple of {1..n} carries the law {pattern}; k = pattern length.
/// Empty when n < k.
ConstraintList pattern_avoidance_constraints(int n, const Pattern &pattern);

} // namespace cdl
