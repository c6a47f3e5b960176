// orderings.hpp -- tuple orders, rule assignment, schemes, dynamic triple choice

#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cdl/types.hpp"

namespace cdl {

/// Total orders on k-subsets of {1..n}.
///
/// - Lex compares at the first differing coordinate.
/// - CoLex compares at the last differing coordinate, so every tuple inside
///   {1..m} precedes every tuple that contains m+1.
/// - RZ (triples only) compares the first element, then the third, then the
///   second.
enum class TupleOrdering { Lex, CoLex, RZ };

std::string_view to_string(TupleOrdering ordering);

/// Accepts "lex", "colex", "rz" (any case).
TupleOrdering parse_ordering(std::string_view text);

/// Strict weak "a before b" under `ordering`. Both tuples must share one
/// arity; RZ requires triples.
bool tuple_less(const KTuple &a, const KTuple &b, TupleOrdering ordering);

/// All C(n,k) tuples, unassigned, sorted by `ordering`. RZ with k != 3
/// throws std::invalid_argument.
ConstraintList init_tuples(int n, int k, TupleOrdering ordering);

/// Convenience for triple lists (RZ by default).
ConstraintList init_trs(int n, TupleOrdering ordering = TupleOrdering::RZ);

/// Reorders the entries of `constraints` (laws travel with their tuples).
ConstraintList sort_entries(ConstraintList constraints, TupleOrdering ordering);

/// Assigns rule_to_patterns(rule) to `tuple`. Throws NotFoundError when the
/// tuple is not in the list.
ConstraintList assign_rule(ConstraintList constraints, const KTuple &tuple, NeverRule rule);

/// As assign_rule, addressing the tuple by its 0-based entry index.
ConstraintList assign_rule_by_index(ConstraintList constraints, std::size_t index,
                                    NeverRule rule);

ConstraintList assign_law(ConstraintList constraints, const KTuple &tuple, Law law);
ConstraintList assign_law_by_index(ConstraintList constraints, std::size_t index, Law law);

/// Schemes map a tuple to its rule or law. They must be pure.
using RuleScheme = std::function<NeverRule(const KTuple &)>;
using LawScheme = std::function<Law(const KTuple &)>;

/// Assigns scheme(tuple) to every entry. A scheme failure is rethrown as
/// std::invalid_argument naming the tuple.
ConstraintList init_by_scheme(ConstraintList constraints, const RuleScheme &scheme);
ConstraintList init_by_scheme(ConstraintList constraints, const LawScheme &scheme);

/// For a triple (a,b,c): 2N3 when b is odd, 2N1 when b is even.
NeverRule alternating_scheme(const KTuple &triple);

/// The opposite parity: 2N1 when b is odd, 2N3 when b is even.
NeverRule alternating_scheme_flipped(const KTuple &triple);

/// Looks a built-in scheme up by name ("alternating", "alternating-flipped").
RuleScheme scheme_by_name(std::string_view name);

/// {1N3, 2N1, 2N3, 3N1}.
std::vector<NeverRule> default_candidate_rules();

struct DynamicChoice
{
    /// Entry index and tuple of the chosen triple.
    std::size_t index;
    KTuple triple;
    /// (entry index, max over candidate rules of the resulting domain size)
    /// for every unassigned entry, in entry order.
    std::vector<std::pair<std::size_t, Count>> table;
};

/// Picks the unassigned triple whose best candidate rule leaves the smallest
/// domain; ties go to the earliest entry. Throws std::invalid_argument when
/// nothing is unassigned or `candidate_rules` is empty.
DynamicChoice dynamic_next_triple(const ConstraintList &constraints,
                                  const std::vector<NeverRule> &candidate_rules,
                                  unsigned jobs = 1);

} // namespace cdl
