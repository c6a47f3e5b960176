#include "cdl/orderings.hpp"

#include <algorithm>
#include <cctype>
#include <type_traits>

#include "cdl/core.hpp"
#include "cdl/parallel.hpp"

namespace cdl {

std::string_view to_string(TupleOrdering ordering)
{
    switch (ordering) {
    case TupleOrdering::Lex:
        return "lex";
    case TupleOrdering::CoLex:
        return "colex";
    case TupleOrdering::RZ:
        return "rz";
    }
    return "?";
}

TupleOrdering parse_ordering(std::string_view text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "lex")
        return TupleOrdering::Lex;
    if (lower == "colex")
        return TupleOrdering::CoLex;
    if (lower == "rz")
        return TupleOrdering::RZ;
    throw std::invalid_argument("unknown tuple ordering '" + std::string(text) + "'");
}

bool tuple_less(const KTuple &a, const KTuple &b, TupleOrdering ordering)
{
    if (a.size() != b.size())
        throw std::invalid_argument("cannot order tuples of different arity");
    const int k = a.size();
    switch (ordering) {
    case TupleOrdering::Lex:
        return a < b;
    case TupleOrdering::CoLex:
        for (int i = k - 1; i >= 0; --i)
            if (a[i] != b[i])
                return a[i] < b[i];
        return false;
    case TupleOrdering::RZ:
        if (k != 3)
            throw std::invalid_argument("RZ order is defined for triples only");
        if (a[0] != b[0])
            return a[0] < b[0];
        if (a[2] != b[2])
            return a[2] < b[2];
        return a[1] < b[1];
    }
    return false;
}

ConstraintList init_tuples(int n, int k, TupleOrdering ordering)
{
    if (ordering == TupleOrdering::RZ && k != 3)
        throw std::invalid_argument("RZ order is defined for triples only");
    std::vector<KTuple> tuples = all_tuples(n, k);
    std::stable_sort(tuples.begin(), tuples.end(), [ordering](const auto &a, const auto &b) {
        return tuple_less(a, b, ordering);
    });
    std::vector<ConstraintEntry> entries;
    entries.reserve(tuples.size());
    for (auto &t : tuples)
        entries.push_back({std::move(t), std::nullopt});
    return ConstraintList(n, k, std::move(entries));
}

ConstraintList init_trs(int n, TupleOrdering ordering)
{
    return init_tuples(n, 3, ordering);
}

ConstraintList sort_entries(ConstraintList constraints, TupleOrdering ordering)
{
    if (ordering == TupleOrdering::RZ && constraints.k() != 3)
        throw std::invalid_argument("RZ order is defined for triples only");
    std::vector<ConstraintEntry> entries = constraints.entries();
    std::stable_sort(entries.begin(), entries.end(), [ordering](const auto &a, const auto &b) {
        return tuple_less(a.tuple, b.tuple, ordering);
    });
    return ConstraintList(constraints.n(), constraints.k(), std::move(entries));
}

ConstraintList assign_law_by_index(ConstraintList constraints, std::size_t index, Law law)
{
    constraints.set_law(index, std::move(law));
    return constraints;
}

ConstraintList assign_law(ConstraintList constraints, const KTuple &tuple, Law law)
{
    auto index = constraints.find(tuple);
    if (!index)
        throw NotFoundError("tuple " + tuple.to_string() + " is not in the list");
    return assign_law_by_index(std::move(constraints), *index, std::move(law));
}

ConstraintList assign_rule(ConstraintList constraints, const KTuple &tuple, NeverRule rule)
{
    return assign_law(std::move(constraints), tuple, rule_to_patterns(rule));
}

ConstraintList assign_rule_by_index(ConstraintList constraints, std::size_t index,
                                    NeverRule rule)
{
    return assign_law_by_index(std::move(constraints), index, rule_to_patterns(rule));
}

namespace {

template <class Scheme>
ConstraintList apply_scheme(ConstraintList constraints, const Scheme &scheme)
{
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const KTuple &tuple = constraints[i].tuple;
        try {
            if constexpr (std::is_same_v<Scheme, RuleScheme>)
                constraints.set_law(i, rule_to_patterns(scheme(tuple)));
            else
                constraints.set_law(i, scheme(tuple));
        } catch (const std::exception &e) {
            throw std::invalid_argument("scheme failed on tuple " + tuple.to_string() + ": " +
                                        e.what());
        }
    }
    return constraints;
}

} // namespace

ConstraintList init_by_scheme(ConstraintList constraints, const RuleScheme &scheme)
{
    if (constraints.k() != 3)
        throw std::invalid_argument("rule schemes apply to triples only");
    return apply_scheme(std::move(constraints), scheme);
}

ConstraintList init_by_scheme(ConstraintList constraints, const LawScheme &scheme)
{
    return apply_scheme(std::move(constraints), scheme);
}

NeverRule alternating_scheme(const KTuple &triple)
{
    if (triple.size() != 3)
        throw std::invalid_argument("alternating scheme needs a triple");
    return triple[1] % 2 == 1 ? NeverRule(2, 3) : NeverRule(2, 1);
}

NeverRule alternating_scheme_flipped(const KTuple &triple)
{
    if (triple.size() != 3)
        throw std::invalid_argument("alternating scheme needs a triple");
    return triple[1] % 2 == 1 ? NeverRule(2, 1) : NeverRule(2, 3);
}

RuleScheme scheme_by_name(std::string_view name)
{
    if (name == "alternating")
        return alternating_scheme;
    if (name == "alternating-flipped")
        return alternating_scheme_flipped;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

std::vector<NeverRule> default_candidate_rules()
{
    return {NeverRule(1, 3), NeverRule(2, 1), NeverRule(2, 3), NeverRule(3, 1)};
}

DynamicChoice dynamic_next_triple(const ConstraintList &constraints,
                                  const std::vector<NeverRule> &candidate_rules,
                                  unsigned jobs)
{
    if (constraints.k() != 3)
        throw std::invalid_argument("dynamic ordering applies to triples only");
    if (candidate_rules.empty())
        throw std::invalid_argument("no candidate rules");
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < constraints.size(); ++i)
        if (!constraints[i].law)
            open.push_back(i);
    if (open.empty())
        throw std::invalid_argument("every triple is already assigned");

    const std::size_t r = candidate_rules.size();
    std::vector<Law> laws;
    for (const auto &rule : candidate_rules)
        laws.push_back(rule_to_patterns(rule));
    const TrialCounter counter(constraints);
    std::vector<Count> sizes(open.size() * r);
    parallel_for(sizes.size(), jobs, [&](std::size_t job) {
        sizes[job] = counter.count_with(constraints[open[job / r]].tuple, laws[job % r]);
    });

    DynamicChoice choice{open.front(), constraints[open.front()].tuple, {}};
    Count best = 0;
    for (std::size_t j = 0; j < open.size(); ++j) {
        Count worst = *std::max_element(sizes.begin() + j * r, sizes.begin() + (j + 1) * r);
        choice.table.emplace_back(open[j], worst);
        if (j == 0 || worst < best) {
            best = worst;
            choice.index = open[j];
            choice.triple = constraints[open[j]].tuple;
        }
    }
    return choice;
}

} // namespace cdl
