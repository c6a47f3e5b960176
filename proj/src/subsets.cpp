#include "cdl/subsets.hpp"

#include <algorithm>

#include "cdl/core.hpp"

namespace cdl {

State::State(std::vector<std::uint8_t> codes) : codes_(std::move(codes))
{
    for (auto c : codes_)
        if (c > 9)
            throw std::invalid_argument("state code " + std::to_string(int(c)) +
                                        " outside 0..9");
}

State State::parse(std::string_view digits)
{
    std::vector<std::uint8_t> codes;
    codes.reserve(digits.size());
    for (char ch : digits) {
        if (ch < '0' || ch > '9')
            throw std::invalid_argument("state must consist of digits 0..9");
        codes.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return State(std::move(codes));
}

State State::with(std::size_t i, std::uint8_t code) const
{
    std::vector<std::uint8_t> codes = codes_;
    codes.at(i) = code;
    return State(std::move(codes));
}

std::size_t State::assigned_count() const
{
    return static_cast<std::size_t>(
        std::count_if(codes_.begin(), codes_.end(), [](auto c) { return c != 0; }));
}

std::string State::to_string() const
{
    std::string out(codes_.size(), '0');
    for (std::size_t i = 0; i < codes_.size(); ++i)
        out[i] = static_cast<char>('0' + codes_[i]);
    return out;
}

std::size_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

State trs_to_state(const ConstraintList &constraints)
{
    if (constraints.k() != 3)
        throw InvalidStateError("states are defined for triple lists only");
    std::vector<std::uint8_t> codes;
    codes.reserve(constraints.size());
    for (const auto &entry : constraints.entries()) {
        if (!entry.law) {
            codes.push_back(0);
            continue;
        }
        auto rule = law_to_rule(*entry.law);
        if (!rule)
            throw InvalidStateError("law on " + entry.tuple.to_string() +
                                    " is not a never rule");
        codes.push_back(static_cast<std::uint8_t>(rule->code()));
    }
    return State(std::move(codes));
}

ConstraintList state_to_trs(const State &state, int n, TupleOrdering ordering)
{
    ConstraintList trs = init_trs(n, ordering);
    if (state.size() != trs.size())
        throw std::invalid_argument("state has " + std::to_string(state.size()) +
                                    " codes, expected C(" + std::to_string(n) + ",3) = " +
                                    std::to_string(trs.size()));
    for (std::size_t i = 0; i < state.size(); ++i)
        if (state[i] != 0)
            trs.set_law(i, rule_to_patterns(NeverRule::from_code(state[i])));
    return trs;
}

namespace {

void check_subset_size(const ConstraintList &constraints, int t)
{
    if (constraints.k() != 3)
        throw std::invalid_argument("subset states are defined for triple lists only");
    if (t < 3 || t > constraints.n())
        throw std::invalid_argument("subset size must be in 3.." +
                                    std::to_string(constraints.n()));
}

} // namespace

std::vector<State> subset_states(const ConstraintList &constraints, int t)
{
    check_subset_size(constraints, t);
    const int n = constraints.n();
    const ConstraintList reference = init_trs(n, TupleOrdering::RZ);
    if (constraints.size() != reference.size())
        throw std::invalid_argument("subset_states needs the full triple list");

    const State codes = trs_to_state(constraints);
    const std::size_t side = static_cast<std::size_t>(n) + 1;
    std::vector<std::uint32_t> index(side * side * side, 0);
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const KTuple &tr = reference[i].tuple;
        if (constraints[i].tuple != tr)
            throw std::invalid_argument("subset_states needs RZ-ordered triples; use "
                                        "subset_states_any_ordering");
        index[(tr[0] * side + tr[1]) * side + tr[2]] = static_cast<std::uint32_t>(i);
    }

    const ConstraintList local = init_trs(t, TupleOrdering::RZ);
    std::vector<State> out;
    out.reserve(binomial(n, t));
    for (const KTuple &subset : all_tuples(n, t)) {
        std::vector<std::uint8_t> sub;
        sub.reserve(local.size());
        for (const auto &entry : local.entries()) {
            const KTuple &tr = entry.tuple;
            const std::size_t a = subset[tr[0] - 1], b = subset[tr[1] - 1],
                              c = subset[tr[2] - 1];
            sub.push_back(codes[index[(a * side + b) * side + c]]);
        }
        out.emplace_back(std::move(sub));
    }
    return out;
}

std::vector<State> subset_states_any_ordering(const ConstraintList &constraints, int t)
{
    check_subset_size(constraints, t);
    return subset_states(sort_entries(constraints, TupleOrdering::RZ), t);
}

} // namespace cdl
