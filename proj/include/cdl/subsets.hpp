// subsets.hpp -- numeric states of triple-rule lists and subset restriction

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cdl/orderings.hpp"
#include "cdl/types.hpp"

namespace cdl {

/// One code per triple of a reference list: 0 = unassigned, otherwise the
/// never rule code 3*(rank-1)+position.
class State
{
public:
    State() = default;

    /// Throws std::invalid_argument for codes above 9.
    explicit State(std::vector<std::uint8_t> codes);

    /// Parses the single-line digit form, e.g. "7000".
    static State parse(std::string_view digits);

    std::size_t size() const noexcept { return codes_.size(); }
    std::uint8_t operator[](std::size_t i) const { return codes_[i]; }
    const std::vector<std::uint8_t> &codes() const noexcept { return codes_; }

    /// Returns a copy with codes[i] replaced.
    State with(std::size_t i, std::uint8_t code) const;

    std::size_t assigned_count() const;
    bool complete() const { return assigned_count() == codes_.size(); }

    /// Digits concatenated, no separators.
    std::string to_string() const;

    friend bool operator==(const State &, const State &) = default;
    friend auto operator<=>(const State &a, const State &b) { return a.codes_ <=> b.codes_; }

private:
    std::vector<std::uint8_t> codes_;
};

/// C(n, k).
std::size_t binomial(int n, int k);

/// Codes of the entries of a triple list in entry order. Throws
/// InvalidStateError when a law is not a never-rule pair.
State trs_to_state(const ConstraintList &constraints);

/// The full C(n,3)-triple list in `ordering` with rules decoded from
/// `state`. Throws std::invalid_argument on length mismatch.
ConstraintList state_to_trs(const State &state, int n, TupleOrdering ordering);

/// For each t-subset S of {1..n} in lexicographic order, the rules of the
/// triples inside S, relabeled monotonically onto {1..t} and listed in RZ
/// order. `constraints` must be the full RZ-ordered triple list.
std::vector<State> subset_states(const ConstraintList &constraints, int t);

/// As subset_states for a triple list in any order.
std::vector<State> subset_states_any_ordering(const ConstraintList &constraints, int t);

} // namespace cdl
