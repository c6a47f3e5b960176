// types.hpp -- value types shared by every part of the library

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdl {

/// An alternative (symbol) in {1..n}.
using Alternative = std::uint8_t;

/// Domain cardinalities. Arithmetic on counts is overflow-checked.
using Count = std::uint64_t;

/// Largest supported number of alternatives. Insertion slots are tracked in
/// a 64-bit mask.
inline constexpr int kMaxAlternatives = 63;

/// Largest supported tuple arity. Restrictions are packed four bits per
/// entry into a 64-bit word.
inline constexpr int kMaxArity = 16;

/// Raised when a tuple or index that must exist in a constraint list does not.
class NotFoundError : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

/// Raised when a law cannot be represented as a never rule or a state code.
class InvalidStateError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a count does not fit in 64 bits.
class CountOverflowError : public std::overflow_error
{
public:
    using std::overflow_error::overflow_error;
};

/// Adds two counts, throwing CountOverflowError instead of wrapping.
Count checked_add(Count a, Count b);

/// A permutation of {1..k}. Used both for linear orders (k = n, most
/// preferred first) and for standardized patterns.
class Permutation
{
public:
    Permutation() = default;

    /// Throws std::invalid_argument unless `seq` is a permutation of 1..size.
    explicit Permutation(std::vector<Alternative> seq);
    Permutation(std::initializer_list<int> seq);

    /// The identity 1,2,..,n.
    static Permutation identity(int n);

    int size() const noexcept { return static_cast<int>(seq_.size()); }
    Alternative operator[](std::size_t i) const { return seq_[i]; }
    std::span<const Alternative> values() const noexcept { return seq_; }
    auto begin() const noexcept { return seq_.begin(); }
    auto end() const noexcept { return seq_.end(); }

    /// The inverse permutation: inverse()[v-1] is the position (1-based) of v.
    Permutation inverse() const;

    /// Digits joined with `sep`, e.g. "2-5-3-1-4".
    std::string to_string(char sep = ' ') const;

    friend bool operator==(const Permutation &, const Permutation &) = default;
    friend std::strong_ordering operator<=>(const Permutation &a,
                                            const Permutation &b)
    {
        return a.seq_ <=> b.seq_;
    }

private:
    std::vector<Alternative> seq_;
};

using LinearOrder = Permutation;
using Pattern = Permutation;
using Relabeling = Permutation;

std::ostream &operator<<(std::ostream &os, const Permutation &p);

/// A strictly increasing list of alternatives.
class KTuple
{
public:
    KTuple() = default;
    explicit KTuple(std::vector<Alternative> elements);
    KTuple(std::initializer_list<int> elements);

    int size() const noexcept { return static_cast<int>(elements_.size()); }
    Alternative operator[](std::size_t i) const { return elements_[i]; }
    Alternative front() const { return elements_.front(); }
    Alternative back() const { return elements_.back(); }
    std::span<const Alternative> values() const noexcept { return elements_; }
    auto begin() const noexcept { return elements_.begin(); }
    auto end() const noexcept { return elements_.end(); }

    bool contains(Alternative a) const noexcept;

    /// 1-based rank of `a` within the tuple; 0 when absent.
    int rank_of(Alternative a) const noexcept;

    /// "{1,2,3}"
    std::string to_string() const;

    friend bool operator==(const KTuple &, const KTuple &) = default;
    friend std::strong_ordering operator<=>(const KTuple &a, const KTuple &b)
    {
        return a.elements_ <=> b.elements_;
    }

private:
    std::vector<Alternative> elements_;
};

std::ostream &operator<<(std::ostream &os, const KTuple &t);

/// Never condition rNp: the rank-r element of a triple never occupies
/// position p of the restriction.
class NeverRule
{
public:
    constexpr NeverRule(int rank, int position) : rank_(rank), position_(position)
    {
        if (rank < 1 || rank > 3 || position < 1 || position > 3)
            throw std::invalid_argument("never rule rank and position must be in 1..3");
    }

    /// Inverse of code(); throws for codes outside 1..9.
    static NeverRule from_code(int code);

    /// Parses "2N3".
    static NeverRule parse(std::string_view text);

    constexpr int rank() const noexcept { return rank_; }
    constexpr int position() const noexcept { return position_; }

    /// 3*(rank-1) + position, in 1..9. Zero is reserved for "unassigned".
    constexpr int code() const noexcept { return 3 * (rank_ - 1) + position_; }

    std::string to_string() const;

    friend constexpr bool operator==(const NeverRule &, const NeverRule &) = default;
    friend constexpr auto operator<=>(const NeverRule &a, const NeverRule &b)
    {
        return a.code() <=> b.code();
    }

private:
    int rank_;
    int position_;
};

std::ostream &operator<<(std::ostream &os, const NeverRule &r);

/// All nine never rules in code order.
std::vector<NeverRule> all_never_rules();

/// A non-empty set of forbidden patterns of a common length, kept sorted.
class Law
{
public:
    explicit Law(std::vector<Pattern> forbidden);
    Law(std::initializer_list<Pattern> forbidden);

    int arity() const noexcept { return forbidden_.front().size(); }
    const std::vector<Pattern> &forbidden() const noexcept { return forbidden_; }
    bool forbids(const Pattern &p) const;

    /// True when every pattern of the arity is forbidden.
    bool forbids_everything() const;

    /// "2-5-3-1-4,1-2-3-4-5"
    std::string to_string() const;

    friend bool operator==(const Law &, const Law &) = default;

private:
    std::vector<Pattern> forbidden_;
};

/// One tuple and its (optional) law. A missing law leaves the tuple
/// unconstrained.
struct ConstraintEntry
{
    KTuple tuple;
    std::optional<Law> law;

    friend bool operator==(const ConstraintEntry &, const ConstraintEntry &) = default;
};

/// Ordered list of k-tuples on {1..n} with their laws. With k = 3 and
/// never-rule laws this is a triple-rule list; in general a tuple-law list.
class ConstraintList
{
public:
    /// Empty list. Throws for n outside 1..kMaxAlternatives or k outside
    /// 3..kMaxArity.
    ConstraintList(int n, int k);

    /// Validates that every tuple has arity k, lies in {1..n}, is unique, and
    /// that each law has arity k.
    ConstraintList(int n, int k, std::vector<ConstraintEntry> entries);

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::vector<ConstraintEntry> &entries() const noexcept { return entries_; }
    const ConstraintEntry &operator[](std::size_t i) const { return entries_[i]; }

    /// Index of `tuple`, if present.
    std::optional<std::size_t> find(const KTuple &tuple) const;

    /// Replaces the law at `index` (nullopt unassigns). Throws on bad arity.
    void set_law(std::size_t index, std::optional<Law> law);

    /// Number of entries carrying a law.
    std::size_t assigned_count() const;

    friend bool operator==(const ConstraintList &, const ConstraintList &) = default;

private:
    int n_;
    int k_;
    std::vector<ConstraintEntry> entries_;
};

/// A sorted, duplicate-free set of linear orders on {1..n}, stored flat.
class Domain
{
public:
    /// The empty domain on n alternatives.
    explicit Domain(int n);

    /// Sorts and deduplicates; validates every order has length n.
    Domain(int n, std::vector<LinearOrder> orders);

    /// Takes `count` records of n alternatives from a flat buffer; the caller
    /// need not sort them.
    static Domain from_flat(int n, std::vector<Alternative> flat);

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return n_ == 0 ? 0 : flat_.size() / n_; }
    bool empty() const noexcept { return flat_.empty(); }

    std::span<const Alternative> operator[](std::size_t i) const
    {
        return {flat_.data() + i * n_, static_cast<std::size_t>(n_)};
    }
    LinearOrder order(std::size_t i) const;
    std::vector<LinearOrder> orders() const;
    bool contains(const LinearOrder &order) const;

    const std::vector<Alternative> &flat() const noexcept { return flat_; }

    friend bool operator==(const Domain &, const Domain &) = default;

    /// Lexicographic over the sorted member lists.
    friend std::strong_ordering operator<=>(const Domain &a, const Domain &b)
    {
        if (auto c = a.n_ <=> b.n_; c != 0)
            return c;
        return a.flat_ <=> b.flat_;
    }

private:
    int n_;
    std::vector<Alternative> flat_;
};

} // namespace cdl
