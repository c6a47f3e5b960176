#include "cdl/types.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cdl {

Count checked_add(Count a, Count b)
{
    Count sum;
    if (__builtin_add_overflow(a, b, &sum))
        throw CountOverflowError("domain size exceeds 64-bit counter");
    return sum;
}

namespace {

std::vector<Alternative> to_alternatives(std::initializer_list<int> values)
{
    std::vector<Alternative> out;
    out.reserve(values.size());
    for (int v : values) {
        if (v < 1 || v > kMaxAlternatives)
            throw std::invalid_argument("alternative out of range: " + std::to_string(v));
        out.push_back(static_cast<Alternative>(v));
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<Alternative> seq) : seq_(std::move(seq))
{
    if (seq_.size() > static_cast<std::size_t>(kMaxAlternatives))
        throw std::invalid_argument("permutation too long");
    std::vector<bool> seen(seq_.size() + 1, false);
    for (Alternative v : seq_) {
        if (v < 1 || v > seq_.size() || seen[v])
            throw std::invalid_argument("not a permutation of 1.." +
                                        std::to_string(seq_.size()));
        seen[v] = true;
    }
}

Permutation::Permutation(std::initializer_list<int> seq)
  : Permutation(to_alternatives(seq))
{
}

Permutation Permutation::identity(int n)
{
    std::vector<Alternative> seq(n);
    std::iota(seq.begin(), seq.end(), Alternative{1});
    return Permutation(std::move(seq));
}

Permutation Permutation::inverse() const
{
    std::vector<Alternative> inv(seq_.size());
    for (std::size_t i = 0; i < seq_.size(); ++i)
        inv[seq_[i] - 1] = static_cast<Alternative>(i + 1);
    Permutation p;
    p.seq_ = std::move(inv);
    return p;
}

std::string Permutation::to_string(char sep) const
{
    std::string out;
    for (std::size_t i = 0; i < seq_.size(); ++i) {
        if (i)
            out += sep;
        out += std::to_string(seq_[i]);
    }
    return out;
}

std::ostream &operator<<(std::ostream &os, const Permutation &p)
{
    return os << '(' << p.to_string(',') << ')';
}

// ---------------------------------------------------------------------------
// KTuple

KTuple::KTuple(std::vector<Alternative> elements) : elements_(std::move(elements))
{
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i] < 1 || elements_[i] > kMaxAlternatives)
            throw std::invalid_argument("tuple element out of range");
        if (i && elements_[i - 1] >= elements_[i])
            throw std::invalid_argument("tuple elements must be strictly increasing");
    }
}

KTuple::KTuple(std::initializer_list<int> elements) : KTuple(to_alternatives(elements))
{
}

bool KTuple::contains(Alternative a) const noexcept
{
    return std::binary_search(elements_.begin(), elements_.end(), a);
}

int KTuple::rank_of(Alternative a) const noexcept
{
    auto it = std::lower_bound(elements_.begin(), elements_.end(), a);
    if (it == elements_.end() || *it != a)
        return 0;
    return static_cast<int>(it - elements_.begin()) + 1;
}

std::string KTuple::to_string() const
{
    std::string out = "{";
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(elements_[i]);
    }
    return out + "}";
}

std::ostream &operator<<(std::ostream &os, const KTuple &t)
{
    return os << t.to_string();
}

// ---------------------------------------------------------------------------
// NeverRule

NeverRule NeverRule::from_code(int code)
{
    if (code < 1 || code > 9)
        throw std::invalid_argument("never rule code must be in 1..9, got " +
                                    std::to_string(code));
    return NeverRule((code - 1) / 3 + 1, (code - 1) % 3 + 1);
}

NeverRule NeverRule::parse(std::string_view text)
{
    if (text.size() != 3 || text[1] != 'N' || text[0] < '1' || text[0] > '3' ||
        text[2] < '1' || text[2] > '3')
        throw std::invalid_argument("malformed never rule '" + std::string(text) + "'");
    return NeverRule(text[0] - '0', text[2] - '0');
}

std::string NeverRule::to_string() const
{
    return std::to_string(rank_) + "N" + std::to_string(position_);
}

std::ostream &operator<<(std::ostream &os, const NeverRule &r)
{
    return os << r.to_string();
}

std::vector<NeverRule> all_never_rules()
{
    std::vector<NeverRule> rules;
    for (int code = 1; code <= 9; ++code)
        rules.push_back(NeverRule::from_code(code));
    return rules;
}

// ---------------------------------------------------------------------------
// Law

Law::Law(std::vector<Pattern> forbidden) : forbidden_(std::move(forbidden))
{
    if (forbidden_.empty())
        throw std::invalid_argument("a law must forbid at least one pattern");
    const int k = forbidden_.front().size();
    if (k < 1 || k > kMaxArity)
        throw std::invalid_argument("law arity out of range");
    for (const auto &p : forbidden_)
        if (p.size() != k)
            throw std::invalid_argument("law patterns must share one length");
    std::sort(forbidden_.begin(), forbidden_.end());
    if (std::adjacent_find(forbidden_.begin(), forbidden_.end()) != forbidden_.end())
        throw std::invalid_argument("law patterns must be distinct");
}

Law::Law(std::initializer_list<Pattern> forbidden)
  : Law(std::vector<Pattern>(forbidden))
{
}

bool Law::forbids(const Pattern &p) const
{
    return std::binary_search(forbidden_.begin(), forbidden_.end(), p);
}

bool Law::forbids_everything() const
{
    Count total = 1;
    for (int i = 2; i <= arity(); ++i)
        total *= static_cast<Count>(i);
    return forbidden_.size() == total;
}

std::string Law::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < forbidden_.size(); ++i) {
        if (i)
            out += ',';
        out += forbidden_[i].to_string('-');
    }
    return out;
}

// ---------------------------------------------------------------------------
// ConstraintList

ConstraintList::ConstraintList(int n, int k) : n_(n), k_(k)
{
    if (n < 1 || n > kMaxAlternatives)
        throw std::invalid_argument("n must be in 1.." + std::to_string(kMaxAlternatives));
    if (k < 3 || k > kMaxArity)
        throw std::invalid_argument("tuple arity must be in 3.." + std::to_string(kMaxArity));
}

ConstraintList::ConstraintList(int n, int k, std::vector<ConstraintEntry> entries)
  : ConstraintList(n, k)
{
    entries_ = std::move(entries);
    std::vector<KTuple> seen;
    seen.reserve(entries_.size());
    for (const auto &e : entries_) {
        if (e.tuple.size() != k)
            throw std::invalid_argument("tuple " + e.tuple.to_string() + " does not have arity " +
                                        std::to_string(k));
        if (e.tuple.back() > n)
            throw std::invalid_argument("tuple " + e.tuple.to_string() + " exceeds n = " +
                                        std::to_string(n));
        if (e.law && e.law->arity() != k)
            throw std::invalid_argument("law arity mismatch on tuple " + e.tuple.to_string());
        seen.push_back(e.tuple);
    }
    std::sort(seen.begin(), seen.end());
    if (auto dup = std::adjacent_find(seen.begin(), seen.end()); dup != seen.end())
        throw std::invalid_argument("duplicate tuple " + dup->to_string());
}

std::optional<std::size_t> ConstraintList::find(const KTuple &tuple) const
{
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].tuple == tuple)
            return i;
    return std::nullopt;
}

void ConstraintList::set_law(std::size_t index, std::optional<Law> law)
{
    if (index >= entries_.size())
        throw NotFoundError("entry index " + std::to_string(index) + " out of range (" +
                            std::to_string(entries_.size()) + " entries)");
    if (law && law->arity() != k_)
        throw std::invalid_argument("law arity mismatch on tuple " +
                                    entries_[index].tuple.to_string());
    entries_[index].law = std::move(law);
}

std::size_t ConstraintList::assigned_count() const
{
    return static_cast<std::size_t>(std::count_if(
        entries_.begin(), entries_.end(), [](const auto &e) { return e.law.has_value(); }));
}

// ---------------------------------------------------------------------------
// Domain

Domain::Domain(int n) : n_(n)
{
    if (n < 1 || n > kMaxAlternatives)
        throw std::invalid_argument("n must be in 1.." + std::to_string(kMaxAlternatives));
}

Domain::Domain(int n, std::vector<LinearOrder> orders) : Domain(n)
{
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
    flat_.reserve(orders.size() * n);
    for (const auto &o : orders) {
        if (o.size() != n)
            throw std::invalid_argument("order length " + std::to_string(o.size()) +
                                        " does not match n = " + std::to_string(n));
        flat_.insert(flat_.end(), o.begin(), o.end());
    }
}

Domain Domain::from_flat(int n, std::vector<Alternative> flat)
{
    Domain d(n);
    if (flat.size() % n != 0)
        throw std::invalid_argument("flat buffer is not a whole number of orders");
    const std::size_t count = flat.size() / n;
    std::vector<std::uint32_t> idx(count);
    std::iota(idx.begin(), idx.end(), 0u);
    auto rec = [&](std::uint32_t i) {
        return std::span<const Alternative>(flat.data() + std::size_t(i) * n, n);
    };
    auto less = [&](std::uint32_t a, std::uint32_t b) {
        auto x = rec(a), y = rec(b);
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    };
    if (!std::is_sorted(idx.begin(), idx.end(), less))
        std::sort(idx.begin(), idx.end(), less);
    d.flat_.reserve(flat.size());
    for (std::size_t j = 0; j < count; ++j) {
        auto r = rec(idx[j]);
        if (j && std::equal(r.begin(), r.end(), rec(idx[j - 1]).begin()))
            continue;
        d.flat_.insert(d.flat_.end(), r.begin(), r.end());
    }
    return d;
}

LinearOrder Domain::order(std::size_t i) const
{
    auto r = (*this)[i];
    return LinearOrder(std::vector<Alternative>(r.begin(), r.end()));
}

std::vector<LinearOrder> Domain::orders() const
{
    std::vector<LinearOrder> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i)
        out.push_back(order(i));
    return out;
}

bool Domain::contains(const LinearOrder &order) const
{
    if (order.size() != n_)
        return false;
    std::size_t lo = 0, hi = size();
    auto target = order.values();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto r = (*this)[mid];
        if (std::lexicographical_compare(r.begin(), r.end(), target.begin(), target.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == size())
        return false;
    auto r = (*this)[lo];
    return std::equal(r.begin(), r.end(), target.begin());
}

} // namespace cdl
