#include "cdl/core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <set>

#include "cdl/parallel.hpp"

namespace cdl {

namespace {

using Slots = std::uint64_t;

inline Slots low_bits(int count)
{
    return count >= 64 ? ~Slots{0} : (Slots{1} << count) - 1;
}

/// Bits lo..hi inclusive.
inline Slots slot_range(int lo, int hi)
{
    return low_bits(hi + 1) & ~low_bits(lo);
}

/// Packs a sequence of small values four bits apiece.
inline std::uint64_t pack(std::span<const Alternative> values)
{
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        code |= std::uint64_t(values[i]) << (4 * i);
    return code;
}

/// One assigned tuple whose largest alternative is the one being inserted.
/// Inserting the largest element into a restriction q of the other k-1
/// members at index i yields a k-pattern; a forbidden k-pattern therefore
/// corresponds to a (q, i) pair, and index i to a contiguous range of
/// insertion slots in the full order.
/// The same for a triple {a, b, m}: bit i of `when_before` (a placed before
/// b) or `when_after` marks insertion index i of m as forbidden.
struct TripleCheck
{
    Alternative a = 0, b = 0;
    std::uint8_t when_before = 0, when_after = 0;
};

struct TupleCheck
{
    std::array<Alternative, kMaxArity - 1> others{};
    int width = 0; // k - 1
    std::vector<std::pair<std::uint64_t, int>> forbidden;
};

class Extender
{
public:
    explicit Extender(const ConstraintList &constraints)
      : n_(constraints.n()), by_max_(constraints.n() + 1), triples_(constraints.n() + 1)
    {
        for (const auto &entry : constraints.entries()) {
            if (!entry.law)
                continue;
            const TupleCheck check = make_check(entry.tuple, *entry.law);
            if (check.width == 2)
                triples_[entry.tuple.back()].push_back(to_triple(check));
            else
                by_max_[entry.tuple.back()].push_back(check);
        }
    }

    static TripleCheck to_triple(const TupleCheck &check)
    {
        TripleCheck t{check.others[0], check.others[1], 0, 0};
        const std::uint64_t before = pack(std::array<Alternative, 2>{1, 2});
        for (const auto &[code, index] : check.forbidden) {
            if (code == before)
                t.when_before |= std::uint8_t(1u << index);
            else
                t.when_after |= std::uint8_t(1u << index);
        }
        return t;
    }

    static TupleCheck make_check(const KTuple &tuple, const Law &law)
    {
        const int k = tuple.size();
        TupleCheck check;
        check.width = k - 1;
        for (int t = 0; t < k - 1; ++t)
            check.others[t] = tuple[t];
        for (const auto &p : law.forbidden()) {
            std::array<Alternative, kMaxArity> rest{};
            int index = 0, w = 0;
            for (int t = 0; t < k; ++t) {
                if (p[t] == k)
                    index = t;
                else
                    rest[w++] = p[t];
            }
            check.forbidden.emplace_back(pack({rest.data(), std::size_t(w)}), index);
        }
        return check;
    }

    int n() const noexcept { return n_; }

    /// Insertion slots 0..m-1 at which alternative m may be placed into an
    /// order of 1..m-1 whose positions are given by pos[a]. `extra`, when
    /// given, is one more check on the tuple whose maximum is `extra_max`.
    Slots allowed(int m, const Alternative *pos, const TupleCheck *extra = nullptr,
                  int extra_max = 0) const
    {
        Slots blocked = 0;
        for (const auto &t : triples_[m]) {
            const int pa = pos[t.a], pb = pos[t.b];
            const bool before = pa < pb;
            const unsigned mask = before ? t.when_before : t.when_after;
            if (!mask)
                continue;
            const int lo = before ? pa : pb, hi = before ? pb : pa;
            if (mask & 1u)
                blocked |= low_bits(lo + 1);
            if (mask & 2u)
                blocked |= slot_range(lo + 1, hi);
            if (mask & 4u)
                blocked |= ~low_bits(hi + 1);
        }
        for (const auto &check : by_max_[m])
            blocked |= blocked_slots(check, m, pos);
        if (extra && extra_max == m)
            blocked |= blocked_slots(*extra, m, pos);
        return low_bits(m) & ~blocked;
    }

private:
    static Slots blocked_slots(const TupleCheck &check, int m, const Alternative *pos)
    {
        Slots blocked = 0;
        std::array<Alternative, kMaxArity> sorted_pos{};
        std::array<Alternative, kMaxArity> ranks{};
        {
            const int w = check.width;
            for (int t = 0; t < w; ++t) {
                Alternative p = pos[check.others[t]];
                Alternative r = static_cast<Alternative>(t + 1);
                int j = t;
                while (j > 0 && sorted_pos[j - 1] > p) {
                    sorted_pos[j] = sorted_pos[j - 1];
                    ranks[j] = ranks[j - 1];
                    --j;
                }
                sorted_pos[j] = p;
                ranks[j] = r;
            }
            const std::uint64_t q = pack({ranks.data(), std::size_t(w)});
            for (const auto &[code, index] : check.forbidden) {
                if (code != q)
                    continue;
                const int lo = index == 0 ? 0 : sorted_pos[index - 1] + 1;
                const int hi = index == w ? m - 1 : sorted_pos[index];
                blocked |= slot_range(lo, hi);
            }
        }
        return blocked;
    }

    int n_;
    std::vector<std::vector<TupleCheck>> by_max_;
    std::vector<std::vector<TripleCheck>> triples_;
};

/// A partial order under construction with its inverse.
struct Node
{
    std::array<Alternative, kMaxAlternatives + 1> order{};
    std::array<Alternative, kMaxAlternatives + 1> pos{};
    int length = 0;

    void load(std::span<const Alternative> seq)
    {
        length = static_cast<int>(seq.size());
        for (int i = 0; i < length; ++i) {
            order[i] = seq[i];
            pos[seq[i]] = static_cast<Alternative>(i);
        }
    }

    void insert(int slot)
    {
        const Alternative a = static_cast<Alternative>(length + 1);
        for (int i = length; i > slot; --i) {
            order[i] = order[i - 1];
            pos[order[i]] = static_cast<Alternative>(i);
        }
        order[slot] = a;
        pos[a] = static_cast<Alternative>(slot);
        ++length;
    }

    void erase(int slot)
    {
        --length;
        for (int i = slot; i < length; ++i) {
            order[i] = order[i + 1];
            pos[order[i]] = static_cast<Alternative>(i);
        }
    }
};

Count count_below(const Extender &ext, Node &node, const TupleCheck *extra = nullptr,
                  int extra_max = 0)
{
    const int m = node.length + 1;
    Slots slots = ext.allowed(m, node.pos.data(), extra, extra_max);
    if (m == ext.n())
        return static_cast<Count>(std::popcount(slots));
    Count total = 0;
    while (slots) {
        const int slot = std::countr_zero(slots);
        slots &= slots - 1;
        node.insert(slot);
        total = checked_add(total, count_below(ext, node, extra, extra_max));
        node.erase(slot);
    }
    return total;
}

/// Adds the completions below `node` to `total`, stopping once it reaches
/// `limit`.
void count_capped(const Extender &ext, Node &node, const TupleCheck *extra, int extra_max,
                  Count &total, Count limit)
{
    const int m = node.length + 1;
    Slots slots = ext.allowed(m, node.pos.data(), extra, extra_max);
    if (m == ext.n()) {
        total = checked_add(total, static_cast<Count>(std::popcount(slots)));
        return;
    }
    while (slots && total < limit) {
        const int slot = std::countr_zero(slots);
        slots &= slots - 1;
        node.insert(slot);
        count_capped(ext, node, extra, extra_max, total, limit);
        node.erase(slot);
    }
}

/// Breadth-first expansion of a flat level of orders of length `length`.
std::vector<Alternative> expand_level(const Extender &ext, const std::vector<Alternative> &level,
                                      int length)
{
    std::vector<Alternative> next;
    const int m = length + 1;
    Node node;
    for (std::size_t off = 0; off < level.size(); off += length) {
        node.load({level.data() + off, std::size_t(length)});
        Slots slots = ext.allowed(m, node.pos.data());
        while (slots) {
            const int slot = std::countr_zero(slots);
            slots &= slots - 1;
            node.insert(slot);
            next.insert(next.end(), node.order.begin(), node.order.begin() + m);
            node.erase(slot);
        }
    }
    return next;
}

const std::vector<Alternative> kStartLevel = {1, 2, 2, 1};

} // namespace

std::vector<KTuple> all_tuples(int n, int k)
{
    std::vector<KTuple> out;
    if (k < 1 || k > n)
        return out;
    std::vector<Alternative> cur(k);
    for (int i = 0; i < k; ++i)
        cur[i] = static_cast<Alternative>(i + 1);
    for (;;) {
        out.emplace_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i + 1)
            --i;
        if (i < 0)
            break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j)
            cur[j] = static_cast<Alternative>(cur[j - 1] + 1);
    }
    return out;
}

Pattern restrict_to(const LinearOrder &order, const KTuple &tuple)
{
    const int m = order.size();
    if (tuple.size() > 0 && tuple.back() > m)
        throw std::invalid_argument("tuple " + tuple.to_string() + " exceeds order length " +
                                    std::to_string(m));
    std::vector<Alternative> out;
    out.reserve(tuple.size());
    for (Alternative a : order) {
        if (int r = tuple.rank_of(a))
            out.push_back(static_cast<Alternative>(r));
    }
    return Pattern(std::move(out));
}

Law rule_to_patterns(NeverRule rule)
{
    std::vector<Pattern> out;
    std::vector<Alternative> p = {1, 2, 3};
    do {
        if (p[rule.position() - 1] == rule.rank())
            out.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return Law(std::move(out));
}

std::optional<NeverRule> law_to_rule(const Law &law)
{
    if (law.arity() != 3 || law.forbidden().size() != 2)
        return std::nullopt;
    for (const auto &rule : all_never_rules())
        if (rule_to_patterns(rule) == law)
            return rule;
    return std::nullopt;
}

Law single_pattern_law(const Pattern &pattern)
{
    return Law(std::vector<Pattern>{pattern});
}

bool satisfies(const LinearOrder &order, const ConstraintList &constraints)
{
    for (const auto &entry : constraints.entries()) {
        if (!entry.law || entry.tuple.back() > order.size())
            continue;
        if (entry.law->forbids(restrict_to(order, entry.tuple)))
            return false;
    }
    return true;
}

std::vector<LinearOrder> extend(const LinearOrder &order, const ConstraintList &constraints)
{
    const int m = order.size() + 1;
    if (m > constraints.n())
        throw std::invalid_argument("cannot extend past n = " + std::to_string(constraints.n()));
    Extender ext(constraints);
    Node node;
    node.load(order.values());
    std::vector<LinearOrder> out;
    Slots slots = ext.allowed(m, node.pos.data());
    while (slots) {
        const int slot = std::countr_zero(slots);
        slots &= slots - 1;
        node.insert(slot);
        out.emplace_back(std::vector<Alternative>(node.order.begin(), node.order.begin() + m));
        node.erase(slot);
    }
    return out;
}

Domain build_domain(const ConstraintList &constraints)
{
    const int n = constraints.n();
    if (n == 1)
        return Domain::from_flat(1, {1});
    Extender ext(constraints);
    std::vector<Alternative> level = kStartLevel;
    for (int length = 2; length < n; ++length)
        level = expand_level(ext, level, length);
    return Domain::from_flat(n, std::move(level));
}

Count domain_size(const ConstraintList &constraints, unsigned jobs)
{
    const int n = constraints.n();
    if (n <= 2)
        return n == 1 ? 1 : 2;
    Extender ext(constraints);
    std::vector<Alternative> level = kStartLevel;
    int length = 2;
    // Grow a breadth-first frontier until there is enough work to share.
    const std::size_t wanted = jobs <= 1 ? 1 : std::size_t(jobs) * 16;
    while (length + 1 < n && level.size() / length < wanted) {
        level = expand_level(ext, level, length);
        ++length;
    }
    const std::size_t nodes = level.size() / length;
    std::vector<Count> partial(nodes, 0);
    parallel_for(nodes, jobs, [&](std::size_t i) {
        Node node;
        node.load({level.data() + i * length, std::size_t(length)});
        partial[i] = count_below(ext, node);
    });
    Count total = 0;
    for (Count c : partial)
        total = checked_add(total, c);
    return total;
}

struct TrialCounter::Impl
{
    Extender ext;
};

TrialCounter::TrialCounter(const ConstraintList &constraints)
  : impl_(std::make_unique<Impl>(Impl{Extender(constraints)}))
{
}

TrialCounter::~TrialCounter() = default;

Count TrialCounter::count() const
{
    return count_with_check(nullptr, 0, std::numeric_limits<Count>::max());
}

Count TrialCounter::count_with(const KTuple &tuple, const Law &law, Count limit) const
{
    if (tuple.size() != law.arity())
        throw std::invalid_argument("law arity differs from tuple " + tuple.to_string());
    if (tuple.size() == 0 || tuple.back() > impl_->ext.n())
        throw std::invalid_argument("tuple " + tuple.to_string() + " outside 1.." +
                                    std::to_string(impl_->ext.n()));
    const TupleCheck check = Extender::make_check(tuple, law);
    return count_with_check(&check, tuple.back(), limit);
}

Count TrialCounter::count_with_check(const void *extra, int extra_max, Count limit) const
{
    const auto &ext = impl_->ext;
    const auto *check = static_cast<const TupleCheck *>(extra);
    const int n = ext.n();
    if (n <= 2)
        return std::min<Count>(n == 1 ? 1 : 2, limit);
    Count total = 0;
    Node node;
    for (std::size_t off = 0; off < kStartLevel.size() && total < limit; off += 2) {
        node.load({kStartLevel.data() + off, 2});
        count_capped(ext, node, check, extra_max, total, limit);
    }
    return std::min(total, limit);
}

std::vector<std::pair<KTuple, std::vector<Pattern>>>
unrealized_patterns(const Domain &domain, const std::vector<KTuple> &tuples)
{
    if (domain.empty())
        throw std::invalid_argument("every law holds vacuously on an empty domain");
    std::vector<std::pair<KTuple, std::vector<Pattern>>> out;
    for (const auto &tuple : tuples) {
        const int k = tuple.size();
        if (k > 10)
            throw std::invalid_argument("tuple arity too large to enumerate patterns");
        if (k == 0 || tuple.back() > domain.n())
            throw std::invalid_argument("tuple " + tuple.to_string() + " outside the domain");
        std::set<Pattern> realized;
        for (std::size_t i = 0; i < domain.size(); ++i)
            realized.insert(restrict_to(domain.order(i), tuple));
        std::vector<Pattern> missing;
        std::vector<Alternative> p(k);
        for (int i = 0; i < k; ++i)
            p[i] = static_cast<Alternative>(i + 1);
        do {
            Pattern pattern(p);
            if (!realized.contains(pattern))
                missing.push_back(std::move(pattern));
        } while (std::next_permutation(p.begin(), p.end()));
        out.emplace_back(tuple, std::move(missing));
    }
    return out;
}

namespace {

/// Bit 3*(rank-1)+(position-1) set for every (rank, position) pair realized
/// on the triple.
unsigned realized_pairs(const Domain &domain, const KTuple &triple)
{
    unsigned mask = 0;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        int position = 0;
        for (Alternative a : domain[i]) {
            if (int r = triple.rank_of(a)) {
                mask |= 1u << (3 * (r - 1) + position);
                ++position;
            }
        }
    }
    return mask;
}

} // namespace

std::vector<std::pair<KTuple, std::vector<NeverRule>>>
domain_to_rules(const Domain &domain, const std::vector<KTuple> &triples)
{
    if (domain.empty())
        throw std::invalid_argument("every rule holds vacuously on an empty domain");
    std::vector<std::pair<KTuple, std::vector<NeverRule>>> out;
    for (const auto &triple : triples) {
        if (triple.size() != 3 || triple.back() > domain.n())
            throw std::invalid_argument("tuple " + triple.to_string() +
                                        " is not a triple of the domain");
        const unsigned mask = realized_pairs(domain, triple);
        std::vector<NeverRule> rules;
        for (int code = 1; code <= 9; ++code)
            if (!(mask & (1u << (code - 1))))
                rules.push_back(NeverRule::from_code(code));
        out.emplace_back(triple, std::move(rules));
    }
    return out;
}

bool is_condorcet(const Domain &domain)
{
    if (domain.empty())
        throw std::invalid_argument("is_condorcet needs a non-empty domain");
    for (const auto &triple : all_tuples(domain.n(), 3))
        if (realized_pairs(domain, triple) == 0x1ff)
            return false;
    return true;
}

ConstraintList pattern_avoidance_constraints(int n, const Pattern &pattern)
{
    const int k = pattern.size();
    std::vector<ConstraintEntry> entries;
    for (auto &tuple : all_tuples(n, k))
        entries.push_back({std::move(tuple), single_pattern_law(pattern)});
    return ConstraintList(n, k, std::move(entries));
}

} // namespace cdl
