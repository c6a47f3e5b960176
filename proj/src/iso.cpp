#include "cdl/iso.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "cdl/core.hpp"

namespace cdl {

namespace {

/// Relabels every record through `map`, where map[a] is the image of a.
Domain relabel_with(const Domain &domain, std::span<const Alternative> map)
{
    std::vector<Alternative> flat(domain.flat().size());
    std::transform(domain.flat().begin(), domain.flat().end(), flat.begin(),
                   [&](Alternative a) { return map[a]; });
    return Domain::from_flat(domain.n(), std::move(flat));
}

/// 1-indexed lookup table for the inverse of a member order.
std::vector<Alternative> inverse_map(std::span<const Alternative> order)
{
    std::vector<Alternative> inv(order.size() + 1, 0);
    for (std::size_t i = 0; i < order.size(); ++i)
        inv[order[i]] = static_cast<Alternative>(i + 1);
    return inv;
}

std::string key_of(const Domain &d)
{
    return std::string(d.flat().begin(), d.flat().end());
}

} // namespace

Domain relabel_domain(const Domain &domain, const Relabeling &g)
{
    if (g.size() != domain.n())
        throw std::invalid_argument("relabeling acts on " + std::to_string(g.size()) +
                                    " alternatives, domain has " + std::to_string(domain.n()));
    std::vector<Alternative> map(domain.n() + 1, 0);
    for (int a = 1; a <= domain.n(); ++a)
        map[a] = g[a - 1];
    return relabel_with(domain, map);
}

std::vector<Domain> isomorphic_domains(const Domain &domain)
{
    if (domain.empty())
        throw std::invalid_argument("isomorphic_domains needs a non-empty domain");
    std::vector<Domain> out;
    out.reserve(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i)
        out.push_back(relabel_with(domain, inverse_map(domain[i])));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

NormalForm normal_form(const Domain &domain)
{
    if (domain.empty())
        throw std::invalid_argument("normal_form needs a non-empty domain");
    std::optional<Domain> best;
    std::vector<Alternative> best_map;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        auto map = inverse_map(domain[i]);
        Domain candidate = relabel_with(domain, map);
        if (!best || candidate < *best) {
            best = std::move(candidate);
            best_map = std::move(map);
        }
    }
    return {std::move(*best),
            Relabeling(std::vector<Alternative>(best_map.begin() + 1, best_map.end()))};
}

Domain isomorphic_hash(const Domain &domain)
{
    return normal_form(domain).domain;
}

std::vector<Domain> non_isomorphic_domains(const std::vector<Domain> &domains)
{
    // Two domains are isomorphic exactly when they share a relabeled copy
    // containing the identity, so each input is filed under all of them.
    std::unordered_map<std::string, std::vector<std::size_t>> where;
    for (std::size_t i = 0; i < domains.size(); ++i)
        for (const Domain &iso : isomorphic_domains(domains[i]))
            where[key_of(iso)].push_back(i);

    std::vector<bool> removed(domains.size(), false);
    std::vector<Domain> out;
    for (std::size_t i = 0; i < domains.size(); ++i) {
        if (removed[i])
            continue;
        out.push_back(domains[i]);
        for (const Domain &iso : isomorphic_domains(domains[i])) {
            auto it = where.find(key_of(iso));
            if (it == where.end())
                continue;
            for (std::size_t j : it->second)
                if (j > i && domains[j].n() == iso.n())
                    removed[j] = true;
        }
    }
    return out;
}

NeverRule transform_rule(const KTuple &triple, NeverRule rule, const Relabeling &g)
{
    if (triple.size() != 3 || triple.back() > g.size())
        throw std::invalid_argument("transform_rule needs a triple inside the relabeling");
    const Alternative image_of_x = g[triple[rule.rank() - 1] - 1];
    int rank = 1;
    for (Alternative a : triple)
        if (g[a - 1] < image_of_x)
            ++rank;
    return NeverRule(rank, rule.position());
}

ConstraintList transform_trs(const ConstraintList &constraints, const Relabeling &g)
{
    if (constraints.k() != 3)
        throw std::invalid_argument("transform_trs needs a triple list");
    if (g.size() != constraints.n())
        throw std::invalid_argument("relabeling size does not match n");
    ConstraintList out = constraints;
    for (std::size_t i = 0; i < out.size(); ++i)
        out.set_law(i, std::nullopt);
    for (const auto &entry : constraints.entries()) {
        std::vector<Alternative> image;
        for (Alternative a : entry.tuple)
            image.push_back(g[a - 1]);
        std::sort(image.begin(), image.end());
        KTuple target(std::move(image));
        auto index = out.find(target);
        if (!index)
            throw std::invalid_argument("image triple " + target.to_string() +
                                        " is not in the list");
        if (!entry.law)
            continue;
        auto rule = law_to_rule(*entry.law);
        if (!rule)
            throw InvalidStateError("law on " + entry.tuple.to_string() + " is not a never rule");
        out.set_law(*index, rule_to_patterns(transform_rule(entry.tuple, *rule, g)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// MinimalityChecker

MinimalityChecker::MinimalityChecker(const ConstraintList &reference,
                                     std::vector<NeverRule> candidate_rules)
  : n_(reference.n())
{
    if (reference.k() != 3)
        throw std::invalid_argument("minimality is defined for triple lists");
    if (reference.size() != binomial(n_, 3))
        throw std::invalid_argument("minimality needs the full triple list");
    const std::size_t side = static_cast<std::size_t>(n_) + 1;
    index_.assign(side * side * side, 0);
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const KTuple &t = reference[i].tuple;
        triples_.push_back(t);
        index_[(t[0] * side + t[1]) * side + t[2]] = static_cast<std::uint32_t>(i);
    }
    for (const auto &rule : candidate_rules)
        candidate_mask_ |= 1u << rule.code();
    if (candidate_mask_ == 0)
        throw std::invalid_argument("no candidate rules");
}

std::size_t MinimalityChecker::index_of(Alternative a, Alternative b, Alternative c) const
{
    if (a > b)
        std::swap(a, b);
    if (b > c)
        std::swap(b, c);
    if (a > b)
        std::swap(a, b);
    const std::size_t side = static_cast<std::size_t>(n_) + 1;
    return index_[(a * side + b) * side + c];
}

namespace {

/// Rank (1..3) of g(triple[rank-1]) inside g(triple).
inline int image_rank(const KTuple &triple, int rank, std::span<const Alternative> g)
{
    const Alternative x = g[triple[rank - 1]];
    int r = 1;
    for (Alternative a : triple)
        if (g[a] < x)
            ++r;
    return r;
}

inline std::uint8_t image_code(const KTuple &triple, std::uint8_t code,
                               std::span<const Alternative> g)
{
    const int rank = (code - 1) / 3 + 1, position = (code - 1) % 3 + 1;
    return static_cast<std::uint8_t>(3 * (image_rank(triple, rank, g) - 1) + position);
}

} // namespace

bool MinimalityChecker::closed_under(const State &state, std::span<const Alternative> g) const
{
    constexpr unsigned all_rules = 0x3fe;
    if ((candidate_mask_ & all_rules) == all_rules)
        return true;
    for (std::size_t j = 0; j < triples_.size(); ++j) {
        if (state[j] != 0) {
            if (!(candidate_mask_ & (1u << image_code(triples_[j], state[j], g))))
                return false;
            continue;
        }
        for (std::uint8_t code = 1; code <= 9; ++code)
            if ((candidate_mask_ & (1u << code)) &&
                !(candidate_mask_ & (1u << image_code(triples_[j], code, g))))
                return false;
    }
    return true;
}

bool MinimalityChecker::is_minimal(const State &state) const
{
    if (state.size() != triples_.size())
        throw std::invalid_argument("state length does not match the reference list");
    if (n_ < 3)
        return true;
    // g and its inverse, 1-indexed.
    std::vector<Alternative> perm(n_);
    std::iota(perm.begin(), perm.end(), Alternative{1});
    std::vector<Alternative> g(n_ + 1, 0), ginv(n_ + 1, 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
        for (int a = 1; a <= n_; ++a) {
            g[a] = perm[a - 1];
            ginv[perm[a - 1]] = static_cast<Alternative>(a);
        }
        for (std::size_t i = 0; i < triples_.size(); ++i) {
            const std::uint8_t mine = state[i];
            if (mine == 0)
                break;
            const KTuple &t = triples_[i];
            const std::size_t j = index_of(ginv[t[0]], ginv[t[1]], ginv[t[2]]);
            if (state[j] == 0)
                break;
            const std::uint8_t theirs = image_code(triples_[j], state[j], g);
            if (theirs > mine)
                break;
            if (theirs < mine) {
                if (closed_under(state, g))
                    return false;
                break;
            }
        }
    }
    return true;
}

bool is_trs_lex_minimal(const ConstraintList &constraints)
{
    return is_trs_lex_minimal(constraints, all_never_rules());
}

bool is_trs_lex_minimal(const ConstraintList &constraints,
                        const std::vector<NeverRule> &candidate_rules)
{
    return MinimalityChecker(constraints, candidate_rules).is_minimal(trs_to_state(constraints));
}

} // namespace cdl
