// iso.hpp -- relabeling, normal forms and isomorph rejection

#pragma once

#include <vector>

#include "cdl/subsets.hpp"
#include "cdl/types.hpp"

namespace cdl {

/// Applies g to every alternative of every member: q -> (g(q1),..,g(qn)).
Domain relabel_domain(const Domain &domain, const Relabeling &g);

/// Every distinct domain obtained by relabeling with p^-1 for a member p,
/// sorted. Each result contains the identity order.
std::vector<Domain> isomorphic_domains(const Domain &domain);

struct NormalForm
{
    Domain domain;
    /// relabel_domain(original, witness) == domain
    Relabeling witness;
};

/// The lexicographically smallest isomorph of `domain` and a relabeling that
/// produces it. Throws std::invalid_argument on an empty domain.
NormalForm normal_form(const Domain &domain);

/// normal_form(domain).domain
Domain isomorphic_hash(const Domain &domain);

/// Keeps the first domain of each isomorphism class, in input order.
std::vector<Domain> non_isomorphic_domains(const std::vector<Domain> &domains);

/// The rule of a triple carried along a relabeling: the image triple is g(T)
/// sorted and the rank of g(x) replaces the rank of x; the position stays.
NeverRule transform_rule(const KTuple &triple, NeverRule rule, const Relabeling &g);

/// Relabels every triple and rule of a full triple list; entries keep the
/// input's triple order.
ConstraintList transform_trs(const ConstraintList &constraints, const Relabeling &g);

/// Decides whether a (possibly partial) state is the smallest code list of
/// its orbit under relabeling, with triples compared in the order of a
/// reference triple list.
///
/// For partial states the comparison against a relabeled copy stops at the
/// first position where either side is unassigned. A state is rejected only
/// when some relabeling is certainly smaller on an all-assigned prefix, so
/// every completion of a rejected state is rejected too. When the candidate
/// rules are a strict subset of the nine, only relabelings that keep every
/// completion inside the candidate set count.
class MinimalityChecker
{
public:
    MinimalityChecker(const ConstraintList &reference, std::vector<NeverRule> candidate_rules);

    bool is_minimal(const State &state) const;

    int n() const noexcept { return n_; }

private:
    std::size_t index_of(Alternative a, Alternative b, Alternative c) const;
    bool closed_under(const State &state, std::span<const Alternative> g) const;

    int n_;
    std::vector<KTuple> triples_;
    std::vector<std::uint32_t> index_;
    unsigned candidate_mask_ = 0;
};

/// Minimality of a full triple list's rule assignment over all nine rules.
bool is_trs_lex_minimal(const ConstraintList &constraints);

/// Minimality within the orbit restricted to `candidate_rules`.
bool is_trs_lex_minimal(const ConstraintList &constraints,
                        const std::vector<NeverRule> &candidate_rules);

} // namespace cdl
