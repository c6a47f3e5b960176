// search.hpp -- searching rule assignments for large Condorcet domains

#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "cdl/iso.hpp"
#include "cdl/orderings.hpp"
#include "cdl/subsets.hpp"

namespace cdl {

/// A (partial) rule assignment with the size of its domain, where
/// unassigned triples constrain nothing.
struct SearchState
{
    State state;
    std::size_t assigned_count = 0;
    Count size = 0;
    double score = 0.0;
};

/// Higher scores are expanded first. Must be pure; may be called from
/// several threads at once.
using ScoreFunction = std::function<double(const SearchState &)>;

/// score = size
double score_by_size(const SearchState &s);

struct SearchConfig
{
    int n = 0;
    /// Layout of states, and the assignment order unless `dynamic`.
    TupleOrdering ordering = TupleOrdering::RZ;
    /// Choose the next triple with dynamic_next_triple instead.
    bool dynamic = false;
    std::vector<NeverRule> candidate_rules = default_candidate_rules();
    std::size_t frontier_cap = std::numeric_limits<std::size_t>::max();
    bool prune_non_minimal = false;
    /// Stop once a complete state of at least this size is found. Subtrees
    /// whose size is already below it are dropped (sizes only shrink).
    std::optional<Count> target;
    unsigned parallelism = 1;

    /// Throws std::invalid_argument when n < 3, frontier_cap == 0, or the
    /// candidate rules are empty or repeat.
    void validate() const;

    /// "rz", "lex", "colex", or "dynamic".
    std::string ordering_name() const;
};

struct SearchHit
{
    State state;
    Count size;

    friend bool operator==(const SearchHit &, const SearchHit &) = default;
};

struct SearchResult
{
    /// Complete states, size descending then state ascending.
    std::vector<SearchHit> hits;
    /// Frontier states were evicted; the result is not exhaustive.
    bool truncated = false;
    bool reached_target = false;
    std::uint64_t expanded = 0;
    /// Most states held at once (frontier for best-first, pending children on
    /// the stack for depth-first).
    std::size_t peak_tracked = 0;

    Count best_size() const { return hits.empty() ? 0 : hits.front().size; }
};

/// Frontier snapshot of a best-first run. Entries hold both pending partial
/// states (in pop order) and the complete states already found.
struct Checkpoint
{
    int n = 0;
    std::string ordering;
    std::vector<NeverRule> rules;
    std::vector<std::pair<State, double>> entries;
};

void write_checkpoint(std::ostream &os, const Checkpoint &cp);
/// Throws std::runtime_error on malformed input.
Checkpoint read_checkpoint(std::istream &is);

/// Best-first search over rule assignments: the highest-scoring frontier
/// state (earliest pushed on ties) is expanded by assigning each candidate
/// rule to its next triple. Children with an empty domain, below the
/// target, or (optionally) not lexicographically minimal are dropped.
/// When the frontier exceeds its cap the lowest-scoring states are evicted
/// and the result is marked truncated.
class BestFirstSearch
{
public:
    BestFirstSearch(SearchConfig config, ScoreFunction score);
    ~BestFirstSearch();

    /// Replaces the frontier and found states with a checkpoint's. Throws
    /// std::invalid_argument when the checkpoint was made under a different
    /// n, ordering, or rule list.
    void resume(const Checkpoint &cp);

    /// Expands one state. Returns false once the search is finished.
    bool step();

    /// Steps until finished or `max_expansions` more states were expanded.
    /// Returns true when finished.
    bool run(std::uint64_t max_expansions = std::numeric_limits<std::uint64_t>::max());

    bool finished() const;
    Checkpoint checkpoint() const;
    SearchResult result() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Runs BestFirstSearch to completion.
SearchResult prs_search(const SearchConfig &config, const ScoreFunction &score);

/// Depth-first variant: the score only orders siblings; memory is bounded by
/// depth times branching. Exhaustive runs find the same states as an
/// uncapped best-first run.
SearchResult dfs_search(const SearchConfig &config, const ScoreFunction &score);

/// Every complete, lexicographically minimal assignment over
/// `candidate_rules` with its domain size. Refuses inputs whose raw state
/// space exceeds 2^32 unless `allow_large` is set.
std::vector<SearchHit> exhaustive_non_isomorphic(int n, const std::vector<NeverRule> &candidate_rules,
                                                 bool allow_large = false);

} // namespace cdl
