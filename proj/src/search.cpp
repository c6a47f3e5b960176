#include "cdl/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

#include "cdl/core.hpp"
#include "cdl/parallel.hpp"

namespace cdl {

double score_by_size(const SearchState &s)
{
    return static_cast<double>(s.size);
}

void SearchConfig::validate() const
{
    if (n < 3 || n > kMaxAlternatives)
        throw std::invalid_argument("search needs 3 <= n <= " + std::to_string(kMaxAlternatives));
    if (frontier_cap == 0)
        throw std::invalid_argument("frontier cap must be at least 1");
    if (candidate_rules.empty())
        throw std::invalid_argument("candidate rule set is empty");
    auto rules = candidate_rules;
    std::sort(rules.begin(), rules.end());
    if (std::adjacent_find(rules.begin(), rules.end()) != rules.end())
        throw std::invalid_argument("candidate rules repeat");
}

std::string SearchConfig::ordering_name() const
{
    return dynamic ? "dynamic" : std::string(to_string(ordering));
}

namespace {

void sort_hits(std::vector<SearchHit> &hits)
{
    std::sort(hits.begin(), hits.end(), [](const SearchHit &a, const SearchHit &b) {
        if (a.size != b.size)
            return a.size > b.size;
        return a.state < b.state;
    });
}

/// Parent domains up to this size are materialized to choose the next
/// triple; larger ones are counted per trial instead.
constexpr Count kTallyLimit = 1 << 20;

/// Generates the surviving children of a search state.
class Expander
{
public:
    Expander(const SearchConfig &config, const ScoreFunction &score, unsigned jobs)
      : config_(config), score_(score), jobs_(jobs),
        layout_(init_trs(config.n, config.ordering))
    {
        if (config.prune_non_minimal)
            checker_.emplace(layout_, config.candidate_rules);
        for (const auto &rule : config.candidate_rules) {
            laws_.push_back(rule_to_patterns(rule));
            std::vector<int> codes;
            for (const auto &p : laws_.back().forbidden()) {
                int at[4] = {};
                for (int i = 0; i < 3; ++i)
                    at[p[i]] = i;
                codes.push_back(relative_code(at[1], at[2], at[3]));
            }
            forbidden_codes_.push_back(std::move(codes));
        }
    }

    SearchState make(State state) const
    {
        SearchState s;
        s.assigned_count = state.assigned_count();
        s.size = domain_size(decode(state));
        s.state = std::move(state);
        s.score = score_(s);
        return s;
    }

    SearchState root() const
    {
        return make(State(std::vector<std::uint8_t>(layout_.size(), 0)));
    }

    ConstraintList decode(const State &state) const
    {
        ConstraintList trs = layout_;
        for (std::size_t i = 0; i < state.size(); ++i)
            if (state[i] != 0)
                trs.set_law(i, rule_to_patterns(NeverRule::from_code(state[i])));
        return trs;
    }

    /// First unassigned position in the static order.
    std::size_t next_index(const SearchState &s) const
    {
        const auto &codes = s.state.codes();
        return static_cast<std::size_t>(std::find(codes.begin(), codes.end(), 0) - codes.begin());
    }

    /// Children in candidate-rule order; rejected children are omitted.
    std::vector<SearchState> children(const SearchState &s) const
    {
        const ConstraintList parent = decode(s.state);
        const TrialCounter counter(parent);
        const auto &rules = config_.candidate_rules;
        std::vector<Count> known;
        std::size_t index = 0;
        if (!config_.dynamic)
            index = next_index(s);
        else if (s.size <= kTallyLimit)
            index = tallied_choice(parent, s.state, known);
        else
            index = dynamic_choice(s.state, counter, known);
        std::vector<std::optional<SearchState>> slots(rules.size());
        parallel_for(rules.size(), jobs_, [&](std::size_t r) {
            State child = s.state.with(index, static_cast<std::uint8_t>(rules[r].code()));
            if (checker_ && !checker_->is_minimal(child))
                return;
            SearchState c;
            c.size = known.empty() ? counter.count_with(layout_[index].tuple, laws_[r]) : known[r];
            if (c.size == 0 || (config_.target && c.size < *config_.target))
                return;
            c.assigned_count = s.assigned_count + 1;
            c.state = std::move(child);
            c.score = score_(c);
            slots[r] = std::move(c);
        });
        std::vector<SearchState> out;
        for (auto &slot : slots)
            if (slot)
                out.push_back(std::move(*slot));
        return out;
    }

    /// The dynamic choice (argmin over open triples of the largest child
    /// size, earliest on ties) by branch and bound: a triple is abandoned as
    /// soon as one of its children is at least as large as the best maximum
    /// so far. The winner's child sizes are exact and returned in `sizes`.
    std::size_t dynamic_choice(const State &state, const TrialCounter &counter,
                               std::vector<Count> &sizes) const
    {
        std::size_t best_index = layout_.size();
        Count best = std::numeric_limits<Count>::max();
        std::vector<Count> trial(laws_.size());
        for (std::size_t i = 0; i < layout_.size(); ++i) {
            if (state[i] != 0)
                continue;
            Count worst = 0;
            bool beaten = false;
            for (std::size_t r = 0; r < laws_.size() && !beaten; ++r) {
                trial[r] = counter.count_with(layout_[i].tuple, laws_[r], best);
                worst = std::max(worst, trial[r]);
                beaten = best_index != layout_.size() && trial[r] >= best;
            }
            if (!beaten) {
                best = worst;
                best_index = i;
                sizes = trial;
            }
        }
        if (best_index == layout_.size())
            throw std::invalid_argument("every triple is already assigned");
        return best_index;
    }

    /// The same choice computed from the parent domain itself: tallying the
    /// pattern each member realizes on every open triple gives every child
    /// size exactly.
    std::size_t tallied_choice(const ConstraintList &parent, const State &state,
                               std::vector<Count> &sizes) const
    {
        const Domain domain = build_domain(parent);
        std::vector<std::size_t> open;
        for (std::size_t i = 0; i < layout_.size(); ++i)
            if (state[i] == 0)
                open.push_back(i);
        if (open.empty())
            throw std::invalid_argument("every triple is already assigned");
        std::vector<std::array<Count, 8>> tally(open.size(), std::array<Count, 8>{});
        std::array<Alternative, kMaxAlternatives + 1> pos{};
        for (std::size_t m = 0; m < domain.size(); ++m) {
            auto order = domain[m];
            for (std::size_t j = 0; j < order.size(); ++j)
                pos[order[j]] = static_cast<Alternative>(j);
            for (std::size_t j = 0; j < open.size(); ++j) {
                const KTuple &t = layout_[open[j]].tuple;
                ++tally[j][relative_code(pos[t[0]], pos[t[1]], pos[t[2]])];
            }
        }
        std::size_t best_j = 0;
        Count best = 0;
        std::vector<Count> trial(laws_.size());
        for (std::size_t j = 0; j < open.size(); ++j) {
            Count worst = 0;
            for (std::size_t r = 0; r < laws_.size(); ++r) {
                trial[r] = domain.size();
                for (int code : forbidden_codes_[r])
                    trial[r] -= tally[j][code];
                worst = std::max(worst, trial[r]);
            }
            if (j == 0 || worst < best) {
                best = worst;
                best_j = j;
                sizes = trial;
            }
        }
        return open[best_j];
    }

    static int relative_code(int pa, int pb, int pc)
    {
        return (pa < pb) << 2 | (pa < pc) << 1 | (pb < pc);
    }

    bool complete(const SearchState &s) const { return s.assigned_count == layout_.size(); }

    bool hits_target(const SearchState &s) const
    {
        return config_.target && s.size >= *config_.target;
    }

private:
    const SearchConfig &config_;
    const ScoreFunction &score_;
    unsigned jobs_;
    ConstraintList layout_;
    std::vector<Law> laws_;
    std::vector<std::vector<int>> forbidden_codes_;
    std::optional<MinimalityChecker> checker_;
};

} // namespace

// ---------------------------------------------------------------------------
// Checkpoint files

void write_checkpoint(std::ostream &os, const Checkpoint &cp)
{
    os << "n=" << cp.n << " k=3 ordering=" << cp.ordering << " rules=";
    for (const auto &r : cp.rules)
        os << r.code();
    os << '\n';
    std::ostringstream line;
    for (const auto &[state, score] : cp.entries) {
        line.str("");
        line << std::setprecision(17) << score;
        os << state.to_string() << ' ' << line.str() << '\n';
    }
}

Checkpoint read_checkpoint(std::istream &is)
{
    Checkpoint cp;
    std::string header;
    if (!std::getline(is, header))
        throw std::runtime_error("checkpoint is empty");
    std::istringstream hs(header);
    std::string n_field, k_field, ordering_field, rules_field, extra;
    if (!(hs >> n_field >> k_field >> ordering_field >> rules_field) || (hs >> extra) ||
        n_field.rfind("n=", 0) != 0 || k_field != "k=3" ||
        ordering_field.rfind("ordering=", 0) != 0 || rules_field.rfind("rules=", 0) != 0)
        throw std::runtime_error("malformed checkpoint header: " + header);
    try {
        cp.n = std::stoi(n_field.substr(2));
        cp.ordering = ordering_field.substr(9);
        for (char c : rules_field.substr(6))
            cp.rules.push_back(NeverRule::from_code(c - '0'));
    } catch (const std::exception &e) {
        throw std::runtime_error("malformed checkpoint header: " + std::string(e.what()));
    }
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string digits, score_text;
        if (!(ls >> digits >> score_text) || (ls >> extra))
            throw std::runtime_error("checkpoint line " + std::to_string(lineno) + " malformed");
        try {
            std::size_t used = 0;
            double score = std::stod(score_text, &used);
            if (used != score_text.size())
                throw std::invalid_argument("trailing characters");
            cp.entries.emplace_back(State::parse(digits), score);
        } catch (const std::exception &e) {
            throw std::runtime_error("checkpoint line " + std::to_string(lineno) + ": " +
                                     e.what());
        }
    }
    return cp;
}

// ---------------------------------------------------------------------------
// Best-first search

struct BestFirstSearch::Impl
{
    struct Entry
    {
        std::uint64_t seq;
        SearchState state;
    };
    struct Before
    {
        bool operator()(const Entry &a, const Entry &b) const
        {
            if (a.state.score != b.state.score)
                return a.state.score > b.state.score;
            return a.seq < b.seq;
        }
    };

    SearchConfig config;
    ScoreFunction score;
    Expander expander;
    std::set<Entry, Before> frontier;
    std::vector<std::pair<SearchHit, double>> found;
    std::uint64_t next_seq = 0;
    bool truncated = false;
    bool reached_target = false;
    std::uint64_t expanded = 0;
    std::size_t peak = 0;

    Impl(SearchConfig c, ScoreFunction s)
      : config(std::move(c)), score(std::move(s)), expander(config, score, config.parallelism)
    {
    }

    void push(SearchState s)
    {
        frontier.insert(Entry{next_seq++, std::move(s)});
        while (frontier.size() > config.frontier_cap) {
            frontier.erase(std::prev(frontier.end()));
            truncated = true;
        }
        peak = std::max(peak, frontier.size());
    }

    void record(const SearchState &s)
    {
        found.push_back({SearchHit{s.state, s.size}, s.score});
        if (expander.hits_target(s))
            reached_target = true;
    }
};

BestFirstSearch::BestFirstSearch(SearchConfig config, ScoreFunction score)
{
    config.validate();
    if (!score)
        throw std::invalid_argument("score function is empty");
    impl_ = std::make_unique<Impl>(std::move(config), std::move(score));
    impl_->push(impl_->expander.root());
}

BestFirstSearch::~BestFirstSearch() = default;

void BestFirstSearch::resume(const Checkpoint &cp)
{
    auto &im = *impl_;
    if (cp.n != im.config.n || cp.ordering != im.config.ordering_name() ||
        cp.rules != im.config.candidate_rules)
        throw std::invalid_argument("checkpoint was written for a different configuration");
    im.frontier.clear();
    im.found.clear();
    im.next_seq = 0;
    im.reached_target = false;
    const std::size_t triples = binomial(im.config.n, 3);
    for (const auto &[state, score] : cp.entries) {
        if (state.size() != triples)
            throw std::invalid_argument("checkpoint state has the wrong length");
        SearchState s;
        s.assigned_count = state.assigned_count();
        s.size = domain_size(im.expander.decode(state));
        s.state = state;
        s.score = score;
        if (im.expander.complete(s))
            im.record(s);
        else
            im.push(std::move(s));
    }
}

bool BestFirstSearch::finished() const
{
    return impl_->reached_target || impl_->frontier.empty();
}

bool BestFirstSearch::step()
{
    auto &im = *impl_;
    if (finished())
        return false;
    auto node = im.frontier.extract(im.frontier.begin());
    ++im.expanded;
    for (auto &child : im.expander.children(node.value().state)) {
        if (im.expander.complete(child)) {
            im.record(child);
            if (im.reached_target)
                break;
        } else {
            im.push(std::move(child));
        }
    }
    return !finished();
}

bool BestFirstSearch::run(std::uint64_t max_expansions)
{
    for (std::uint64_t i = 0; i < max_expansions && !finished(); ++i)
        step();
    return finished();
}

Checkpoint BestFirstSearch::checkpoint() const
{
    const auto &im = *impl_;
    Checkpoint cp;
    cp.n = im.config.n;
    cp.ordering = im.config.ordering_name();
    cp.rules = im.config.candidate_rules;
    for (const auto &e : im.frontier)
        cp.entries.emplace_back(e.state.state, e.state.score);
    for (const auto &[hit, score] : im.found)
        cp.entries.emplace_back(hit.state, score);
    return cp;
}

SearchResult BestFirstSearch::result() const
{
    const auto &im = *impl_;
    SearchResult r;
    for (const auto &entry : im.found)
        r.hits.push_back(entry.first);
    sort_hits(r.hits);
    r.truncated = im.truncated;
    r.reached_target = im.reached_target;
    r.expanded = im.expanded;
    r.peak_tracked = im.peak;
    return r;
}

SearchResult prs_search(const SearchConfig &config, const ScoreFunction &score)
{
    BestFirstSearch search(config, score);
    search.run();
    return search.result();
}

// ---------------------------------------------------------------------------
// Depth-first search

namespace {

struct DfsContext
{
    const Expander &expander;
    std::atomic<bool> &stop;
    std::vector<SearchHit> hits;
    std::uint64_t expanded = 0;
    std::size_t tracked = 0;
    std::size_t peak = 0;
    bool reached_target = false;
};

void depth_first(const SearchState &s, DfsContext &ctx)
{
    if (ctx.stop.load(std::memory_order_relaxed))
        return;
    auto kids = ctx.expander.children(s);
    ++ctx.expanded;
    std::stable_sort(kids.begin(), kids.end(),
                     [](const auto &a, const auto &b) { return a.score > b.score; });
    ctx.tracked += kids.size();
    ctx.peak = std::max(ctx.peak, ctx.tracked);
    std::size_t pending = kids.size();
    for (const auto &kid : kids) {
        --pending;
        --ctx.tracked;
        if (ctx.stop.load(std::memory_order_relaxed))
            break;
        if (ctx.expander.complete(kid)) {
            ctx.hits.push_back({kid.state, kid.size});
            if (ctx.expander.hits_target(kid)) {
                ctx.reached_target = true;
                ctx.stop = true;
            }
        } else {
            depth_first(kid, ctx);
        }
    }
    ctx.tracked -= pending;
}

} // namespace

SearchResult dfs_search(const SearchConfig &config, const ScoreFunction &score)
{
    config.validate();
    if (!score)
        throw std::invalid_argument("score function is empty");
    std::atomic<bool> stop{false};
    SearchResult result;

    if (config.parallelism <= 1) {
        Expander expander(config, score, 1);
        DfsContext ctx{expander, stop, {}, 0, 0, 0, false};
        depth_first(expander.root(), ctx);
        result.hits = std::move(ctx.hits);
        result.expanded = ctx.expanded;
        result.peak_tracked = ctx.peak;
        result.reached_target = ctx.reached_target;
        sort_hits(result.hits);
        return result;
    }

    // Split the tree breadth first, then search the subtrees concurrently.
    Expander splitter(config, score, 1);
    std::vector<SearchState> level{splitter.root()};
    const std::size_t wanted = std::size_t(config.parallelism) * 4;
    while (!level.empty() && level.size() < wanted && !result.reached_target) {
        std::vector<SearchState> next;
        for (const auto &s : level) {
            ++result.expanded;
            for (auto &kid : splitter.children(s)) {
                if (splitter.complete(kid)) {
                    result.hits.push_back({kid.state, kid.size});
                    result.reached_target |= splitter.hits_target(kid);
                } else {
                    next.push_back(std::move(kid));
                }
            }
        }
        level = std::move(next);
    }
    if (!result.reached_target) {
        std::stable_sort(level.begin(), level.end(),
                         [](const auto &a, const auto &b) { return a.score > b.score; });
        std::vector<DfsContext> contexts;
        contexts.reserve(level.size());
        for (std::size_t i = 0; i < level.size(); ++i)
            contexts.push_back(DfsContext{splitter, stop, {}, 0, 0, 0, false});
        parallel_for(level.size(), config.parallelism,
                     [&](std::size_t i) { depth_first(level[i], contexts[i]); });
        std::size_t deepest = 0;
        for (auto &ctx : contexts) {
            result.hits.insert(result.hits.end(), ctx.hits.begin(), ctx.hits.end());
            result.expanded += ctx.expanded;
            result.reached_target |= ctx.reached_target;
            deepest = std::max(deepest, ctx.peak);
        }
        result.peak_tracked = level.size() + deepest;
    }
    sort_hits(result.hits);
    return result;
}

std::vector<SearchHit> exhaustive_non_isomorphic(int n, const std::vector<NeverRule> &candidate_rules,
                                                 bool allow_large)
{
    SearchConfig config;
    config.n = n;
    config.candidate_rules = candidate_rules;
    config.prune_non_minimal = true;
    config.validate();
    const double bits =
        static_cast<double>(binomial(n, 3)) * std::log2(static_cast<double>(candidate_rules.size()));
    if (bits > 32.0 && !allow_large)
        throw std::invalid_argument("state space of 2^" + std::to_string(bits) +
                                    " assignments is too large; pass allow_large to insist");
    return dfs_search(config, score_by_size).hits;
}

} // namespace cdl
