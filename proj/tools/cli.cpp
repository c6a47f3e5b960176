#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cdl/core.hpp"
#include "cdl/io.hpp"
#include "cdl/iso.hpp"
#include "cdl/orderings.hpp"
#include "cdl/search.hpp"
#include "cdl/subsets.hpp"

#ifndef CDL_DATA_DIR
#define CDL_DATA_DIR "data"
#endif

namespace cdl::cli {

namespace {

/// Raised for bad argument values that CLI11 cannot catch by itself.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct VerificationFailure : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Where the constraints of build/size/subsets come from.
struct Source
{
    int n = 0;
    std::string scheme;
    std::string trs_path;
    std::string tls_path;
    std::string pattern;
    std::string ordering = "rz";

    void add_options(CLI::App &cmd)
    {
        cmd.add_option("-n", n, "number of alternatives")->required()->check(
            CLI::Range(1, kMaxAlternatives));
        auto *scheme_opt = cmd.add_option("--scheme", scheme,
                                          "built-in scheme: alternating, alternating-flipped");
        auto *trs_opt = cmd.add_option("--trs", trs_path, "triple-rule file");
        auto *tls_opt = cmd.add_option("--tls", tls_path, "tuple-law file");
        auto *pattern_opt =
            cmd.add_option("--pattern", pattern, "avoid this pattern on every k-tuple, e.g. 2-5-3-1-4");
        scheme_opt->excludes(trs_opt, tls_opt, pattern_opt);
        trs_opt->excludes(tls_opt, pattern_opt);
        tls_opt->excludes(pattern_opt);
        cmd.add_option("--ordering", ordering, "triple order for --scheme: rz, lex, colex")
            ->capture_default_str();
    }

    ConstraintList load() const
    {
        if (!scheme.empty()) {
            if (n < 3)
                throw UsageError("--scheme needs n >= 3");
            return init_by_scheme(init_trs(n, parse_ordering(ordering)), scheme_by_name(scheme));
        }
        if (!pattern.empty())
            return pattern_avoidance_constraints(n, io::parse_pattern(pattern));
        if (!trs_path.empty()) {
            std::istringstream in(io::read_file(trs_path));
            return io::read_trs(in, n);
        }
        if (!tls_path.empty()) {
            std::istringstream in(io::read_file(tls_path));
            return io::read_tls(in, n);
        }
        throw UsageError("one of --scheme, --trs, --tls or --pattern is required");
    }
};

void emit(const std::string &path, const std::string &text, std::ostream &out)
{
    if (path.empty() || path == "-")
        out << text;
    else
        io::write_file(path, text);
}

std::vector<NeverRule> parse_rules(const std::string &text)
{
    std::vector<NeverRule> rules;
    std::istringstream is(text);
    for (std::string part; std::getline(is, part, ',');)
        rules.push_back(NeverRule::parse(part));
    return rules;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Build, count, normalize and search domains of linear orders"};
    app.name("cdl");
    app.require_subcommand(1);

    // build
    Source build_src;
    std::string build_out;
    auto *build = app.add_subcommand("build", "construct a domain and report its size");
    build_src.add_options(*build);
    build->add_option("-o,--out", build_out, "write the domain file here");

    // size
    Source size_src;
    unsigned size_jobs = 1;
    auto *size = app.add_subcommand("size", "count a domain without building it");
    size_src.add_options(*size);
    size->add_option("-j,--jobs", size_jobs, "worker threads")->check(CLI::Range(1u, 1024u));

    // hash
    std::string hash_in, hash_out;
    auto *hash = app.add_subcommand("hash", "normal form of a domain file");
    hash->add_option("domain", hash_in, "domain file")->required();
    hash->add_option("-o,--out", hash_out, "output file (default stdout)");

    // subsets
    Source sub_src;
    int sub_t = 0;
    auto *subsets = app.add_subcommand("subsets", "states of the restrictions to t-subsets");
    sub_src.add_options(*subsets);
    subsets->add_option("-t,--sub-n", sub_t, "subset size")->required();

    // search
    SearchConfig cfg;
    std::string rules_text = "1N3,2N1,2N3,3N1";
    std::string search_ordering = "rz";
    std::string score_name = "size";
    std::string results_out, checkpoint_path, resume_path;
    std::uint64_t stop_after = 0;
    std::size_t cap = 0;
    Count target = 0;
    bool use_dfs = false;
    auto *search = app.add_subcommand("search", "search rule assignments for large domains");
    search->add_option("-n", cfg.n, "number of alternatives")->required()->check(
        CLI::Range(3, kMaxAlternatives));
    search->add_option("--rules", rules_text, "candidate rules")->capture_default_str();
    search->add_option("--ordering", search_ordering, "rz, lex, colex or dynamic")
        ->capture_default_str();
    search->add_option("--frontier-cap", cap, "best-first frontier limit (0 = none)");
    search->add_flag("--prune-iso", cfg.prune_non_minimal,
                     "drop assignments that are not lexicographically minimal");
    search->add_option("--target", target, "stop at the first domain this large");
    search->add_option("-j,--jobs", cfg.parallelism, "worker threads")
        ->check(CLI::Range(1u, 1024u));
    search->add_flag("--dfs", use_dfs, "depth-first instead of best-first");
    search->add_option("--score", score_name, "size or constant")->capture_default_str();
    search->add_option("--checkpoint", checkpoint_path, "write a checkpoint here");
    search->add_option("--stop-after", stop_after,
                       "expansions before writing --checkpoint and exiting");
    search->add_option("--resume", resume_path, "continue from a checkpoint");
    search->add_option("-o,--out", results_out, "results file (default stdout)");

    // verify
    std::string suite;
    int max_n = 0;
    std::string data_dir = CDL_DATA_DIR;
    auto *verify = app.add_subcommand("verify", "regression suites: catalan, length4, table1, all");
    verify->add_option("suite", suite, "suite name")
        ->required()
        ->check(CLI::IsMember({"catalan", "length4", "table1", "all"}));
    verify->add_option("--max-n", max_n, "largest n to check")->check(CLI::Range(1, 12));
    verify->add_option("--data-dir", data_dir, "fixture directory")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*build) {
            const Domain domain = build_domain(build_src.load());
            if (!build_out.empty()) {
                std::ostringstream text;
                io::write_domain(text, domain);
                io::write_file(build_out, text.str());
            }
            out << "size=" << domain.size() << '\n';
        } else if (*size) {
            const Count count = domain_size(size_src.load(), size_jobs);
            out << "size=" << count << '\n';
        } else if (*hash) {
            std::istringstream in(io::read_file(hash_in));
            const Domain domain = io::read_domain(in);
            if (domain.empty())
                throw io::FormatError("cannot hash an empty domain");
            std::ostringstream text;
            io::write_domain(text, isomorphic_hash(domain));
            emit(hash_out, text.str(), out);
        } else if (*subsets) {
            for (const State &s : subset_states_any_ordering(sub_src.load(), sub_t))
                out << s.to_string() << '\n';
        } else if (*search) {
            cfg.candidate_rules = parse_rules(rules_text);
            if (search_ordering == "dynamic") {
                cfg.dynamic = true;
                cfg.ordering = TupleOrdering::RZ;
            } else {
                cfg.ordering = parse_ordering(search_ordering);
            }
            if (cap > 0)
                cfg.frontier_cap = cap;
            if (target > 0)
                cfg.target = target;
            ScoreFunction score;
            if (score_name == "size")
                score = score_by_size;
            else if (score_name == "constant")
                score = [](const SearchState &) { return 0.0; };
            else
                throw UsageError("unknown score '" + score_name + "'");

            SearchResult result;
            if (use_dfs) {
                if (!resume_path.empty() || !checkpoint_path.empty())
                    throw UsageError("checkpoints apply to best-first search only");
                result = dfs_search(cfg, score);
            } else {
                BestFirstSearch engine(cfg, score);
                if (!resume_path.empty()) {
                    std::istringstream in(io::read_file(resume_path));
                    engine.resume(read_checkpoint(in));
                }
                if (!checkpoint_path.empty()) {
                    if (stop_after == 0)
                        throw UsageError("--checkpoint needs --stop-after");
                    engine.run(stop_after);
                    std::ostringstream text;
                    write_checkpoint(text, engine.checkpoint());
                    io::write_file(checkpoint_path, text.str());
                    err << "checkpoint written after " << engine.result().expanded
                        << " expansions\n";
                    if (!engine.finished())
                        return kSuccess;
                } else {
                    engine.run();
                }
                result = engine.result();
            }
            std::ostringstream text;
            io::write_results(text, result.hits);
            emit(results_out, text.str(), out);
            err << "best=" << result.best_size() << " found=" << result.hits.size()
                << " expanded=" << result.expanded << " truncated=" << result.truncated
                << " reached_target=" << result.reached_target << '\n';
        } else if (*verify) {
            bool ok = true;
            if (suite == "catalan" || suite == "all")
                ok &= verify_catalan(max_n ? max_n : 6, data_dir, out);
            if (suite == "length4" || suite == "all")
                ok &= verify_length4(max_n ? max_n : 8, data_dir, out);
            if (suite == "table1" || suite == "all")
                ok &= verify_table1(out);
            out << (ok ? "PASS" : "FAIL") << '\n';
            if (!ok)
                throw VerificationFailure("verification failed");
        }
    } catch (const VerificationFailure &e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailure;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kSuccess;
}

} // namespace cdl::cli
