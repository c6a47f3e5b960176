#include <doctest.h>

#include <map>

#include "cdl/core.hpp"
#include "cdl/iso.hpp"
#include "oracle.hpp"

using namespace cdl;

namespace {

std::vector<int> codes_of(const State &s)
{
    return std::vector<int>(s.codes().begin(), s.codes().end());
}

std::set<int> codes_of(const std::vector<NeverRule> &rules)
{
    std::set<int> out;
    for (const auto &r : rules)
        out.insert(r.code());
    return out;
}

} // namespace

TEST_SUITE("iso")
{
    TEST_CASE("relabel_domain examples")
    {
        std::mt19937 rng(61);
        const Domain d = oracle::random_domain(5, rng);
        CHECK(relabel_domain(d, Relabeling::identity(5)) == d);
        const Domain two(3, {{1, 2, 3}, {2, 1, 3}});
        CHECK(relabel_domain(two, Relabeling{2, 1, 3}) == two);
        for (int trial = 0; trial < 20; ++trial) {
            const auto g = oracle::random_relabeling(5, rng);
            CHECK(relabel_domain(relabel_domain(d, g), g.inverse()) == d);
            CHECK(oracle::to_seqs(relabel_domain(d, g)) ==
                  oracle::relabel(oracle::to_seqs(d), oracle::to_seq(g)));
        }
        CHECK_THROWS_AS(relabel_domain(d, Relabeling::identity(4)), std::invalid_argument);
    }

    TEST_CASE("isomorphic_domains examples")
    {
        const Domain single(3, {{1, 2, 3}});
        CHECK(isomorphic_domains(single) == std::vector<Domain>{single});
        const Domain d(3, {{1, 3, 2}, {2, 1, 3}});
        CHECK(isomorphic_domains(d) ==
              std::vector<Domain>{Domain(3, {{1, 2, 3}, {2, 3, 1}}), Domain(3, {{1, 2, 3}, {3, 1, 2}})});
        std::mt19937 rng(67);
        for (int trial = 0; trial < 10; ++trial) {
            const Domain r = oracle::random_domain(4, rng);
            const auto iso = isomorphic_domains(r);
            CHECK(iso.size() <= r.size());
            for (const auto &x : iso)
                CHECK(x.contains(LinearOrder::identity(4)));
        }
        CHECK_THROWS_AS(isomorphic_domains(Domain(3)), std::invalid_argument);
    }

    TEST_CASE("isomorphic_hash examples")
    {
        CHECK(isomorphic_hash(Domain(3, {{2, 1, 3}})) == Domain(3, {{1, 2, 3}}));
        CHECK(isomorphic_hash(Domain(3, {{1, 3, 2}, {2, 1, 3}})) == Domain(3, {{1, 2, 3}, {2, 3, 1}}));
        CHECK_THROWS_AS(isomorphic_hash(Domain(3)), std::invalid_argument);
    }

    TEST_CASE("hash equals the brute-force minimum and is relabel invariant")
    {
        std::mt19937 rng(71);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = 3 + trial % 3;
            const Domain d = oracle::random_domain(n, rng);
            const Domain h = isomorphic_hash(d);
            CHECK(oracle::to_seqs(h) == oracle::min_relabeling(oracle::to_seqs(d), n));
            CHECK(isomorphic_hash(h) == h);
            CHECK(isomorphic_hash(relabel_domain(d, oracle::random_relabeling(n, rng))) == h);
            const NormalForm nf = normal_form(d);
            CHECK(nf.domain == h);
            CHECK(relabel_domain(d, nf.witness) == h);
        }
        // n = 6 invariance on structured domains.
        const Domain alt = build_domain(init_by_scheme(init_trs(6), RuleScheme(alternating_scheme)));
        for (int trial = 0; trial < 5; ++trial)
            CHECK(isomorphic_hash(relabel_domain(alt, oracle::random_relabeling(6, rng))) ==
                  isomorphic_hash(alt));
    }

    TEST_CASE("equal hashes exactly when isomorphic")
    {
        std::mt19937 rng(73);
        std::vector<Domain> pool;
        for (int trial = 0; trial < 12; ++trial) {
            const Domain d = oracle::random_domain(4, rng, 0.15);
            pool.push_back(d);
            pool.push_back(relabel_domain(d, oracle::random_relabeling(4, rng)));
        }
        for (const auto &a : pool)
            for (const auto &b : pool)
                CHECK((isomorphic_hash(a) == isomorphic_hash(b)) ==
                      oracle::isomorphic(oracle::to_seqs(a), oracle::to_seqs(b), 4));
    }

    TEST_CASE("non_isomorphic_domains keeps the first of each class")
    {
        std::mt19937 rng(79);
        const Domain d = oracle::random_domain(4, rng);
        CHECK(non_isomorphic_domains({d}) == std::vector<Domain>{d});
        CHECK(non_isomorphic_domains({d, relabel_domain(d, oracle::random_relabeling(4, rng))}) ==
              std::vector<Domain>{d});
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Domain> list;
            for (int i = 0; i < 8; ++i) {
                const Domain base = oracle::random_domain(3 + trial % 3, rng, 0.1);
                list.push_back(base);
                if (i % 2)
                    list.push_back(relabel_domain(base, oracle::random_relabeling(base.n(), rng)));
            }
            std::vector<Domain> expected, seen;
            for (const auto &x : list) {
                const Domain h = isomorphic_hash(x);
                if (std::find(seen.begin(), seen.end(), h) == seen.end()) {
                    seen.push_back(h);
                    expected.push_back(x);
                }
            }
            CHECK(non_isomorphic_domains(list) == expected);
        }
    }

    TEST_CASE("transform_rule examples")
    {
        CHECK(transform_rule(KTuple{1, 2, 3}, NeverRule(3, 1), Relabeling{3, 2, 1}) == NeverRule(1, 1));
        CHECK(transform_rule(KTuple{1, 2, 4}, NeverRule(2, 3), Relabeling{1, 3, 4, 2}) ==
              NeverRule(3, 3));
        const auto c = assign_rule(init_trs(3), KTuple{1, 2, 3}, NeverRule(3, 1));
        CHECK(transform_trs(c, Relabeling::identity(3)) == c);
        CHECK(transform_trs(c, Relabeling{3, 2, 1}) ==
              assign_rule(init_trs(3), KTuple{1, 2, 3}, NeverRule(1, 1)));
    }

    TEST_CASE("transform_rule agrees with the pattern oracle")
    {
        for (const auto &g : oracle::all_perms(4)) {
            const Relabeling rg(std::vector<Alternative>(g.begin(), g.end()));
            for (const auto &t : all_tuples(4, 3))
                for (const auto &rule : all_never_rules()) {
                    std::vector<int> image;
                    const int expected =
                        oracle::carried_code({t[0], t[1], t[2]}, rule.code(), g, image);
                    CHECK(transform_rule(t, rule, rg).code() == expected);
                }
        }
    }

    TEST_CASE("transform_trs respects domains")
    {
        std::mt19937 rng(83);
        for (int trial = 0; trial < 30; ++trial) {
            const int n = 3 + trial % 4;
            const auto c = oracle::random_trs(n, rng, 0.6);
            const auto g = oracle::random_relabeling(n, rng);
            const auto t = transform_trs(c, g);
            for (std::size_t i = 0; i < c.size(); ++i)
                CHECK(t[i].tuple == c[i].tuple);
            CHECK(build_domain(t) == relabel_domain(build_domain(c), g));
        }
    }

    TEST_CASE("is_trs_lex_minimal examples")
    {
        CHECK(is_trs_lex_minimal(assign_rule(init_trs(3), KTuple{1, 2, 3}, NeverRule(1, 1))));
        CHECK_FALSE(is_trs_lex_minimal(assign_rule(init_trs(3), KTuple{1, 2, 3}, NeverRule(3, 1))));
        CHECK(is_trs_lex_minimal(init_trs(5)));
    }

    TEST_CASE("is_trs_lex_minimal agrees with brute force on full lists")
    {
        const auto all = all_never_rules();
        const auto defaults = default_candidate_rules();
        std::mt19937 rng(89);
        for (int n = 3; n <= 5; ++n) {
            const auto ref = init_trs(n);
            const auto triples = oracle::triples_of(ref);
            for (int trial = 0; trial < 40; ++trial) {
                const auto c = oracle::random_trs(n, rng, 1.0);
                const State s = trs_to_state(c);
                CHECK(is_trs_lex_minimal(c) ==
                      oracle::lex_minimal(triples, codes_of(s), n, codes_of(all)));
            }
            for (int trial = 0; trial < 40; ++trial) {
                std::vector<std::uint8_t> codes(ref.size());
                for (auto &x : codes)
                    x = static_cast<std::uint8_t>(
                        defaults[std::uniform_int_distribution<std::size_t>(0, 3)(rng)].code());
                const auto c = state_to_trs(State(codes), n, TupleOrdering::RZ);
                CHECK(is_trs_lex_minimal(c, defaults) ==
                      oracle::lex_minimal(triples, codes_of(State(codes)), n, codes_of(defaults)));
            }
        }
    }

    TEST_CASE("exactly one minimal member per orbit")
    {
        for (const auto &rules : {all_never_rules(), default_candidate_rules()}) {
            const int n = rules.size() == 9 ? 3 : 4;
            const auto ref = init_trs(n);
            const auto triples = oracle::triples_of(ref);
            const auto allowed = codes_of(rules);
            std::map<std::vector<int>, int> minimal_per_orbit;
            for (const State &s : oracle::all_states(ref.size(), rules)) {
                std::vector<int> orbit_min = codes_of(s);
                for (const auto &g : oracle::all_perms(n)) {
                    auto r = oracle::relabeled_codes(triples, codes_of(s), g, allowed);
                    if (!r.empty())
                        orbit_min = std::min(orbit_min, r);
                }
                const bool minimal = is_trs_lex_minimal(state_to_trs(s, n, TupleOrdering::RZ), rules);
                minimal_per_orbit[orbit_min] += minimal;
                CHECK(minimal == (orbit_min == codes_of(s)));
            }
            for (const auto &[orbit, count] : minimal_per_orbit)
                CHECK(count == 1);
        }
    }

    TEST_CASE("a rejected partial state has no minimal completion")
    {
        for (const auto &rules : {all_never_rules(), default_candidate_rules()}) {
            const int n = 4;
            const auto ref = init_trs(n);
            const MinimalityChecker checker(ref, rules);
            const auto triples = oracle::triples_of(ref);
            const auto allowed = codes_of(rules);
            const auto full = oracle::all_states(ref.size(), rules);
            std::set<std::vector<int>> minimal;
            for (const State &s : full)
                if (oracle::lex_minimal(triples, codes_of(s), n, allowed))
                    minimal.insert(codes_of(s));
            // Partial states: every mask of assigned positions over every full state.
            for (const State &s : full) {
                for (unsigned mask = 0; mask < (1u << ref.size()); ++mask) {
                    std::vector<std::uint8_t> codes = s.codes();
                    for (std::size_t i = 0; i < codes.size(); ++i)
                        if (!(mask >> i & 1u))
                            codes[i] = 0;
                    const State partial(codes);
                    if (checker.is_minimal(partial))
                        continue;
                    // Rejected: the full state it came from must not be minimal.
                    CHECK_FALSE(minimal.count(codes_of(s)));
                }
                CHECK(checker.is_minimal(s) == bool(minimal.count(codes_of(s))));
            }
        }
    }
}
