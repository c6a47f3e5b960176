#include <doctest.h>

#include <tuple>

#include "cdl/core.hpp"
#include "cdl/orderings.hpp"
#include "oracle.hpp"

using namespace cdl;

namespace {

std::vector<KTuple> tuples_of(const ConstraintList &c)
{
    std::vector<KTuple> out;
    for (const auto &e : c.entries())
        out.push_back(e.tuple);
    return out;
}

std::vector<KTuple> parse_triples(std::initializer_list<int> digits)
{
    std::vector<KTuple> out;
    for (int d : digits)
        out.push_back(KTuple{d / 100, d / 10 % 10, d % 10});
    return out;
}

} // namespace

TEST_SUITE("orderings")
{
    TEST_CASE("init_tuples examples")
    {
        const auto n4 = parse_triples({123, 124, 134, 234});
        for (auto o : {TupleOrdering::Lex, TupleOrdering::CoLex, TupleOrdering::RZ})
            CHECK(tuples_of(init_tuples(4, 3, o)) == n4);
        CHECK(tuples_of(init_tuples(5, 3, TupleOrdering::CoLex)) ==
              parse_triples({123, 124, 134, 234, 125, 135, 235, 145, 245, 345}));
        CHECK(tuples_of(init_tuples(5, 3, TupleOrdering::RZ)) ==
              parse_triples({123, 124, 134, 125, 135, 145, 234, 235, 245, 345}));
        CHECK_THROWS_AS(init_tuples(5, 4, TupleOrdering::RZ), std::invalid_argument);
        CHECK(init_tuples(3, 4, TupleOrdering::Lex).empty());
        CHECK(init_tuples(6, 4, TupleOrdering::Lex).size() == 15);
    }

    TEST_CASE("ordering names round-trip")
    {
        for (auto o : {TupleOrdering::Lex, TupleOrdering::CoLex, TupleOrdering::RZ})
            CHECK(parse_ordering(to_string(o)) == o);
        CHECK(parse_ordering("RZ") == TupleOrdering::RZ);
        CHECK_THROWS_AS(parse_ordering("revlex"), std::invalid_argument);
    }

    TEST_CASE("each ordering is a strict total order")
    {
        std::mt19937 rng(3);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 3 + trial % 8;
            const auto all = all_tuples(n, 3);
            std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
            const KTuple &a = all[pick(rng)], &b = all[pick(rng)], &c = all[pick(rng)];
            for (auto o : {TupleOrdering::Lex, TupleOrdering::CoLex, TupleOrdering::RZ}) {
                CHECK_FALSE(tuple_less(a, a, o));
                if (a != b)
                    CHECK(tuple_less(a, b, o) != tuple_less(b, a, o));
                if (tuple_less(a, b, o) && tuple_less(b, c, o))
                    CHECK(tuple_less(a, c, o));
            }
        }
    }

    TEST_CASE("orderings agree with sorting by key")
    {
        for (int n = 3; n <= 10; ++n) {
            auto key_sorted = [&](auto key) {
                auto t = all_tuples(n, 3);
                std::sort(t.begin(), t.end(),
                          [&](const KTuple &a, const KTuple &b) { return key(a) < key(b); });
                return t;
            };
            CHECK(tuples_of(init_trs(n, TupleOrdering::RZ)) ==
                  key_sorted([](const KTuple &t) { return std::tuple(t[0], t[2], t[1]); }));
            CHECK(tuples_of(init_trs(n, TupleOrdering::CoLex)) ==
                  key_sorted([](const KTuple &t) { return std::tuple(t[2], t[1], t[0]); }));
            CHECK(tuples_of(init_trs(n, TupleOrdering::Lex)) ==
                  key_sorted([](const KTuple &t) { return std::tuple(t[0], t[1], t[2]); }));
        }
    }

    TEST_CASE("CoLex lists extend each other")
    {
        for (int k = 3; k <= 4; ++k)
            for (int n = k; n < 10; ++n) {
                const auto a = tuples_of(init_tuples(n, k, TupleOrdering::CoLex));
                const auto b = tuples_of(init_tuples(n + 1, k, TupleOrdering::CoLex));
                REQUIRE(a.size() < b.size());
                CHECK(std::equal(a.begin(), a.end(), b.begin()));
            }
    }

    TEST_CASE("assign_rule examples")
    {
        auto c = assign_rule(init_trs(3), KTuple{1, 2, 3}, NeverRule(3, 1));
        CHECK(c[0].law == Law({Pattern{3, 1, 2}, Pattern{3, 2, 1}}));

        auto c4 = assign_rule(init_trs(4), KTuple{2, 3, 4}, NeverRule(2, 3));
        c4 = assign_rule(std::move(c4), KTuple{2, 3, 4}, NeverRule(3, 1));
        CHECK(c4[3].law == rule_to_patterns(NeverRule(3, 1)));
        CHECK(c4.assigned_count() == 1);

        CHECK_THROWS_AS(assign_rule(init_trs(4), KTuple{1, 2, 5}, NeverRule(1, 1)), NotFoundError);
    }

    TEST_CASE("assign_rule_by_index examples")
    {
        const auto base = init_trs(4, TupleOrdering::RZ);
        CHECK(assign_rule_by_index(base, 0, NeverRule(1, 1))[0].tuple == KTuple{1, 2, 3});
        const auto c = assign_rule_by_index(base, 3, NeverRule(1, 1));
        CHECK(c[3].tuple == KTuple{2, 3, 4});
        CHECK(c[3].law.has_value());
        CHECK_THROWS_AS(assign_rule_by_index(base, 4, NeverRule(1, 1)), NotFoundError);
    }

    TEST_CASE("assign_law on general tuples")
    {
        auto c = init_tuples(5, 4, TupleOrdering::Lex);
        c = assign_law(std::move(c), KTuple{1, 2, 4, 5}, Law{Pattern{2, 1, 4, 3}});
        CHECK(c.assigned_count() == 1);
        CHECK_THROWS(assign_law(c, KTuple{1, 2, 3, 4}, Law{Pattern{1, 2, 3}}));
    }

    TEST_CASE("init_by_scheme examples")
    {
        const auto all_1n1 =
            init_by_scheme(init_trs(4), RuleScheme([](const KTuple &) { return NeverRule(1, 1); }));
        for (const auto &e : all_1n1.entries())
            CHECK(e.law == rule_to_patterns(NeverRule(1, 1)));
        CHECK(build_domain(init_by_scheme(init_trs(8), RuleScheme(alternating_scheme))).size() == 222);
        CHECK(domain_size(init_by_scheme(init_trs(11), RuleScheme(alternating_scheme))) == 2324);

        const RuleScheme failing = [](const KTuple &t) -> NeverRule {
            if (t == KTuple{1, 2, 4})
                throw std::runtime_error("no rule");
            return NeverRule(1, 1);
        };
        try {
            init_by_scheme(init_trs(4), failing);
            FAIL("expected an exception");
        } catch (const std::invalid_argument &e) {
            CHECK(std::string(e.what()).find("{1,2,4}") != std::string::npos);
        }
        const LawScheme avoid = [](const KTuple &) { return Law{Pattern{2, 3, 1}}; };
        CHECK(domain_size(init_by_scheme(init_trs(4), avoid)) == 14);
    }

    TEST_CASE("alternating scheme examples")
    {
        CHECK(alternating_scheme(KTuple{2, 3, 4}) == NeverRule(2, 3));
        CHECK(alternating_scheme(KTuple{1, 2, 3}) == NeverRule(2, 1));
        CHECK(alternating_scheme(KTuple{3, 4, 5}) == NeverRule(2, 1));
        CHECK(alternating_scheme_flipped(KTuple{2, 3, 4}) == NeverRule(2, 1));
        CHECK(scheme_by_name("alternating")(KTuple{1, 3, 5}) == NeverRule(2, 3));
        CHECK_THROWS_AS(scheme_by_name("nope"), std::invalid_argument);
    }

    TEST_CASE("alternating scheme sizes")
    {
        const Count expected[] = {4, 9, 20, 45, 100, 222, 488, 1069, 2324};
        for (int n = 3; n <= 11; ++n)
            CHECK(domain_size(init_by_scheme(init_trs(n), RuleScheme(alternating_scheme))) ==
                  expected[n - 3]);
    }

    TEST_CASE("both parities give the same size")
    {
        for (int n = 3; n <= 9; ++n)
            CHECK(domain_size(init_by_scheme(init_trs(n), RuleScheme(alternating_scheme))) ==
                  domain_size(init_by_scheme(init_trs(n), RuleScheme(alternating_scheme_flipped))));
    }

    TEST_CASE("default candidate rules")
    {
        CHECK(default_candidate_rules() ==
              std::vector<NeverRule>{{1, 3}, {2, 1}, {2, 3}, {3, 1}});
    }

    TEST_CASE("dynamic_next_triple examples")
    {
        const auto one = dynamic_next_triple(init_trs(3), all_never_rules());
        CHECK(one.triple == KTuple{1, 2, 3});
        REQUIRE(one.table.size() == 1);
        CHECK(one.table[0].second == 4);

        const auto four = dynamic_next_triple(init_trs(4), all_never_rules());
        CHECK(four.triple == KTuple{1, 2, 3});
        REQUIRE(four.table.size() == 4);
        for (const auto &[index, worst] : four.table)
            CHECK(worst == four.table.front().second);

        auto full = init_by_scheme(init_trs(4), RuleScheme(alternating_scheme));
        CHECK_THROWS_AS(dynamic_next_triple(full, all_never_rules()), std::invalid_argument);
        CHECK_THROWS_AS(dynamic_next_triple(init_trs(4), {}), std::invalid_argument);
    }

    TEST_CASE("dynamic_next_triple is the argmin of the max")
    {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 4 + trial % 3;
            const auto c = oracle::random_trs(n, rng, 0.4);
            if (c.assigned_count() == c.size())
                continue;
            const auto rules = default_candidate_rules();
            const auto choice = dynamic_next_triple(c, rules, 1 + trial % 2);
            std::size_t best_index = c.size();
            std::uint64_t best = 0;
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i].law)
                    continue;
                std::uint64_t worst = 0;
                for (const auto &r : rules) {
                    auto trial_list = c;
                    trial_list.set_law(i, Law(std::vector<Pattern>(
                                              rule_to_patterns(r).forbidden())));
                    worst = std::max(worst, oracle::size(trial_list));
                }
                if (best_index == c.size() || worst < best) {
                    best = worst;
                    best_index = i;
                }
            }
            CHECK(choice.index == best_index);
            CHECK(choice.triple == c[best_index].tuple);
            Count table_min = choice.table.front().second;
            for (const auto &[i, worst] : choice.table)
                table_min = std::min(table_min, worst);
            CHECK(table_min == best);
        }
    }
}
