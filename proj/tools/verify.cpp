#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "cdl/core.hpp"
#include "cdl/orderings.hpp"
#include "cli.hpp"

namespace cdl::cli {

namespace {

/// Reads an OEIS b-file fragment ("n a(n)" per line, '#' comments).
std::map<int, Count> read_bfile(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("missing fixture '" + path + "'");
    std::map<int, Count> terms;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        int n;
        Count value;
        if (!(ls >> n >> value))
            throw std::runtime_error("malformed fixture line in '" + path + "': " + line);
        terms[n] = value;
    }
    return terms;
}

/// Orders of length n whose restriction to every k-subset avoids `pattern`,
/// counted by filtering all n! orders.
Count brute_force_avoiders(int n, const Pattern &pattern)
{
    const ConstraintList constraints = pattern_avoidance_constraints(n, pattern);
    std::vector<Alternative> seq(n);
    for (int i = 0; i < n; ++i)
        seq[i] = static_cast<Alternative>(i + 1);
    Count count = 0;
    do {
        if (satisfies(LinearOrder(seq), constraints))
            ++count;
    } while (std::next_permutation(seq.begin(), seq.end()));
    return count;
}

bool check(std::ostream &out, const std::string &label, int n, Count expected, Count got)
{
    const bool ok = expected == got;
    out << label << " n=" << n << " expected=" << expected << " got=" << got << ' '
        << (ok ? "ok" : "MISMATCH") << '\n';
    return ok;
}

constexpr int kBruteForceLimit = 8;

} // namespace

bool verify_catalan(int max_n, const std::string &data_dir, std::ostream &out)
{
    const auto catalan = read_bfile(data_dir + "/oeis/A000108.txt");
    bool ok = true;
    std::vector<Alternative> p = {1, 2, 3};
    do {
        const Pattern pattern(p);
        const std::string label = "avoid " + pattern.to_string('-');
        for (int n = 1; n <= max_n; ++n) {
            auto it = catalan.find(n);
            if (it == catalan.end())
                throw std::runtime_error("A000108 fixture has no term for n=" + std::to_string(n));
            const Count got = domain_size(pattern_avoidance_constraints(n, pattern));
            ok &= check(out, label, n, it->second, got);
            if (n <= kBruteForceLimit)
                ok &= check(out, label + " (brute force)", n, got,
                            brute_force_avoiders(n, pattern));
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return ok;
}

bool verify_length4(int max_n, const std::string &data_dir, std::ostream &out)
{
    const std::pair<const char *, Pattern> classes[] = {
        {"A022558", Pattern{1, 3, 4, 2}},
        {"A061552", Pattern{1, 3, 2, 4}},
        {"A005802", Pattern{1, 2, 3, 4}},
    };
    bool ok = true;
    for (const auto &[id, pattern] : classes) {
        const auto terms = read_bfile(data_dir + "/oeis/" + id + ".txt");
        const std::string label = std::string(id) + " avoid " + pattern.to_string('-');
        for (int n = 1; n <= max_n; ++n) {
            auto it = terms.find(n);
            if (it == terms.end())
                throw std::runtime_error(std::string(id) + " fixture has no term for n=" +
                                         std::to_string(n));
            ok &= check(out, label, n, it->second,
                        domain_size(pattern_avoidance_constraints(n, pattern)));
        }
    }
    return ok;
}

bool verify_table1(std::ostream &out)
{
    const std::pair<int, Count> reported[] = {{8, 222}, {9, 488}, {10, 1069}, {11, 2324}};
    bool ok = true;
    for (const auto &[n, size] : reported) {
        const auto trs = init_by_scheme(init_trs(n), RuleScheme(alternating_scheme));
        ok &= check(out, "alternating scheme", n, size, domain_size(trs));
    }
    return ok;
}

} // namespace cdl::cli
