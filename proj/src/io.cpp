#include "cdl/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cdl/core.hpp"

namespace cdl::io {

namespace {

struct Line
{
    std::size_t number;
    std::string text;
};

std::vector<Line> content_lines(std::istream &is)
{
    std::vector<Line> out;
    std::string text;
    std::size_t number = 0;
    while (std::getline(is, text)) {
        ++number;
        if (!text.empty() && text.back() == '\r')
            text.pop_back();
        auto first = text.find_first_not_of(" \t");
        if (first == std::string::npos || text[first] == '#')
            continue;
        out.push_back({number, text});
    }
    return out;
}

[[noreturn]] void fail(const Line &line, const std::string &what)
{
    throw FormatError("line " + std::to_string(line.number) + ": " + what);
}

std::vector<int> parse_ints(const Line &line, const std::string &text)
{
    std::istringstream is(text);
    std::vector<int> out;
    std::string token;
    while (is >> token) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(token, &used);
        } catch (const std::exception &) {
            fail(line, "expected an integer, got '" + token + "'");
        }
        if (used != token.size())
            fail(line, "expected an integer, got '" + token + "'");
        out.push_back(v);
    }
    return out;
}

KTuple parse_tuple(const Line &line, const std::vector<int> &values, int n)
{
    for (int v : values)
        if (v < 1 || v > n)
            fail(line, "alternative " + std::to_string(v) + " outside 1.." + std::to_string(n));
    std::vector<Alternative> elems(values.begin(), values.end());
    try {
        return KTuple(std::move(elems));
    } catch (const std::exception &e) {
        fail(line, e.what());
    }
}

ConstraintList finish(std::vector<ConstraintEntry> entries, int n, int k)
{
    try {
        return ConstraintList(n, k, std::move(entries));
    } catch (const std::exception &e) {
        throw FormatError(e.what());
    }
}

} // namespace

void write_domain(std::ostream &os, const Domain &domain)
{
    for (std::size_t i = 0; i < domain.size(); ++i) {
        auto order = domain[i];
        for (std::size_t j = 0; j < order.size(); ++j) {
            if (j)
                os << ' ';
            os << int(order[j]);
        }
        os << '\n';
    }
}

Domain read_domain(std::istream &is, int n_hint)
{
    auto lines = content_lines(is);
    if (lines.empty()) {
        if (n_hint <= 0)
            throw FormatError("empty domain file: number of alternatives unknown");
        return Domain(n_hint);
    }
    int n = 0;
    std::vector<LinearOrder> orders;
    for (const auto &line : lines) {
        auto values = parse_ints(line, line.text);
        if (n == 0)
            n = static_cast<int>(values.size());
        if (static_cast<int>(values.size()) != n)
            fail(line, "order length " + std::to_string(values.size()) + " differs from " +
                           std::to_string(n));
        if (n > kMaxAlternatives)
            fail(line, "too many alternatives");
        for (int v : values)
            if (v < 1 || v > n)
                fail(line, "not a permutation of 1.." + std::to_string(n));
        try {
            orders.emplace_back(std::vector<Alternative>(values.begin(), values.end()));
        } catch (const std::exception &e) {
            fail(line, e.what());
        }
        if (orders.size() > 1 && !(orders[orders.size() - 2] < orders.back()))
            fail(line, "orders must be sorted ascending without duplicates");
    }
    if (n_hint > 0 && n != n_hint)
        throw FormatError("domain has " + std::to_string(n) + " alternatives, expected " +
                          std::to_string(n_hint));
    return Domain(n, std::move(orders));
}

void write_trs(std::ostream &os, const ConstraintList &trs)
{
    if (trs.k() != 3)
        throw std::invalid_argument("TRS files hold triples only");
    for (const auto &entry : trs.entries()) {
        os << int(entry.tuple[0]) << ' ' << int(entry.tuple[1]) << ' ' << int(entry.tuple[2])
           << ' ';
        if (!entry.law) {
            os << "-\n";
            continue;
        }
        auto rule = law_to_rule(*entry.law);
        if (!rule)
            throw std::invalid_argument("law on " + entry.tuple.to_string() +
                                        " is not a never rule; write a TLS file instead");
        os << rule->to_string() << '\n';
    }
}

ConstraintList read_trs(std::istream &is, int n)
{
    std::vector<ConstraintEntry> entries;
    for (const auto &line : content_lines(is)) {
        std::istringstream ls(line.text);
        std::vector<std::string> tokens;
        for (std::string t; ls >> t;)
            tokens.push_back(t);
        if (tokens.size() != 4)
            fail(line, "expected 'a b c RULE'");
        auto values = parse_ints(line, tokens[0] + ' ' + tokens[1] + ' ' + tokens[2]);
        ConstraintEntry entry{parse_tuple(line, values, n), std::nullopt};
        if (tokens[3] != "-") {
            try {
                entry.law = rule_to_patterns(NeverRule::parse(tokens[3]));
            } catch (const std::exception &e) {
                fail(line, e.what());
            }
        }
        entries.push_back(std::move(entry));
    }
    return finish(std::move(entries), n, 3);
}

void write_tls(std::ostream &os, const ConstraintList &tls)
{
    for (const auto &entry : tls.entries()) {
        for (int i = 0; i < entry.tuple.size(); ++i)
            os << int(entry.tuple[i]) << ' ';
        os << ": " << (entry.law ? entry.law->to_string() : std::string("-")) << '\n';
    }
}

Pattern parse_pattern(const std::string &text)
{
    std::vector<Alternative> seq;
    std::istringstream is(text);
    std::string part;
    while (std::getline(is, part, '-')) {
        std::size_t used = 0;
        int v = std::stoi(part, &used);
        if (used != part.size() || v < 1 || v > kMaxArity)
            throw std::invalid_argument("malformed pattern '" + text + "'");
        seq.push_back(static_cast<Alternative>(v));
    }
    return Pattern(std::move(seq));
}

ConstraintList read_tls(std::istream &is, int n)
{
    std::vector<ConstraintEntry> entries;
    int k = 0;
    for (const auto &line : content_lines(is)) {
        auto colon = line.text.find(':');
        if (colon == std::string::npos)
            fail(line, "expected 'a1 .. ak : patterns'");
        auto values = parse_ints(line, line.text.substr(0, colon));
        if (k == 0)
            k = static_cast<int>(values.size());
        if (static_cast<int>(values.size()) != k)
            fail(line, "tuple arity differs from the first line");
        ConstraintEntry entry{parse_tuple(line, values, n), std::nullopt};
        std::istringstream rest(line.text.substr(colon + 1));
        std::string law_text, extra;
        if (!(rest >> law_text) || (rest >> extra))
            fail(line, "expected one comma-separated pattern list");
        if (law_text != "-") {
            std::vector<Pattern> patterns;
            std::istringstream ps(law_text);
            try {
                for (std::string p; std::getline(ps, p, ',');)
                    patterns.push_back(parse_pattern(p));
                entry.law = Law(std::move(patterns));
            } catch (const std::exception &e) {
                fail(line, e.what());
            }
            if (entry.law->arity() != k)
                fail(line, "pattern length differs from tuple arity");
        }
        entries.push_back(std::move(entry));
    }
    if (k == 0)
        throw FormatError("empty TLS file: tuple arity unknown");
    return finish(std::move(entries), n, k);
}

void write_results(std::ostream &os, const std::vector<SearchHit> &hits)
{
    for (const auto &hit : hits)
        os << hit.state.to_string() << ' ' << hit.size << '\n';
}

std::vector<SearchHit> read_results(std::istream &is)
{
    std::vector<SearchHit> hits;
    for (const auto &line : content_lines(is)) {
        std::istringstream ls(line.text);
        std::string digits, size_text, extra;
        if (!(ls >> digits >> size_text) || (ls >> extra))
            fail(line, "expected '<state> <size>'");
        try {
            std::size_t used = 0;
            Count size = std::stoull(size_text, &used);
            if (used != size_text.size())
                fail(line, "malformed size");
            hits.push_back({State::parse(digits), size});
        } catch (const FormatError &) {
            throw;
        } catch (const std::exception &e) {
            fail(line, e.what());
        }
    }
    return hits;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << contents;
    if (!out)
        throw std::runtime_error("failed writing '" + path + "'");
}

} // namespace cdl::io
