// io.hpp -- text formats for domains, constraint lists and search results
//
// Domain file:  one order per line, space-separated alternatives, sorted.
// TRS file:     "a b c <RULE>" per line, RULE in 1N1..3N3 or "-".
// TLS file:     "a1 .. ak : p1,p2,.." per line, patterns written 2-5-3-1-4,
//               or "-" for an unassigned tuple.
// Results file: "<state-digits> <size>" per line, size descending.
//
// Blank lines and lines starting with '#' are ignored on input. Readers throw
// FormatError with the offending line number.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdl/search.hpp"
#include "cdl/types.hpp"

namespace cdl::io {

class FormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

void write_domain(std::ostream &os, const Domain &domain);

/// Every line must be a permutation of one common length; lines must be
/// strictly ascending. An empty file is an empty domain on `n_hint`
/// alternatives, and is rejected when no hint is given.
Domain read_domain(std::istream &is, int n_hint = 0);

void write_trs(std::ostream &os, const ConstraintList &trs);

/// Entries keep file order; n is taken from the caller.
ConstraintList read_trs(std::istream &is, int n);

void write_tls(std::ostream &os, const ConstraintList &tls);
ConstraintList read_tls(std::istream &is, int n);

/// Parses "2-5-3-1-4".
Pattern parse_pattern(const std::string &text);

void write_results(std::ostream &os, const std::vector<SearchHit> &hits);
std::vector<SearchHit> read_results(std::istream &is);

/// Whole-file helpers; throw std::runtime_error when the file cannot be
/// opened.
std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &contents);

} // namespace cdl::io
