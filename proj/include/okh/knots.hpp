#pragma once

#include "okh/diagram.hpp"

#include <map>
#include <string>
#include <vector>

// Programmatic diagram constructions and the bundled knot table.

namespace okh {

// closure of a braid word on `strands` strands; letters are +-i for the
// generator between positions i and i+1 (1-based), positive = positive
// crossing in the diagram's orientation convention
std::string braid_pd(int strands, const std::vector<int>& word);

// (p,q) torus knot/link as the closure of (s1 s2 ... s_{p-1})^q
std::string torus_pd(int p, int q);

// twist knot with k half twists in the clasp region (k=1 gives the trefoil,
// k=2 the figure eight)
std::string twist_pd(int k);

// 2-bridge (rational) knot or link from a continued fraction [a1,...,am],
// all ai > 0; also reports the fraction p/q it realizes
std::string rational_pd(const std::vector<int>& cf);
std::pair<int64_t, int64_t> rational_fraction(const std::vector<int>& cf);

// pretzel link P(p1, p2, p3) with signed twist counts
std::string pretzel_pd(int p1, int p2, int p3);

// disjoint split union: relabels the right factor's arcs above the left's
std::string split_union_pd(const std::string& a, const std::string& b);

// knot table: one record per line, "name<TAB>pd-code"
std::map<std::string, std::string> load_table(const std::string& path);
// built-in fixtures available without a table file
const std::map<std::string, std::string>& builtin_knots();

}  // namespace okh
