#pragma once

// Class-number tables over a family of biquadratic fields Q(sqrt q, sqrt kr).

#include <cstdint>
#include <string>
#include <vector>

#include "bqf/arith.hpp"
#include "bqf/biquad.hpp"

namespace bqf {

struct TableRow {
    Integer q, k, r;
    Integer h;
};

struct TableResult {
    std::vector<TableRow> rows;             // sorted by (q, k, r)
    std::vector<std::string> diagnostics;  // rows that could not be computed
};

// k and r run independently over primes = 1 mod 4 up to k_max and r_max
// (k != r, both orders kept); q must be a prime
// = 3 mod 4 for q3, is forced to 2 for sqrt2, and is a prime = 1 mod 4
// distinct from k and r for hsu.
TableResult family_table(Family family, const Integer& q, std::uint64_t k_max, std::uint64_t r_max,
                         unsigned workers = 1);

// Explicit tuples, evaluated as given and then sorted.
TableResult tuple_table(const std::vector<FamilyPrimes>& tuples, unsigned workers = 1);

// "q\tk\tr\th_K" header followed by one line per row.
std::string to_tsv(const std::vector<TableRow>& rows);

}  // namespace bqf
