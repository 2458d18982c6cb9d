#pragma once

// Empirical Chebotarev statistics. Densities are natural densities of primes
// up to a bound; primes dividing the conductor are left out of numerator and
// denominator alike.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bqf/arith.hpp"
#include "bqf/biquad.hpp"

namespace bqf {

struct DensityReport {
    std::string field;
    std::string condition;
    std::uint64_t bound = 0;
    std::uint64_t count = 0;
    std::uint64_t pi_x = 0;               // unramified primes <= bound
    std::uint64_t ramified_excluded = 0;  // primes <= bound dividing the conductor
    Rational target;

    Rational ratio() const;
};

// Renders a nonnegative rational with `digits` decimals, rounding half up.
std::string decimal(const Rational& r, int digits = 6);

// Primes splitting completely in the field; target 1/[M:Q].
DensityReport complete_split_density(const MultiquadField& field, std::uint64_t bound, unsigned workers = 1);

// Primes whose Kronecker symbols (D_i/p) over the given radicands equal
// `signs`; ramification is taken from `field`. Target 2^-len.
DensityReport pattern_density(const MultiquadField& field, std::span<const Integer> radicands,
                              std::span<const int> signs, std::uint64_t bound, unsigned workers = 1);

// (q, k, r), or (2, p, q) for the sqrt2 family: the radicands whose Legendre
// pattern (+1, -1, -1) characterises split-but-nonprincipal primes.
std::array<Integer, 3> pattern_radicands(const BiquadField& field);

struct WitnessPool {
    std::vector<std::uint64_t> primes;
    DensityReport report;
};

// Primes p <= bound splitting completely in K but not in its Hilbert class field.
WitnessPool witness_pool(const BiquadField& field, std::uint64_t bound, unsigned workers = 1);

}  // namespace bqf
