#pragma once

// Exact integer and rational arithmetic plus the elementary number theory the
// rest of the library is built on: Jacobi symbols, CRT, primality, prime
// sieving, primes in progressions and multiplicative orders.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bqf/error.hpp"

namespace bqf {

using Integer = mpz_class;
using Rational = mpq_class;

// A residue class r mod n with 0 <= r < n.
class ResidueClass {
public:
    ResidueClass(Integer residue, Integer modulus);

    const Integer& residue() const noexcept { return residue_; }
    const Integer& modulus() const noexcept { return modulus_; }

    bool contains(const Integer& x) const;

    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;

private:
    Integer residue_;
    Integer modulus_;
};

std::string to_string(const ResidueClass& c);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

struct ExtendedGcd {
    Integer g;  // gcd(a, b) >= 0
    Integer s;  // s*a + t*b == g
    Integer t;
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

// Least nonnegative x mod n; n > 0.
Integer mod(const Integer& x, const Integer& n);
std::int64_t mod(std::int64_t x, std::int64_t n);

// Jacobi symbol (a/n) for odd n >= 1. Negative a is reduced mod n first.
int jacobi(const Integer& a, const Integer& n);
int jacobi(std::int64_t a, std::int64_t n);

// Kronecker symbol (d/2) for a discriminant d: 0 if d is even, +1 if
// d = +-1 mod 8, -1 if d = +-3 mod 8.
int kronecker_at_two(const Integer& d);

// Solves a system of congruences. Moduli need not be coprime; conflicting
// residues raise ErrorCode::inconsistent_congruences naming both entries.
ResidueClass crt_solve(std::span<const ResidueClass> congruences);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Trial division below 1e8, deterministic strong-pseudoprime bases above.
bool is_prime(std::uint64_t n);
bool is_prime(const Integer& n);

bool is_squarefree(const Integer& n);

// Primes p <= bound in ascending order.
std::vector<std::uint64_t> prime_sieve(std::uint64_t bound);

// Prime factors of n with multiplicity, by trial division.
std::vector<std::pair<std::uint64_t, int>> factor_trial(std::uint64_t n);

// All primes p <= bound with p in the given class. Requires the class to be
// coprime to its modulus.
std::vector<Integer> primes_in_ap(const ResidueClass& cls, const Integer& bound);

// Least prime p <= limit in the class, if any.
std::optional<Integer> first_prime_in_ap(const ResidueClass& cls, const Integer& limit);

// Least t >= 1 with a^t = 1 mod p, for p prime not dividing a.
Integer multiplicative_order(const Integer& a, const Integer& p);
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p);

// A square root of a mod p (p an odd prime, a a residue), via Tonelli-Shanks.
std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p);

// Rational square root if x is the square of a rational, else nullopt.
// The returned root is nonnegative.
std::optional<Rational> rational_sqrt(const Rational& x);

// Checked narrowing for values that must fit machine words.
std::uint64_t to_u64(const Integer& n);
std::int64_t to_i64(const Integer& n);

}  // namespace bqf
