#pragma once

// Euclidean ideal class certificates for Q(sqrt q, sqrt kr) (q = 3 mod 4,
// k, r = 1 mod 4) and Q(sqrt 2, sqrt pq) (p, q = 1 mod 4) with class number
// two, plus the empirical audit of the prime-ideal growth hypothesis.
//
// A certificate fixes a residue class u mod l = lcm(16, f(K)) such that
//   gcd(u, l) = gcd((u - 1)/2, l) = 1,
// and every prime in the class is split in K but inert in one quadratic
// subfield of H(K), i.e. lies in the non-principal class.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bqf/arith.hpp"
#include "bqf/biquad.hpp"

namespace bqf {

struct AuxPrime {
    Integer prime;
    bool fallback = false;  // p = 3: no prime below it is 3 mod 4; 2 is used
};

// Least prime t < p with t = 3 mod 4 and (t/p) = -1. For p = 3 returns the
// flagged fallback 2.
AuxPrime pollack_prime(const Integer& p);

struct JacobiCheck {
    Integer numerator;        // q, k, r (or 2, p, q)
    Integer denominator;      // the witness prime w
    int expected = 0;
    int direct = 0;           // jacobi(numerator, w)
    int via_reciprocity = 0;  // from w = x0 modulo the numerator
};

struct CertificateChecks {
    Integer gcd_u;
    Integer gcd_u_minus_1_half;
    std::vector<JacobiCheck> jacobi;
};

struct Certificate {
    Family family = Family::other;
    FamilyPrimes primes;
    Integer h;
    Integer l;
    std::vector<AuxPrime> aux_primes;
    ResidueClass x0{0, 1};
    Integer w;
    Integer u;
    CertificateChecks checks;
};

struct BuildOptions {
    Integer search_limit = Integer(1'000'000'000);  // largest w tried
};

Certificate build_certificate(const BiquadField& field, const BuildOptions& options = {});

struct CheckEntry {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct VerificationReport {
    bool valid = false;
    std::vector<CheckEntry> checks;
};

// Re-derives every condition from the primes alone; never throws on bad input.
VerificationReport verify_certificate(const Certificate& cert);

// A degree-one prime above p: square roots s_i of the subfield radicands mod p
// with s3 = s1 s2 / gcd(m1, m2).
struct SplitPrimeEmbedding {
    std::uint64_t p = 0;
    std::array<std::uint64_t, 3> roots{};
};

// Embedding selected by the signs of s1 and s2 (false = principal root).
SplitPrimeEmbedding make_embedding(std::uint64_t p, const BiquadField& field, bool negate_s1 = false,
                                   bool negate_s2 = false);
std::array<SplitPrimeEmbedding, 4> all_embeddings(std::uint64_t p, const BiquadField& field);

// Image of e in O_K / P = F_p; coordinates must have denominators prime to p.
std::uint64_t reduce(const QuartElem& e, const SplitPrimeEmbedding& emb);

struct UnitSurjectivity {
    std::uint64_t residue = 0;  // image of e_i mod P
    std::uint64_t order = 0;    // its multiplicative order
    bool onto = false;          // lcm(2, order) == p - 1
};

struct SurjectivityResult {
    bool onto = false;  // some <-1, e_i> maps onto (O_K/P)*
    std::array<UnitSurjectivity, 3> units;
};

SurjectivityResult unit_surjectivity(const SplitPrimeEmbedding& emb, const BiquadField& field);
SurjectivityResult unit_surjectivity(const SplitPrimeEmbedding& emb, const BiquadField& field,
                                     const std::array<FundamentalUnit, 3>& units);

struct GrowthPrime {
    std::uint64_t p = 0;
    bool degree_one = false;
    bool nonprincipal = false;
    bool surjective = false;
    int surjective_unit = -1;  // first subfield index whose unit is onto
    bool embeddings_agree = true;
};

struct GrowthCheckpoint {
    std::uint64_t x = 0;
    std::uint64_t count = 0;
    double ratio = 0;  // count (log x)^2 / x
};

struct GrowthReport {
    Integer u;
    Integer l;
    std::vector<GrowthCheckpoint> checkpoints;
    std::vector<GrowthPrime> primes;  // every p = u mod l up to the largest bound
};

GrowthReport growth_audit(const BiquadField& field, const Certificate& cert, std::vector<std::uint64_t> bounds,
                          unsigned workers = 1);

}  // namespace bqf
