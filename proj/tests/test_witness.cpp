#include "doctest.h"

#include "bqf/witness.hpp"
#include "oracles.hpp"

using namespace bqf;

namespace {

BiquadField fam(long q, long k, long r)
{
    return BiquadField::from_family(Integer(q), Integer(k), Integer(r));
}

bool throws_code(ErrorCode code, auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

bool check_failed(const VerificationReport& r, const std::string& name)
{
    for (const auto& c : r.checks) {
        if (c.name == name)
            return !c.ok;
    }
    return false;
}

}  // namespace

TEST_CASE("auxiliary primes")
{
    CHECK(pollack_prime(Integer(5)).prime == 3);
    CHECK(pollack_prime(Integer(13)).prime == 7);
    CHECK(pollack_prime(Integer(17)).prime == 3);
    auto three = pollack_prime(Integer(3));
    CHECK(three.prime == 2);
    CHECK(three.fallback);
    CHECK(throws_code(ErrorCode::invalid_argument, [] { pollack_prime(Integer(2)); }));
    CHECK(throws_code(ErrorCode::invalid_argument, [] { pollack_prime(Integer(15)); }));
    for (std::int64_t p = 5; p < 3000; ++p) {
        if (!oracle::is_prime(static_cast<std::uint64_t>(p)))
            continue;
        auto expect = oracle::least_nonresidue_3mod4(p);
        REQUIRE(expect);
        auto got = pollack_prime(Integer(static_cast<long>(p)));
        CHECK(got.prime == *expect);
        CHECK_FALSE(got.fallback);
    }
}

TEST_CASE("certificate for (3, 5, 13)")
{
    Certificate c = build_certificate(fam(3, 5, 13));
    CHECK(c.family == Family::q3);
    CHECK(c.h == 2);
    CHECK(c.l == 3120);
    REQUIRE(c.aux_primes.size() == 3);
    CHECK(c.aux_primes[0].prime == 2);
    CHECK(c.aux_primes[0].fallback);
    CHECK(c.aux_primes[1].prime == 3);
    CHECK(c.aux_primes[2].prime == 7);
    CHECK(c.x0 == ResidueClass(Integer(683), Integer(780)));
    CHECK(c.w == 683);
    CHECK(c.u == 683);
    CHECK(c.checks.gcd_u == 1);
    CHECK(c.checks.gcd_u_minus_1_half == 1);
    REQUIRE(c.checks.jacobi.size() == 3);
    for (const auto& j : c.checks.jacobi) {
        CHECK(j.direct == j.expected);
        CHECK(j.via_reciprocity == j.expected);
        CHECK(j.direct == oracle::legendre(j.numerator.get_si(), j.denominator.get_si()));
    }
    CHECK(verify_certificate(c).valid);

    // Oracle: brute CRT and least prime by trial division.
    auto x0 = oracle::crt_scan({{2, 3}, {3, 5}, {7, 13}, {3, 4}});
    REQUIRE(x0);
    CHECK(c.x0.residue() == x0->first);
    std::int64_t w = x0->first;
    while (!oracle::is_prime(static_cast<std::uint64_t>(w)))
        w += x0->second;
    CHECK(c.w == w);
}

TEST_CASE("certificate for (2, 5, 17)")
{
    Certificate c = build_certificate(fam(2, 5, 17));
    CHECK(c.family == Family::sqrt2);
    CHECK(c.l == 1360);
    REQUIRE(c.aux_primes.size() == 2);
    CHECK(c.aux_primes[0].prime == 3);
    CHECK(c.aux_primes[1].prime == 3);
    CHECK(c.x0 == ResidueClass(Integer(343), Integer(680)));
    CHECK(c.w == 2383);
    CHECK(verify_certificate(c).valid);
    auto x0 = oracle::crt_scan({{3, 5}, {3, 17}, {7, 8}});
    REQUIRE(x0);
    std::int64_t w = x0->first;
    while (!oracle::is_prime(static_cast<std::uint64_t>(w)))
        w += x0->second;
    CHECK(w == 2383);
}

TEST_CASE("certificates are refused outside their hypotheses")
{
    CHECK(throws_code(ErrorCode::class_number_not_two, [] { build_certificate(fam(3, 5, 29)); }));
    CHECK(throws_code(ErrorCode::family_not_covered, [] { build_certificate(fam(5, 13, 17)); }));
    CHECK(throws_code(ErrorCode::family_not_covered, [] { build_certificate(BiquadField(Integer(2), Integer(3))); }));
    BuildOptions tight;
    tight.search_limit = 2000;
    CHECK(throws_code(ErrorCode::search_exhausted, [&] { build_certificate(fam(2, 5, 17), tight); }));
}

TEST_CASE("certificates are deterministic")
{
    Certificate a = build_certificate(fam(3, 5, 13));
    Certificate b = build_certificate(fam(3, 5, 13));
    CHECK(a.w == b.w);
    CHECK(a.x0 == b.x0);
}

TEST_CASE("tampered certificates fail verification")
{
    const Certificate good = build_certificate(fam(3, 5, 13));

    Certificate even = good;
    even.u = 684;
    auto r1 = verify_certificate(even);
    CHECK_FALSE(r1.valid);
    CHECK(check_failed(r1, "gcd_u"));

    Certificate one = good;
    one.u = 1;
    auto r2 = verify_certificate(one);
    CHECK_FALSE(r2.valid);
    CHECK(check_failed(r2, "gcd_u_minus_1_half"));

    Certificate bad_w = good;
    bad_w.w = 685;
    CHECK_FALSE(verify_certificate(bad_w).valid);

    Certificate bad_l = good;
    bad_l.l = 780;
    CHECK(check_failed(verify_certificate(bad_l), "l"));

    Certificate bad_aux = good;
    bad_aux.aux_primes[2].prime = 11;
    CHECK(check_failed(verify_certificate(bad_aux), "aux_primes"));

    Certificate bad_jac = good;
    bad_jac.checks.jacobi[1].direct = 1;
    CHECK(check_failed(verify_certificate(bad_jac), "jacobi"));

    Certificate bad_family = good;
    bad_family.family = Family::sqrt2;
    CHECK_FALSE(verify_certificate(bad_family).valid);

    Certificate nonsense = good;
    nonsense.primes = {Integer(4), Integer(5), Integer(13)};
    CHECK_FALSE(verify_certificate(nonsense).valid);

    Certificate wrong_h = good;
    wrong_h.primes = {Integer(3), Integer(5), Integer(29)};
    CHECK_FALSE(verify_certificate(wrong_h).valid);
}

TEST_CASE("embeddings and unit reduction")
{
    BiquadField k = fam(3, 5, 13);
    // s3 = 15, s65 = 18, s195 = 15 * 18 = 11 mod 37.
    SplitPrimeEmbedding emb{37, {15, 18, 11}};
    auto sr = unit_surjectivity(emb, k);
    CHECK(sr.units[0].residue == 17);
    CHECK(sr.units[0].order == 36);
    CHECK(sr.units[0].onto);
    CHECK(sr.onto);

    QuartElem e(k, {Rational(1, 2), 1, 0, 0});
    CHECK(reduce(e, emb) == (19 + 15) % 37);  // 1/2 = 19 mod 37

    CHECK(throws_code(ErrorCode::not_completely_split, [&] { make_embedding(7, k); }));
    CHECK(throws_code(ErrorCode::not_completely_split, [&] { unit_surjectivity(SplitPrimeEmbedding{37, {1, 2, 3}}, k); }));

    for (auto emb2 : all_embeddings(683, k)) {
        for (int i = 0; i < 3; ++i) {
            std::uint64_t m = k.radicands()[static_cast<std::size_t>(i)].get_ui() % 683;
            CHECK(emb2.roots[static_cast<std::size_t>(i)] * emb2.roots[static_cast<std::size_t>(i)] % 683 == m);
        }
    }
}

TEST_CASE("surjectivity agrees with a subgroup enumeration")
{
    BiquadField k = fam(3, 5, 13);
    for (std::uint64_t p = 3; p < 3000; p += 2) {
        if (!oracle::is_prime(p) || 780 % p == 0)
            continue;
        if (splitting_data(Integer(static_cast<unsigned long>(p)), k.multiquad()).f != 1)
            continue;
        auto sr = unit_surjectivity(make_embedding(p, k), k);
        for (const auto& u : sr.units)
            CHECK(u.onto == (oracle::subgroup_with_minus_one(u.residue, p) == p - 1));
    }
}

TEST_CASE("surjectivity does not depend on the embedding")
{
    for (auto t : {std::array<long, 3>{3, 5, 13}, {2, 5, 17}, {3, 5, 17}}) {
        BiquadField k = fam(t[0], t[1], t[2]);
        const long cond = conductor_multiquad(k.multiquad()).get_si();
        for (std::uint64_t p = 3; p < 10000; p += 2) {
            if (!oracle::is_prime(p) || cond % static_cast<long>(p) == 0)
                continue;
            if (splitting_data(Integer(static_cast<unsigned long>(p)), k.multiquad()).f != 1)
                continue;
            auto embs = all_embeddings(p, k);
            const bool first = unit_surjectivity(embs[0], k).onto;
            for (const auto& e : embs)
                CHECK(unit_surjectivity(e, k).onto == first);
        }
    }
}

TEST_CASE("growth audit")
{
    BiquadField k = fam(3, 5, 13);
    Certificate c = build_certificate(k);
    GrowthReport g = growth_audit(k, c, {100000, 10000}, 4);
    REQUIRE(g.checkpoints.size() == 2);
    CHECK(g.checkpoints[0].x == 10000);
    CHECK(g.checkpoints[0].count >= 1);
    CHECK(g.checkpoints[1].count >= g.checkpoints[0].count);
    CHECK(g.primes.front().p == 683);
    for (const auto& p : g.primes) {
        CHECK(p.p % 3120 == 683);
        CHECK(p.degree_one);
        CHECK(p.nonprincipal);
        CHECK(p.embeddings_agree);
        auto s = static_cast<std::int64_t>(p.p);
        CHECK(oracle::legendre(3, s) == 1);
        CHECK(oracle::legendre(5, s) == -1);
        CHECK(oracle::legendre(13, s) == -1);
    }
    GrowthReport g1 = growth_audit(k, c, {100000, 10000}, 1);
    CHECK(g1.checkpoints[1].count == g.checkpoints[1].count);

    Certificate bad = c;
    bad.u = 684;
    CHECK(throws_code(ErrorCode::invalid_argument, [&] { growth_audit(k, bad, {10000}); }));
    CHECK(throws_code(ErrorCode::invalid_argument, [&] { growth_audit(fam(3, 5, 17), c, {10000}); }));
    CHECK(throws_code(ErrorCode::invalid_argument, [&] { growth_audit(k, c, {}); }));
}
