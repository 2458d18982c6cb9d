#include "doctest.h"

#include <map>
#include <random>

#include "bqf/biquad.hpp"
#include "oracles.hpp"

using namespace bqf;

namespace {

bool throws_code(ErrorCode code, auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

MultiquadField mq(std::initializer_list<long> gens)
{
    std::vector<Integer> v;
    for (long g : gens)
        v.emplace_back(g);
    return MultiquadField(v);
}

BiquadField fam(long q, long k, long r)
{
    return BiquadField::from_family(Integer(q), Integer(k), Integer(r));
}

// Inertia-field count: the largest subfield unramified at p has degree
// (#quadratic subfields unramified at p) + 1.
int ramification_oracle(std::int64_t p, const std::vector<std::int64_t>& subfields)
{
    int unramified = 0;
    for (std::int64_t m : subfields) {
        std::int64_t d = m % 4 == 1 ? m : 4 * m;
        unramified += d % p != 0;
    }
    return static_cast<int>((subfields.size() + 1) / static_cast<std::size_t>(unramified + 1));
}

std::vector<std::int64_t> as_i64(const std::vector<Integer>& v)
{
    std::vector<std::int64_t> out;
    for (const Integer& x : v)
        out.push_back(x.get_si());
    return out;
}

}  // namespace

TEST_CASE("subfield radicands")
{
    auto a = subfield_radicands(Integer(3), Integer(65));
    CHECK(a.m1 == 3);
    CHECK(a.m2 == 65);
    CHECK(a.m3 == 195);
    auto b = subfield_radicands(Integer(2), Integer(35));
    CHECK(b.m3 == 70);
    auto c = subfield_radicands(Integer(5), Integer(65));
    CHECK(c.m3 == 13);
    CHECK(throws_code(ErrorCode::invalid_argument, [] { subfield_radicands(Integer(4), Integer(3)); }));
    CHECK(throws_code(ErrorCode::invalid_argument, [] { subfield_radicands(Integer(3), Integer(3)); }));
}

TEST_CASE("multiquadratic fields")
{
    MultiquadField k = mq({3, 5, 13});
    CHECK(k.degree() == 8);
    CHECK(k.subfield_radicands().size() == 7);
    CHECK(k.has_subfield(Integer(65)));
    CHECK(k.has_subfield(Integer(195)));
    CHECK_FALSE(k.has_subfield(Integer(2)));
    CHECK(k.name() == "Q(sqrt 3, sqrt 5, sqrt 13)");
    CHECK(mq({3, 65}) == mq({195, 65}));
    CHECK_FALSE(mq({3, 65}) == mq({3, 5}));
    CHECK(MultiquadField({}).degree() == 1);
    CHECK(throws_code(ErrorCode::invalid_argument, [] { mq({3, 5, 15}); }));
    CHECK(throws_code(ErrorCode::invalid_argument, [] { mq({3, 4}); }));
}

TEST_CASE("family detection")
{
    CHECK(fam(3, 5, 13).family() == Family::q3);
    CHECK(fam(2, 5, 17).family() == Family::sqrt2);
    CHECK(fam(5, 13, 17).family() == Family::hsu);
    CHECK(fam(3, 7, 13).family() == Family::other);
    CHECK(BiquadField(Integer(65), Integer(3)).family() == Family::q3);
    CHECK(BiquadField(Integer(2), Integer(85)).family() == Family::sqrt2);
    CHECK(BiquadField(Integer(2), Integer(3)).family() == Family::other);
    CHECK(parse_family("q3") == Family::q3);
    CHECK_FALSE(parse_family("bogus"));
    CHECK(to_string(Family::sqrt2) == "sqrt2");
}

TEST_CASE("conductors of multiquadratic fields")
{
    CHECK(conductor_multiquad(mq({3, 65})) == 780);
    CHECK(conductor_multiquad(mq({2, 85})) == 680);
    CHECK(conductor_multiquad(mq({3, 5, 13})) == 780);
    CHECK(conductor_multiquad(mq({2, 5, 17})) == 680);
    CHECK(conductor_multiquad(MultiquadField({})) == 1);
}

TEST_CASE("conductor is the lcm of subfield conductors")
{
    std::mt19937_64 rng(23);
    const long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    std::uniform_int_distribution<int> pick(0, 11), rank(1, 3);
    int tested = 0;
    while (tested < 100) {
        std::vector<Integer> gens;
        const int n = rank(rng);
        for (int i = 0; i < n; ++i) {
            long g = small[pick(rng)];
            if (pick(rng) % 2)
                g *= small[pick(rng)];
            if (!oracle::is_squarefree(static_cast<std::uint64_t>(g)))
                g = small[pick(rng)];
            gens.emplace_back(g);
        }
        MultiquadField f = [&]() -> MultiquadField {
            try {
                return MultiquadField(gens);
            } catch (const Error&) {
                return MultiquadField({});
            }
        }();
        if (f.rank() == 0)
            continue;
        Integer l = 1;
        for (const Integer& m : f.subfield_radicands())
            l = lcm(l, conductor_quad(QuadField(m)));
        CHECK(conductor_multiquad(f) == l);
        CHECK(conductor_multiquad(f) == oracle::conductor(as_i64(f.generators())));
        ++tested;
    }
}

TEST_CASE("splitting depends only on p mod the conductor")
{
    for (auto gens : {std::vector<long>{3, 65}, {2, 85}, {3, 5, 13}, {2, 3}, {5, 13, 17}}) {
        std::vector<Integer> g(gens.begin(), gens.end());
        MultiquadField f(g);
        const long cond = conductor_multiquad(f).get_si();
        std::map<long, std::vector<int>> seen;
        int sampled = 0;
        for (long p = 3; sampled < 200; p += 2) {
            if (!oracle::is_prime(static_cast<std::uint64_t>(p)) || cond % p == 0)
                continue;
            ++sampled;
            SplitData sd = splitting_data(Integer(p), f);
            CHECK(sd.e * sd.f * sd.g == static_cast<int>(f.degree()));
            auto [it, fresh] = seen.emplace(p % cond, sd.pattern);
            if (!fresh)
                CHECK(it->second == sd.pattern);
        }
    }
}

TEST_CASE("ramification indices")
{
    CHECK(ramification_index(Integer(2), mq({65})) == 1);
    CHECK(ramification_index(Integer(2), mq({3, 65})) == 2);
    CHECK(ramification_index(Integer(2), mq({2, 3})) == 4);
    CHECK(ramification_index(Integer(3), mq({3, 65})) == 2);
    CHECK(ramification_index(Integer(7), mq({3, 65})) == 1);
    CHECK(ramification_index(Integer(2), mq({2, 3, 5})) == 4);

    for (auto gens : {std::vector<long>{3, 65}, {2, 85}, {3, 5, 13}, {2, 3}, {6, 10}, {3, 7}, {2, 5, 17}, {3, 7, 11}}) {
        std::vector<Integer> g(gens.begin(), gens.end());
        MultiquadField f(g);
        for (long p : {2, 3, 5, 7, 11, 13, 17, 19}) {
            CHECK(ramification_index(Integer(p), f) == ramification_oracle(p, as_i64(f.subfield_radicands())));
        }
    }
}

TEST_CASE("unramified extensions")
{
    auto r = verify_unramified(mq({3, 5, 13}), mq({3, 65}));
    CHECK(r.unramified);
    CHECK(r.contains_base);
    CHECK(r.entries.size() == 4);  // 2, 3, 5, 13
    CHECK(verify_unramified(mq({2, 5, 17}), mq({2, 85})).unramified);
    CHECK_FALSE(verify_unramified(mq({3, 5}), mq({3})).unramified);
    CHECK_FALSE(verify_unramified(mq({3, 5, 13}), mq({3, 5})).unramified);
}

TEST_CASE("splitting data")
{
    MultiquadField k = mq({3, 65});
    SplitData a = splitting_data(Integer(683), k);
    CHECK(a.pattern == std::vector<int>{1, 1, 1});
    CHECK(a.e == 1);
    CHECK(a.f == 1);
    CHECK(a.g == 4);
    SplitData b = splitting_data(Integer(7), k);
    CHECK(b.pattern == std::vector<int>{-1, 1, -1});
    CHECK(b.f == 2);
    CHECK(b.g == 2);
    CHECK(splitting_data(Integer(3), k).e == 2);

    // f = 1 iff every radicand is a square mod p (squares listed directly).
    for (long p = 3; p < 3000; p += 2) {
        if (!oracle::is_prime(static_cast<std::uint64_t>(p)) || 780 % p == 0)
            continue;
        bool all = true;
        for (long m : {3, 65, 195})
            all = all && oracle::legendre(m, p) == 1;
        CHECK((splitting_data(Integer(p), k).f == 1) == all);
    }
}

TEST_CASE("non-principal split primes")
{
    BiquadField k = fam(3, 5, 13);
    CHECK(is_nonprincipal_split_prime(Integer(683), k));
    CHECK_FALSE(is_nonprincipal_split_prime(Integer(181), k));
    CHECK(throws_code(ErrorCode::not_completely_split, [&] { is_nonprincipal_split_prime(Integer(7), k); }));
    MultiquadField h = hilbert_class_field(k);
    for (long p = 3; p < 20000; p += 2) {
        if (!oracle::is_prime(static_cast<std::uint64_t>(p)) || 780 % p == 0)
            continue;
        SplitData sk = splitting_data(Integer(p), k.multiquad());
        if (sk.f != 1)
            continue;
        bool np = is_nonprincipal_split_prime(Integer(p), k, h);
        CHECK(np == (splitting_data(Integer(p), h).f == 2));
        CHECK(np == (oracle::legendre(5, p) == -1));
    }
}

TEST_CASE("quartic arithmetic")
{
    BiquadField k(Integer(2), Integer(3));
    QuartElem a(k, {1, 1, 0, 0});
    QuartElem b(k, {0, 0, 1, 1});
    CHECK((a * b) * a == a * (b * a));
    CHECK(pow(a, 2) == QuartElem(k, {3, 2, 0, 0}));
    CHECK(a.norm() == 1);
    QuartElem r(k, {0, 1, 1, 0});
    CHECK(r * r == QuartElem(k, {5, 0, 0, 2}));
    CHECK(a.conjugate(1) == QuartElem(k, {1, -1, 0, 0}));
    // sqrt m3 = sqrt m1 sqrt m2 / g with g = gcd(m1, m2).
    BiquadField k2(Integer(6), Integer(10));
    QuartElem s1(k2, {0, 1, 0, 0}), s2(k2, {0, 0, 1, 0});
    CHECK(s1 * s2 == QuartElem(k2, {0, 0, 0, 2}));
}

TEST_CASE("quartic square roots")
{
    BiquadField k(Integer(2), Integer(3));
    auto r = quart_is_square(QuartElem(k, {5, 0, 0, 2}));
    REQUIRE(r);
    CHECK(*r == QuartElem(k, {0, 1, 1, 0}));
    CHECK_FALSE(quart_is_square(QuartElem(k, {1, 1, 0, 0})));
    auto four = quart_is_square(QuartElem(k, Rational(4)));
    REQUIRE(four);
    CHECK(*four == QuartElem(k, Rational(2)));

    std::mt19937_64 rng(29);
    std::uniform_int_distribution<long> coord(-50, 50), den(1, 5);
    const std::pair<long, long> fields[] = {{2, 3}, {3, 65}, {2, 85}, {5, 13}, {6, 10}, {7, 11}, {3, 5}, {2, 5}};
    int done = 0;
    for (int i = 0; done < 500; ++i) {
        auto [a1, a2] = fields[static_cast<std::size_t>(i) % 8];
        BiquadField f{Integer(a1), Integer(a2)};
        QuartElem e(f, {Rational(coord(rng), den(rng)), Rational(coord(rng), den(rng)),
                        Rational(coord(rng), den(rng)), Rational(coord(rng), den(rng))});
        if (e.is_zero())
            continue;
        ++done;
        auto root = quart_is_square(e * e);
        REQUIRE(root);
        CHECK((*root == e || *root == -e));
    }
}

TEST_CASE("unit index")
{
    auto u = unit_index(BiquadField(Integer(2), Integer(3)));
    CHECK(u.index >= 2);
    CHECK(u.index <= 8);
    auto v = unit_index(fam(3, 5, 13));
    CHECK(class_number_quad(QuadField(Integer(195))) == 4);
    CHECK(v.index == 1);  // 1 * 1 * 2 * 4 = 4 * 2
    for (const auto& vec : v.vectors) {
        // Each listed vector really gives +-a square.
        BiquadField k = fam(3, 5, 13);
        QuartElem prod = QuartElem(k, Rational(1));
        for (int i = 0; i < 3; ++i) {
            if (vec[i])
                prod = prod * QuartElem::embed(k, i, v.units[i].unit);
        }
        CHECK((quart_is_square(prod) || quart_is_square(-prod)));
    }
}

TEST_CASE("class numbers of biquadratic fields")
{
    CHECK(class_number_biquad(fam(3, 5, 13)) == 2);
    CHECK(class_number_biquad(fam(3, 13, 61)) == 16);
    CHECK(class_number_biquad(fam(2, 29, 97)) == 14);
    CHECK(class_number_biquad(fam(3, 29, 149)) == 20);
    CHECK(class_number_biquad(fam(2, 29, 149)) == 10);
    CHECK(class_number_biquad(fam(2, 17, 193)) == 24);
    CHECK(class_number_biquad(fam(2, 5, 197)) == 12);
    CHECK(class_number_biquad(fam(3, 5, 29)) == 8);
    CHECK(class_number_biquad(BiquadField(Integer(2), Integer(3))) == 1);
    CHECK(class_number_biquad(BiquadField(Integer(2), Integer(5))) == 1);
}

TEST_CASE("Kuroda's formula is integral")
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> gen(2, 400);
    int done = 0;
    while (done < 60) {
        long a = gen(rng), b = gen(rng);
        if (a == b || !oracle::is_squarefree(static_cast<std::uint64_t>(a)) ||
            !oracle::is_squarefree(static_cast<std::uint64_t>(b)))
            continue;
        BiquadField k{Integer(a), Integer(b)};
        BiquadInvariants inv = biquad_invariants(k);
        Integer prod = inv.units.index;
        for (const Integer& h : inv.subfield_class_numbers)
            prod *= h;
        CHECK(prod == 4 * inv.class_number);
        CHECK(inv.class_number > 0);
        CHECK((inv.units.index == 1 || inv.units.index == 2 || inv.units.index == 4 || inv.units.index == 8));
        ++done;
    }
}

TEST_CASE("Hilbert class fields")
{
    CHECK(hilbert_class_field(fam(3, 5, 13)) == mq({3, 5, 13}));
    CHECK(hilbert_class_field(fam(2, 5, 17)) == mq({2, 5, 17}));
    CHECK(throws_code(ErrorCode::class_number_not_two, [] { hilbert_class_field(fam(3, 5, 29)); }));
    CHECK(throws_code(ErrorCode::family_not_covered, [] { hilbert_class_field(BiquadField(Integer(2), Integer(3))); }));
    CHECK(throws_code(ErrorCode::class_number_not_two,
                      [] { hilbert_class_field(fam(3, 5, 13), Integer(4)); }));
}
