#include "bqf/density.hpp"

#include "bqf/parallel.hpp"

namespace bqf {

Rational DensityReport::ratio() const
{
    if (pi_x == 0)
        return Rational(0);
    Rational r(Integer(static_cast<unsigned long>(count)), Integer(static_cast<unsigned long>(pi_x)));
    r.canonicalize();
    return r;
}

std::string decimal(const Rational& r, int digits)
{
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Integer scaled = r.get_num() * scale * 2 + r.get_den();
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), Integer(2 * r.get_den()).get_mpz_t());
    std::string s = q.get_str();
    if (digits == 0)
        return s;
    if (s.size() <= static_cast<std::size_t>(digits))
        s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    return s;
}

namespace {

// A radicand prepared for fast symbol evaluation at word-size primes.
struct Character {
    std::int64_t m;
    Integer disc;
};

Character make_character(const Integer& m)
{
    return {to_i64(m), QuadField(m).discriminant()};
}

int character_value(const Character& c, std::uint64_t p)
{
    if (p == 2)
        return kronecker_at_two(c.disc);
    return jacobi(c.m, static_cast<std::int64_t>(p));
}

// Walks the primes up to `bound`, skipping those dividing `conductor`, and
// counts the ones accepted by `pred`. Accepted primes are appended to `hits`
// when it is non-null. Chunks are fixed so output never depends on workers.
template <class Pred>
DensityReport count_primes(const Integer& conductor, std::uint64_t bound, unsigned workers, Pred pred,
                           std::vector<std::uint64_t>* hits)
{
    const std::vector<std::uint64_t> primes = prime_sieve(bound);
    constexpr std::size_t chunks = 64;
    struct Partial {
        std::uint64_t count = 0, unramified = 0, ramified = 0;
        std::vector<std::uint64_t> hits;
    };
    std::vector<Partial> partial(chunks);
    parallel_chunks(primes.size(), chunks, workers, [&](std::size_t b, std::size_t e, std::size_t c) {
        Partial& out = partial[c];
        for (std::size_t i = b; i < e; ++i) {
            const std::uint64_t p = primes[i];
            if (mpz_divisible_ui_p(conductor.get_mpz_t(), static_cast<unsigned long>(p))) {
                ++out.ramified;
                continue;
            }
            ++out.unramified;
            if (pred(p)) {
                ++out.count;
                if (hits)
                    out.hits.push_back(p);
            }
        }
    });

    DensityReport report;
    report.bound = bound;
    for (Partial& part : partial) {
        report.count += part.count;
        report.pi_x += part.unramified;
        report.ramified_excluded += part.ramified;
        if (hits)
            hits->insert(hits->end(), part.hits.begin(), part.hits.end());
    }
    return report;
}

}  // namespace

DensityReport complete_split_density(const MultiquadField& field, std::uint64_t bound, unsigned workers)
{
    if (bound < 100)
        fail(ErrorCode::invalid_argument, "complete_split_density: bound must be at least 100");
    std::vector<Character> chars;
    for (const Integer& m : field.generators())
        chars.push_back(make_character(m));
    // At unramified p all subfield symbols are products of generator symbols.
    DensityReport report = count_primes(conductor_multiquad(field), bound, workers, [&](std::uint64_t p) {
        for (const Character& c : chars) {
            if (character_value(c, p) != 1)
                return false;
        }
        return true;
    }, nullptr);
    report.field = field.name();
    report.condition = "splits completely";
    report.target = Rational(1, field.degree());
    return report;
}

DensityReport pattern_density(const MultiquadField& field, std::span<const Integer> radicands,
                              std::span<const int> signs, std::uint64_t bound, unsigned workers)
{
    if (radicands.size() != signs.size() || radicands.empty())
        fail(ErrorCode::invalid_argument, "pattern_density: one sign per radicand required");
    std::vector<Character> chars;
    std::string condition = "pattern ";
    for (std::size_t i = 0; i < radicands.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1)
            fail(ErrorCode::invalid_argument, "pattern_density: signs must be +1 or -1");
        chars.push_back(make_character(radicands[i]));
        condition += "(" + radicands[i].get_str() + "/p)=" + (signs[i] == 1 ? "+1" : "-1");
        if (i + 1 < radicands.size())
            condition += ",";
    }
    DensityReport report = count_primes(conductor_multiquad(field), bound, workers, [&](std::uint64_t p) {
        for (std::size_t i = 0; i < chars.size(); ++i) {
            if (character_value(chars[i], p) != signs[i])
                return false;
        }
        return true;
    }, nullptr);
    report.field = field.name();
    report.condition = condition;
    report.target = Rational(1, 1u << radicands.size());
    return report;
}

std::array<Integer, 3> pattern_radicands(const BiquadField& field)
{
    if (field.family() == Family::other || !field.family_primes())
        fail(ErrorCode::family_not_covered, "family not covered for " + field.multiquad().name());
    const FamilyPrimes& fp = *field.family_primes();
    return {fp.q, fp.k, fp.r};
}

WitnessPool witness_pool(const BiquadField& field, std::uint64_t bound, unsigned workers)
{
    if (bound < 10)
        fail(ErrorCode::invalid_argument, "witness_pool: bound must be at least 10");
    const auto rad = pattern_radicands(field);
    const std::array<Character, 3> chars{make_character(rad[0]), make_character(rad[1]), make_character(rad[2])};
    // Split in Q(sqrt q) and Q(sqrt kr), inert in Q(sqrt k) and Q(sqrt r).
    WitnessPool pool;
    pool.report = count_primes(conductor_multiquad(field.multiquad()), bound, workers, [&](std::uint64_t p) {
        return character_value(chars[0], p) == 1 && character_value(chars[1], p) == -1 &&
               character_value(chars[2], p) == -1;
    }, &pool.primes);
    pool.report.field = field.multiquad().name();
    pool.report.condition = "splits completely in K, not in H(K)";
    pool.report.target = Rational(1, 8);
    return pool;
}

}  // namespace bqf
