#include "bqf/table.hpp"

#include <algorithm>
#include <optional>

#include "bqf/parallel.hpp"

namespace bqf {

namespace {

std::vector<std::uint64_t> primes_one_mod_four(std::uint64_t bound)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : prime_sieve(bound)) {
        if (p % 4 == 1)
            out.push_back(p);
    }
    return out;
}

}  // namespace

TableResult tuple_table(const std::vector<FamilyPrimes>& tuples, unsigned workers)
{
    std::vector<std::optional<TableRow>> rows(tuples.size());
    std::vector<std::string> errors(tuples.size());
    parallel_chunks(tuples.size(), 64, workers, [&](std::size_t b, std::size_t e, std::size_t) {
        for (std::size_t i = b; i < e; ++i) {
            const FamilyPrimes& t = tuples[i];
            try {
                BiquadField field = BiquadField::from_family(t.q, t.k, t.r);
                rows[i] = TableRow{t.q, t.k, t.r, class_number_biquad(field)};
            } catch (const std::exception& ex) {
                errors[i] = "(" + t.q.get_str() + ", " + t.k.get_str() + ", " + t.r.get_str() + "): " + ex.what();
            }
        }
    });

    TableResult result;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        if (rows[i])
            result.rows.push_back(std::move(*rows[i]));
        else
            result.diagnostics.push_back(std::move(errors[i]));
    }
    std::sort(result.rows.begin(), result.rows.end(), [](const TableRow& a, const TableRow& b) {
        if (a.q != b.q)
            return a.q < b.q;
        if (a.k != b.k)
            return a.k < b.k;
        return a.r < b.r;
    });
    return result;
}

TableResult family_table(Family family, const Integer& q, std::uint64_t k_max, std::uint64_t r_max,
                         unsigned workers)
{
    Integer base = q;
    switch (family) {
    case Family::q3:
        if (!is_prime(q) || mod(q, Integer(4)) != 3)
            fail(ErrorCode::invalid_argument, "--q must be a prime = 3 mod 4 for family q3, got " + q.get_str());
        break;
    case Family::sqrt2:
        base = 2;
        break;
    case Family::hsu:
        if (!is_prime(q) || mod(q, Integer(4)) != 1)
            fail(ErrorCode::invalid_argument, "--q must be a prime = 1 mod 4 for family hsu, got " + q.get_str());
        break;
    default:
        fail(ErrorCode::family_not_covered, "tables cover the q3, sqrt2 and hsu families");
    }

    const std::vector<std::uint64_t> ks = primes_one_mod_four(k_max);
    const std::vector<std::uint64_t> rs = primes_one_mod_four(r_max);
    std::vector<FamilyPrimes> tuples;
    for (std::uint64_t k : ks) {
        for (std::uint64_t r : rs) {
            if (r == k)
                continue;
            Integer kk(static_cast<unsigned long>(k)), rr(static_cast<unsigned long>(r));
            if (kk == base || rr == base)
                continue;
            tuples.push_back({base, kk, rr});
        }
    }
    return tuple_table(tuples, workers);
}

std::string to_tsv(const std::vector<TableRow>& rows)
{
    std::string out = "q\tk\tr\th_K\n";
    for (const TableRow& row : rows)
        out += row.q.get_str() + "\t" + row.k.get_str() + "\t" + row.r.get_str() + "\t" + row.h.get_str() + "\n";
    return out;
}

}  // namespace bqf
