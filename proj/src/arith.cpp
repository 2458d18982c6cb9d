#include "bqf/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bqf {

ResidueClass::ResidueClass(Integer residue, Integer modulus)
    : residue_(std::move(residue)), modulus_(std::move(modulus))
{
    if (modulus_ <= 0)
        fail(ErrorCode::invalid_argument, "residue class modulus must be positive, got " + modulus_.get_str());
    residue_ = mod(residue_, modulus_);
}

bool ResidueClass::contains(const Integer& x) const
{
    return mod(x, modulus_) == residue_;
}

std::string to_string(const ResidueClass& c)
{
    return c.residue().get_str() + " mod " + c.modulus().get_str();
}

Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b)
{
    // Iterative Euclid keeping Bezout coefficients.
    Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        Integer r2 = r0 - q * r1;
        Integer s2 = s0 - q * s1;
        Integer t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0 < 0) {
        r0 = -r0; s0 = -s0; t0 = -t0;
    }
    return {r0, s0, t0};
}

Integer mod(const Integer& x, const Integer& n)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::int64_t mod(std::int64_t x, std::int64_t n)
{
    std::int64_t r = x % n;
    return r < 0 ? r + n : r;
}

namespace {

template <class Int>
int jacobi_core(Int a, Int n)
{
    // Binary Jacobi: strip factors of two using (2/n), then flip with
    // reciprocity. Both arguments stay nonnegative.
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int r = n % 8;
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

}  // namespace

int jacobi(const Integer& a, const Integer& n)
{
    if (n <= 0 || mpz_even_p(n.get_mpz_t()))
        fail(ErrorCode::invalid_argument, "jacobi: modulus must be odd and positive, got " + n.get_str());
    if (n.fits_slong_p() && n < (Integer(1) << 62))
        return jacobi(to_i64(mod(a, n)), n.get_si());
    return jacobi_core<Integer>(mod(a, n), n);
}

int jacobi(std::int64_t a, std::int64_t n)
{
    if (n <= 0 || n % 2 == 0)
        fail(ErrorCode::invalid_argument, "jacobi: modulus must be odd and positive, got " + std::to_string(n));
    return jacobi_core<std::int64_t>(mod(a, n), n);
}

int kronecker_at_two(const Integer& d)
{
    if (mpz_even_p(d.get_mpz_t()))
        return 0;
    long r = mod(d, Integer(8)).get_si();
    return (r == 1 || r == 7) ? 1 : -1;
}

ResidueClass crt_solve(std::span<const ResidueClass> congruences)
{
    if (congruences.empty())
        fail(ErrorCode::invalid_argument, "crt_solve: empty system");

    Integer x = congruences[0].residue();
    Integer n = congruences[0].modulus();
    for (std::size_t i = 1; i < congruences.size(); ++i) {
        const Integer& a = congruences[i].residue();
        const Integer& m = congruences[i].modulus();
        ExtendedGcd eg = extended_gcd(n, m);
        Integer diff = a - x;
        if (mod(diff, eg.g) != 0) {
            // A system is solvable iff it is pairwise consistent, so some
            // earlier entry conflicts with entry i on its own.
            for (std::size_t j = 0; j < i; ++j) {
                const ResidueClass& c = congruences[j];
                if (mod(a - c.residue(), gcd(m, c.modulus())) != 0)
                    fail(ErrorCode::inconsistent_congruences,
                         "crt_solve: inconsistent congruences #" + std::to_string(j) + " (" + to_string(c) +
                             ") and #" + std::to_string(i) + " (" + to_string(congruences[i]) + ")");
            }
            fail(ErrorCode::internal, "crt_solve: no conflicting pair found");
        }
        Integer m_red = m / eg.g;
        // x + n * t with n*t = diff (mod m)  =>  t = (diff/g) * s (mod m/g)
        Integer t = mod((diff / eg.g) * eg.s, m_red);
        x += n * t;
        n *= m_red;
        x = mod(x, n);
    }
    return ResidueClass(x, n);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace {

constexpr std::uint64_t trial_division_limit = 100'000'000;

bool is_prime_trial(std::uint64_t n)
{
    if (n < 2)
        return false;
    if (n < 4)
        return true;
    if (n % 2 == 0 || n % 3 == 0)
        return false;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0)
            return false;
    }
    return true;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t base)
{
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod(base, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

}  // namespace

bool is_prime(std::uint64_t n)
{
    if (n < trial_division_limit)
        return is_prime_trial(n);
    if (n % 2 == 0)
        return false;
    // Bases 2..17 are exact below 341550071728321; the first twelve primes
    // cover all of 64 bits.
    static constexpr std::uint64_t small_bases[] = {2, 3, 5, 7, 11, 13, 17};
    static constexpr std::uint64_t wide_bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    std::span<const std::uint64_t> bases = n < 341'550'071'728'321ULL
                                               ? std::span<const std::uint64_t>(small_bases)
                                               : std::span<const std::uint64_t>(wide_bases);
    for (std::uint64_t b : bases) {
        if (n % b == 0)
            return n == b;
        if (!strong_probable_prime(n, b))
            return false;
    }
    return true;
}

bool is_prime(const Integer& n)
{
    if (n < 2)
        return false;
    if (n.fits_ulong_p())
        return is_prime(static_cast<std::uint64_t>(n.get_ui()));
    // Beyond 64 bits no input of this library arises; GMP's BPSW-based test
    // has no known counterexample.
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_squarefree(const Integer& n)
{
    if (n == 0)
        return false;
    Integer m = abs(n);
    for (unsigned long d = 2; Integer(d) * d <= m; ++d) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            m /= d;
            if (mpz_divisible_ui_p(m.get_mpz_t(), d))
                return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> prime_sieve(std::uint64_t bound)
{
    std::vector<std::uint64_t> primes;
    if (bound < 2)
        return primes;
    // Odd-only sieve: index i stands for 2i+1.
    std::uint64_t half = bound / 2 + 1;
    std::vector<bool> composite(half, false);
    primes.push_back(2);
    for (std::uint64_t i = 1; i < half; ++i) {
        std::uint64_t p = 2 * i + 1;
        if (p > bound)
            break;
        if (composite[i])
            continue;
        primes.push_back(p);
        for (std::uint64_t j = p * p / 2; j < half; j += p)
            composite[j] = true;
    }
    return primes;
}

std::vector<std::pair<std::uint64_t, int>> factor_trial(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, int>> factors;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e > 0)
            factors.emplace_back(d, e);
    }
    if (n > 1)
        factors.emplace_back(n, 1);
    return factors;
}

std::vector<Integer> primes_in_ap(const ResidueClass& cls, const Integer& bound)
{
    if (gcd(cls.residue(), cls.modulus()) != 1)
        fail(ErrorCode::invalid_argument, "primes_in_ap: residue shares a factor with the modulus in " + to_string(cls));
    std::vector<Integer> out;
    if (bound < 2)
        return out;

    const std::uint64_t b = to_u64(bound);
    const std::uint64_t n = to_u64(cls.modulus());
    const std::uint64_t r = to_u64(cls.residue());
    // Dense progressions are cheaper to read off a sieve.
    if (b / n > 20'000 && b <= 400'000'000ULL) {
        for (std::uint64_t p : prime_sieve(b)) {
            if (p % n == r)
                out.emplace_back(static_cast<unsigned long>(p));
        }
        return out;
    }
    for (std::uint64_t c = r; c <= b; c += n) {
        if (is_prime(c))
            out.emplace_back(static_cast<unsigned long>(c));
        if (c > std::numeric_limits<std::uint64_t>::max() - n)
            break;
    }
    return out;
}

std::optional<Integer> first_prime_in_ap(const ResidueClass& cls, const Integer& limit)
{
    if (gcd(cls.residue(), cls.modulus()) != 1)
        fail(ErrorCode::invalid_argument, "first_prime_in_ap: residue shares a factor with the modulus in " + to_string(cls));
    for (Integer c = cls.residue(); c <= limit; c += cls.modulus()) {
        if (is_prime(c))
            return c;
    }
    return std::nullopt;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0)
        fail(ErrorCode::invalid_argument, "multiplicative_order: " + std::to_string(p) + " divides the base");
    std::uint64_t order = p - 1;
    for (auto [ell, e] : factor_trial(p - 1)) {
        for (int i = 0; i < e; ++i) {
            if (powmod(a, order / ell, p) != 1)
                break;
            order /= ell;
        }
    }
    return order;
}

Integer multiplicative_order(const Integer& a, const Integer& p)
{
    if (!is_prime(p))
        fail(ErrorCode::invalid_argument, "multiplicative_order: modulus " + p.get_str() + " is not prime");
    std::uint64_t pp = to_u64(p);
    std::uint64_t aa = to_u64(mod(a, p));
    return Integer(static_cast<unsigned long>(multiplicative_order(aa, pp)));
}

std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0)
        return 0;
    if (p == 2)
        return a;
    if (powmod(a, (p - 1) / 2, p) != 1)
        fail(ErrorCode::invalid_argument,
             "sqrt_mod_prime: " + std::to_string(a) + " is not a square mod " + std::to_string(p));
    if (p % 4 == 3)
        return powmod(a, (p + 1) / 4, p);

    std::uint64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t x = powmod(a, (q + 1) / 2, p);
    std::uint64_t t = powmod(a, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        std::uint64_t t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        std::uint64_t b = c;
        for (int j = 0; j < m - i - 1; ++j)
            b = mulmod(b, b, p);
        x = mulmod(x, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return x;
}

std::optional<Rational> rational_sqrt(const Rational& x)
{
    if (x < 0)
        return std::nullopt;
    const mpz_srcptr num = x.get_num_mpz_t();
    const mpz_srcptr den = x.get_den_mpz_t();
    if (!mpz_perfect_square_p(num) || !mpz_perfect_square_p(den))
        return std::nullopt;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), num);
    mpz_sqrt(d.get_mpz_t(), den);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::uint64_t to_u64(const Integer& n)
{
    if (n < 0 || !n.fits_ulong_p())
        fail(ErrorCode::invalid_argument, "value " + n.get_str() + " does not fit an unsigned 64-bit word");
    return static_cast<std::uint64_t>(n.get_ui());
}

std::int64_t to_i64(const Integer& n)
{
    if (!n.fits_slong_p())
        fail(ErrorCode::invalid_argument, "value " + n.get_str() + " does not fit a signed 64-bit word");
    return static_cast<std::int64_t>(n.get_si());
}

}  // namespace bqf
