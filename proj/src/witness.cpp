#include "bqf/witness.hpp"

#include <algorithm>
#include <cmath>

#include "bqf/parallel.hpp"

namespace bqf {

AuxPrime pollack_prime(const Integer& p)
{
    if (!is_prime(p) || p < 3)
        fail(ErrorCode::invalid_argument, "pollack_prime: expected an odd prime, got " + p.get_str());
    if (p == 3)
        return {Integer(2), true};
    for (Integer t = 3; t < p; t += 4) {
        if (is_prime(t) && jacobi(t, p) == -1)
            return {t, false};
    }
    fail(ErrorCode::internal, "pollack_prime: no prime 3 mod 4 below " + p.get_str() + " is a non-residue");
}

namespace {

struct FamilySetup {
    std::array<Integer, 3> numerators;  // symbols (n/w) checked on the witness
    std::vector<Integer> moduli;        // odd primes carrying an auxiliary prime
    Integer power_of_two_modulus;       // 4 or 8
    Integer power_of_two_residue;       // 3 or 7
};

FamilySetup setup_for(Family family, const FamilyPrimes& fp)
{
    switch (family) {
    case Family::q3:
        return {{fp.q, fp.k, fp.r}, {fp.q, fp.k, fp.r}, Integer(4), Integer(3)};
    case Family::sqrt2:
        return {{Integer(2), fp.k, fp.r}, {fp.k, fp.r}, Integer(8), Integer(7)};
    default:
        fail(ErrorCode::family_not_covered, "certificates cover the q3 and sqrt2 families only");
    }
}

std::vector<AuxPrime> aux_primes_for(const FamilySetup& setup)
{
    std::vector<AuxPrime> aux;
    for (const Integer& m : setup.moduli)
        aux.push_back(pollack_prime(m));
    return aux;
}

ResidueClass solve_system(const FamilySetup& setup, const std::vector<AuxPrime>& aux)
{
    if (aux.size() != setup.moduli.size())
        fail(ErrorCode::invalid_argument, "expected " + std::to_string(setup.moduli.size()) + " auxiliary primes");
    std::vector<ResidueClass> system;
    for (std::size_t i = 0; i < aux.size(); ++i)
        system.emplace_back(aux[i].prime, setup.moduli[i]);
    system.emplace_back(setup.power_of_two_residue, setup.power_of_two_modulus);
    return crt_solve(system);
}

// (n/w) read off from w = x0 through reciprocity and the supplement for 2.
int reciprocity_value(const Integer& n, const Integer& w, const ResidueClass& x0)
{
    if (n == 2) {
        long r = mod(w, Integer(8)).get_si();
        return (r == 1 || r == 7) ? 1 : -1;
    }
    Integer a = (n - 1) / 2, b = (w - 1) / 2;
    int sign = mpz_odd_p(Integer(a * b).get_mpz_t()) ? -1 : 1;
    return sign * jacobi(mod(x0.residue(), n), n);
}

std::vector<JacobiCheck> jacobi_checks(const FamilySetup& setup, const Integer& w, const ResidueClass& x0)
{
    static constexpr int expected[3] = {1, -1, -1};
    std::vector<JacobiCheck> checks;
    for (int i = 0; i < 3; ++i) {
        const Integer& n = setup.numerators[i];
        checks.push_back({n, w, expected[i], jacobi(n, w), reciprocity_value(n, w, x0)});
    }
    return checks;
}

Integer half_of_u_minus_1(const Integer& u)
{
    return (u - 1) / 2;
}

}  // namespace

Certificate build_certificate(const BiquadField& field, const BuildOptions& options)
{
    if (field.family() != Family::q3 && field.family() != Family::sqrt2)
        fail(ErrorCode::family_not_covered, "build_certificate: family not covered for " + field.multiquad().name() +
                                                " (family " + to_string(field.family()) + ")");
    Certificate cert;
    cert.family = field.family();
    cert.primes = *field.family_primes();
    cert.h = class_number_biquad(field);
    if (cert.h != 2)
        fail(ErrorCode::class_number_not_two, "build_certificate: class number not 2 (h = " + cert.h.get_str() +
                                                  ") for " + field.multiquad().name());
    cert.l = lcm(Integer(16), conductor_multiquad(field.multiquad()));

    const FamilySetup setup = setup_for(cert.family, cert.primes);
    cert.aux_primes = aux_primes_for(setup);
    cert.x0 = solve_system(setup, cert.aux_primes);

    auto w = first_prime_in_ap(cert.x0, options.search_limit);
    if (!w)
        fail(ErrorCode::search_exhausted, "build_certificate: search bound exhausted: no prime = " + to_string(cert.x0) +
                                              " up to " + options.search_limit.get_str());
    cert.w = *w;
    cert.u = cert.w;
    cert.checks.gcd_u = gcd(cert.u, cert.l);
    cert.checks.gcd_u_minus_1_half = gcd(half_of_u_minus_1(cert.u), cert.l);
    cert.checks.jacobi = jacobi_checks(setup, cert.w, cert.x0);

    VerificationReport report = verify_certificate(cert);
    if (!report.valid) {
        for (const CheckEntry& c : report.checks) {
            if (!c.ok)
                fail(ErrorCode::internal, "build_certificate: produced an invalid certificate: " + c.name + ": " + c.detail);
        }
    }
    return cert;
}

VerificationReport verify_certificate(const Certificate& cert)
{
    VerificationReport report;
    auto add = [&](std::string name, bool ok, std::string detail) {
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    auto guarded = [&](const std::string& name, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            add(name, false, e.what());
        }
    };

    const FamilyPrimes& fp = cert.primes;
    std::optional<BiquadField> field;
    guarded("family", [&] {
        BiquadField k = BiquadField::from_family(fp.q, fp.k, fp.r);
        bool ok = k.family() == cert.family && (cert.family == Family::q3 || cert.family == Family::sqrt2);
        add("family", ok, "declared " + to_string(cert.family) + ", primes give " + to_string(k.family()));
        if (ok)
            field = std::move(k);
    });
    if (!field) {
        report.valid = false;
        return report;
    }
    const FamilySetup setup = setup_for(cert.family, fp);

    guarded("class_number", [&] {
        Integer h = class_number_biquad(*field);
        add("class_number", h == 2 && cert.h == 2, "recorded " + cert.h.get_str() + ", recomputed " + h.get_str());
    });

    const Integer l = lcm(Integer(16), conductor_multiquad(field->multiquad()));
    add("l", cert.l == l, "recorded " + cert.l.get_str() + ", lcm(16, f(K)) = " + l.get_str());

    std::vector<AuxPrime> aux;
    guarded("aux_primes", [&] {
        aux = aux_primes_for(setup);
        bool ok = aux.size() == cert.aux_primes.size();
        std::string detail;
        for (std::size_t i = 0; i < aux.size(); ++i) {
            if (ok)
                ok = aux[i].prime == cert.aux_primes[i].prime && aux[i].fallback == cert.aux_primes[i].fallback;
            detail += (i ? ", " : "") + aux[i].prime.get_str() + (aux[i].fallback ? "*" : "");
        }
        add("aux_primes", ok, "expected (" + detail + ")");
    });

    guarded("x0", [&] {
        if (aux.empty())
            fail(ErrorCode::invalid_argument, "auxiliary primes unavailable");
        ResidueClass x0 = solve_system(setup, aux);
        add("x0", x0 == cert.x0, "recorded " + to_string(cert.x0) + ", recomputed " + to_string(x0));
    });

    add("w_prime", is_prime(cert.w), "w = " + cert.w.get_str());
    add("w_in_class", cert.x0.contains(cert.w), cert.w.get_str() + " against " + to_string(cert.x0));
    add("u_equals_w", cert.u == cert.w, "u = " + cert.u.get_str());

    const Integer g1 = gcd(cert.u, l);
    add("gcd_u", g1 == 1 && cert.checks.gcd_u == g1,
        "gcd(" + cert.u.get_str() + ", " + l.get_str() + ") = " + g1.get_str() + ", recorded " + cert.checks.gcd_u.get_str());

    if (mpz_odd_p(cert.u.get_mpz_t())) {
        const Integer g2 = gcd(half_of_u_minus_1(cert.u), l);
        add("gcd_u_minus_1_half", g2 == 1 && cert.checks.gcd_u_minus_1_half == g2,
            "gcd((u-1)/2, " + l.get_str() + ") = " + g2.get_str() + ", recorded " +
                cert.checks.gcd_u_minus_1_half.get_str());
    } else {
        add("gcd_u_minus_1_half", false, "u = " + cert.u.get_str() + " is even, (u-1)/2 is not an integer");
    }

    add("u_congruence", cert.x0.modulus() > 0 && mod(cert.u, setup.power_of_two_modulus) == setup.power_of_two_residue,
        "u mod " + setup.power_of_two_modulus.get_str() + " = " + mod(cert.u, setup.power_of_two_modulus).get_str() +
            ", need " + setup.power_of_two_residue.get_str());

    guarded("jacobi", [&] {
        std::vector<JacobiCheck> checks = jacobi_checks(setup, cert.w, cert.x0);
        bool ok = checks.size() == cert.checks.jacobi.size();
        std::string detail;
        for (std::size_t i = 0; i < checks.size(); ++i) {
            const JacobiCheck& c = checks[i];
            ok = ok && c.direct == c.expected && c.via_reciprocity == c.expected;
            if (ok) {
                const JacobiCheck& r = cert.checks.jacobi[i];
                ok = r.numerator == c.numerator && r.denominator == c.denominator && r.expected == c.expected &&
                     r.direct == c.direct && r.via_reciprocity == c.via_reciprocity;
            }
            detail += (i ? ", " : "") + std::string("(") + c.numerator.get_str() + "/" + c.denominator.get_str() +
                      ") = " + std::to_string(c.direct) + " [reciprocity " + std::to_string(c.via_reciprocity) +
                      ", want " + std::to_string(c.expected) + "]";
        }
        add("jacobi", ok, detail);
    });

    report.valid = std::all_of(report.checks.begin(), report.checks.end(), [](const CheckEntry& c) { return c.ok; });
    return report;
}

// ---------------------------------------------------------------------------
// Degree-one primes and unit reduction

namespace {

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p)
{
    return powmod(a, p - 2, p);
}

std::uint64_t reduce_rational(const Rational& x, std::uint64_t p)
{
    const unsigned long pp = static_cast<unsigned long>(p);
    std::uint64_t den = mpz_fdiv_ui(x.get_den_mpz_t(), pp);
    if (den == 0)
        fail(ErrorCode::invalid_argument, "reduce: denominator divisible by " + std::to_string(p));
    std::uint64_t num = mpz_fdiv_ui(x.get_num_mpz_t(), pp);
    return mulmod(num, inverse_mod(den, p), p);
}

void check_embedding(const SplitPrimeEmbedding& emb, const BiquadField& field)
{
    const auto rad = field.radicands();
    if (emb.p < 3)
        fail(ErrorCode::not_completely_split, "embedding needs an odd prime");
    for (int i = 0; i < 3; ++i) {
        std::uint64_t m = mpz_fdiv_ui(rad[i].get_mpz_t(), static_cast<unsigned long>(emb.p));
        if (m == 0 || mulmod(emb.roots[i], emb.roots[i], emb.p) != m)
            fail(ErrorCode::not_completely_split, "embedding at " + std::to_string(emb.p) + " has no square root of " +
                                                      rad[i].get_str());
    }
}

}  // namespace

SplitPrimeEmbedding make_embedding(std::uint64_t p, const BiquadField& field, bool negate_s1, bool negate_s2)
{
    if (p < 3 || !is_prime(p))
        fail(ErrorCode::invalid_argument, "make_embedding: expected an odd prime, got " + std::to_string(p));
    SplitData sd = splitting_data(Integer(static_cast<unsigned long>(p)), field.multiquad());
    if (sd.e != 1 || sd.f != 1)
        fail(ErrorCode::not_completely_split, "make_embedding: " + std::to_string(p) + " is not completely split in " +
                                                  field.multiquad().name());
    const unsigned long pp = static_cast<unsigned long>(p);
    std::uint64_t s1 = sqrt_mod_prime(mpz_fdiv_ui(field.m1().get_mpz_t(), pp), p);
    std::uint64_t s2 = sqrt_mod_prime(mpz_fdiv_ui(field.m2().get_mpz_t(), pp), p);
    if (negate_s1)
        s1 = p - s1;
    if (negate_s2)
        s2 = p - s2;
    std::uint64_t g = mpz_fdiv_ui(gcd(field.m1(), field.m2()).get_mpz_t(), pp);
    std::uint64_t s3 = mulmod(mulmod(s1, s2, p), inverse_mod(g, p), p);
    SplitPrimeEmbedding emb{p, {s1, s2, s3}};
    check_embedding(emb, field);
    return emb;
}

std::array<SplitPrimeEmbedding, 4> all_embeddings(std::uint64_t p, const BiquadField& field)
{
    return {make_embedding(p, field, false, false), make_embedding(p, field, true, false),
            make_embedding(p, field, false, true), make_embedding(p, field, true, true)};
}

std::uint64_t reduce(const QuartElem& e, const SplitPrimeEmbedding& emb)
{
    const auto& c = e.coords();
    std::uint64_t acc = reduce_rational(c[0], emb.p);
    for (int i = 0; i < 3; ++i)
        acc = (acc + mulmod(reduce_rational(c[i + 1], emb.p), emb.roots[i], emb.p)) % emb.p;
    return acc;
}

SurjectivityResult unit_surjectivity(const SplitPrimeEmbedding& emb, const BiquadField& field)
{
    const auto rad = field.radicands();
    return unit_surjectivity(emb, field, {fundamental_unit(QuadField(rad[0])), fundamental_unit(QuadField(rad[1])),
                                          fundamental_unit(QuadField(rad[2]))});
}

SurjectivityResult unit_surjectivity(const SplitPrimeEmbedding& emb, const BiquadField& field,
                                     const std::array<FundamentalUnit, 3>& units)
{
    check_embedding(emb, field);
    const std::uint64_t p = emb.p;
    SurjectivityResult result;
    for (int i = 0; i < 3; ++i) {
        const QuadElem& eps = units[i].unit;
        std::uint64_t r = (reduce_rational(eps.x(), p) + mulmod(reduce_rational(eps.y(), p), emb.roots[i], p)) % p;
        UnitSurjectivity& u = result.units[i];
        u.residue = r;
        u.order = multiplicative_order(r, p);
        // <-1, e> in a cyclic group of order p - 1 has order lcm(2, ord e).
        std::uint64_t generated = u.order % 2 == 0 ? u.order : 2 * u.order;
        u.onto = generated == p - 1;
        result.onto = result.onto || u.onto;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Growth audit

GrowthReport growth_audit(const BiquadField& field, const Certificate& cert, std::vector<std::uint64_t> bounds,
                          unsigned workers)
{
    VerificationReport vr = verify_certificate(cert);
    if (!vr.valid) {
        std::string why;
        for (const CheckEntry& c : vr.checks) {
            if (!c.ok) {
                why = c.name + ": " + c.detail;
                break;
            }
        }
        fail(ErrorCode::invalid_argument, "growth_audit: certificate invalid (" + why + ")");
    }
    if (!(BiquadField::from_family(cert.primes.q, cert.primes.k, cert.primes.r).multiquad() == field.multiquad()))
        fail(ErrorCode::invalid_argument, "growth_audit: certificate belongs to a different field");
    if (bounds.empty())
        fail(ErrorCode::invalid_argument, "growth_audit: no bounds given");
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    const MultiquadField hilbert = hilbert_class_field(field, cert.h);
    const auto rad = field.radicands();
    const std::array<FundamentalUnit, 3> units{fundamental_unit(QuadField(rad[0])), fundamental_unit(QuadField(rad[1])),
                                               fundamental_unit(QuadField(rad[2]))};

    GrowthReport report;
    report.u = cert.u;
    report.l = cert.l;
    const std::vector<Integer> candidates =
        primes_in_ap(ResidueClass(cert.u, cert.l), Integer(static_cast<unsigned long>(bounds.back())));
    report.primes.resize(candidates.size());

    parallel_chunks(candidates.size(), 32, workers, [&](std::size_t b, std::size_t e, std::size_t) {
        for (std::size_t i = b; i < e; ++i) {
            GrowthPrime& gp = report.primes[i];
            gp.p = to_u64(candidates[i]);
            SplitData sd = splitting_data(candidates[i], field.multiquad());
            gp.degree_one = sd.e == 1 && sd.f == 1;
            if (!gp.degree_one)
                continue;
            gp.nonprincipal = is_nonprincipal_split_prime(candidates[i], field, hilbert);
            bool first = true;
            for (const SplitPrimeEmbedding& emb : all_embeddings(gp.p, field)) {
                SurjectivityResult sr = unit_surjectivity(emb, field, units);
                if (first) {
                    gp.surjective = sr.onto;
                    for (int j = 0; j < 3; ++j) {
                        if (sr.units[j].onto) {
                            gp.surjective_unit = j;
                            break;
                        }
                    }
                    first = false;
                } else if (sr.onto != gp.surjective) {
                    gp.embeddings_agree = false;
                    gp.surjective = true;
                }
            }
        }
    });

    for (std::uint64_t x : bounds) {
        GrowthCheckpoint cp;
        cp.x = x;
        for (const GrowthPrime& gp : report.primes) {
            if (gp.p <= x && gp.degree_one && gp.nonprincipal && gp.surjective)
                ++cp.count;
        }
        const double lx = std::log(static_cast<double>(x));
        cp.ratio = static_cast<double>(cp.count) * lx * lx / static_cast<double>(x);
        report.checkpoints.push_back(cp);
    }
    return report;
}

}  // namespace bqf
