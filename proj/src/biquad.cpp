#include "bqf/biquad.hpp"

#include <algorithm>
#include <set>

namespace bqf {

Integer squarefree_product(const Integer& a, const Integer& b)
{
    Integer g = gcd(a, b);
    return (a / g) * (b / g);
}

// ---------------------------------------------------------------------------
// MultiquadField

MultiquadField::MultiquadField(std::vector<Integer> generators) : generators_(std::move(generators))
{
    if (generators_.size() > 16)
        fail(ErrorCode::invalid_argument, "multiquadratic field with more than 16 generators");
    for (const Integer& m : generators_) {
        if (m <= 1 || !is_squarefree(m))
            fail(ErrorCode::invalid_argument, "radicand must be squarefree and > 1, got " + m.get_str());
    }
    const std::size_t count = (std::size_t{1} << generators_.size()) - 1;
    subfields_.reserve(count);
    for (std::size_t mask = 1; mask <= count; ++mask) {
        Integer m = 1;
        for (std::size_t i = 0; i < generators_.size(); ++i) {
            if (mask & (std::size_t{1} << i))
                m = squarefree_product(m, generators_[i]);
        }
        subfields_.push_back(m);
    }
    std::set<Integer> distinct(subfields_.begin(), subfields_.end());
    if (distinct.size() != subfields_.size() || distinct.count(Integer(1)) != 0)
        fail(ErrorCode::invalid_argument, "radicands of " + name() + " are not multiplicatively independent");
}

bool MultiquadField::has_subfield(const Integer& m) const
{
    return std::find(subfields_.begin(), subfields_.end(), m) != subfields_.end();
}

std::string MultiquadField::name() const
{
    if (generators_.empty())
        return "Q";
    std::string s = "Q(";
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (i > 0)
            s += ", ";
        s += "sqrt " + generators_[i].get_str();
    }
    return s + ")";
}

bool operator==(const MultiquadField& a, const MultiquadField& b)
{
    std::set<Integer> sa(a.subfields_.begin(), a.subfields_.end());
    std::set<Integer> sb(b.subfields_.begin(), b.subfields_.end());
    return sa == sb;
}

SubfieldTriple subfield_radicands(const Integer& a, const Integer& b)
{
    if (a <= 1 || b <= 1 || !is_squarefree(a) || !is_squarefree(b))
        fail(ErrorCode::invalid_argument, "subfield_radicands: inputs must be squarefree and > 1");
    if (a == b)
        fail(ErrorCode::invalid_argument, "subfield_radicands: equal radicands " + a.get_str());
    return {a, b, squarefree_product(a, b)};
}

// ---------------------------------------------------------------------------
// Families

std::string to_string(Family family)
{
    switch (family) {
    case Family::q3: return "q3";
    case Family::sqrt2: return "sqrt2";
    case Family::hsu: return "hsu";
    case Family::other: return "other";
    }
    return "other";
}

std::optional<Family> parse_family(const std::string& tag)
{
    if (tag == "q3")
        return Family::q3;
    if (tag == "sqrt2")
        return Family::sqrt2;
    if (tag == "hsu")
        return Family::hsu;
    if (tag == "other")
        return Family::other;
    return std::nullopt;
}

namespace {

bool one_mod_four(const Integer& p)
{
    return mod(p, Integer(4)) == 1;
}

// Family of Q(sqrt q, sqrt kr) for primes q and k != r.
Family classify(const Integer& q, const Integer& k, const Integer& r)
{
    if (k == r || !one_mod_four(k) || !one_mod_four(r))
        return Family::other;
    if (q == 2)
        return Family::sqrt2;
    if (mod(q, Integer(4)) == 3)
        return Family::q3;
    if (q != k && q != r)
        return Family::hsu;
    return Family::other;
}

// Splits n into two distinct primes, smaller first.
std::optional<std::pair<Integer, Integer>> two_prime_factors(const Integer& n)
{
    if (n < 6 || !n.fits_ulong_p())
        return std::nullopt;
    auto factors = factor_trial(n.get_ui());
    if (factors.size() != 2 || factors[0].second != 1 || factors[1].second != 1)
        return std::nullopt;
    return std::pair<Integer, Integer>(Integer(static_cast<unsigned long>(factors[0].first)),
                                       Integer(static_cast<unsigned long>(factors[1].first)));
}

}  // namespace

BiquadField::BiquadField(Integer a, Integer b) : field_({std::move(a), std::move(b)})
{
    const Integer& x = field_.generators()[0];
    const Integer& y = field_.generators()[1];
    for (const auto& [q, kr] : {std::pair{x, y}, std::pair{y, x}}) {
        if (!is_prime(q))
            continue;
        if (auto f = two_prime_factors(kr)) {
            Family fam = classify(q, f->first, f->second);
            if (fam != Family::other) {
                family_ = fam;
                primes_ = FamilyPrimes{q, f->first, f->second};
                return;
            }
        }
    }
}

BiquadField BiquadField::from_family(const Integer& q, const Integer& k, const Integer& r)
{
    for (const Integer* p : {&q, &k, &r}) {
        if (!is_prime(*p))
            fail(ErrorCode::invalid_argument, "family generator " + p->get_str() + " is not prime");
    }
    if (k == r)
        fail(ErrorCode::invalid_argument, "k and r must be distinct, got " + k.get_str() + " twice");
    BiquadField field(q, k * r);
    Family fam = classify(q, k, r);
    field.family_ = fam;
    if (fam == Family::other)
        field.primes_.reset();
    else
        field.primes_ = FamilyPrimes{q, k, r};
    return field;
}

// ---------------------------------------------------------------------------
// QuartElem

namespace {

std::array<Rational, 4> canonical(std::array<Rational, 4> c)
{
    for (Rational& x : c)
        x.canonicalize();
    return c;
}

}  // namespace

QuartElem::QuartElem(Basis basis, std::array<Rational, 4> coords) : basis_(std::move(basis)), c_(canonical(std::move(coords))) {}

QuartElem::QuartElem(const BiquadField& field, std::array<Rational, 4> coords)
    : QuartElem(Basis{field.m1(), field.m2(), field.m3(), gcd(field.m1(), field.m2())}, std::move(coords))
{
}

QuartElem::QuartElem(const BiquadField& field, const Rational& value)
    : QuartElem(field, std::array<Rational, 4>{value, 0, 0, 0})
{
}

QuartElem QuartElem::embed(const BiquadField& field, int subfield, const QuadElem& e)
{
    if (subfield < 0 || subfield > 2 || e.radicand() != field.radicands()[subfield])
        fail(ErrorCode::invalid_argument, "embed: element of Q(sqrt " + e.radicand().get_str() +
                                              ") is not in subfield slot " + std::to_string(subfield));
    std::array<Rational, 4> c{e.x(), 0, 0, 0};
    c[subfield + 1] = e.y();
    return QuartElem(field, c);
}

bool QuartElem::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

void QuartElem::check_same_field(const QuartElem& other) const
{
    if (!(basis_ == other.basis_))
        fail(ErrorCode::invalid_argument, "mixing elements of different biquadratic fields");
}

QuartElem QuartElem::conjugate(int which) const
{
    std::array<Rational, 4> c = c_;
    switch (which) {
    case 1: c[1] = -c[1]; c[3] = -c[3]; break;
    case 2: c[2] = -c[2]; c[3] = -c[3]; break;
    case 3: c[1] = -c[1]; c[2] = -c[2]; break;
    default: break;
    }
    return QuartElem(basis_, c);
}

Rational QuartElem::norm() const
{
    QuartElem n = *this * conjugate(1) * conjugate(2) * conjugate(3);
    if (n.c_[1] != 0 || n.c_[2] != 0 || n.c_[3] != 0)
        fail(ErrorCode::internal, "QuartElem::norm: product of conjugates is not rational");
    return n.c_[0];
}

QuartElem QuartElem::operator-() const
{
    return QuartElem(basis_, {-c_[0], -c_[1], -c_[2], -c_[3]});
}

QuartElem operator+(const QuartElem& a, const QuartElem& b)
{
    a.check_same_field(b);
    return QuartElem(a.basis_, {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2], a.c_[3] + b.c_[3]});
}

QuartElem operator-(const QuartElem& a, const QuartElem& b)
{
    return a + (-b);
}

QuartElem operator*(const QuartElem& a, const QuartElem& b)
{
    a.check_same_field(b);
    const auto& [m1, m2, m3, g] = a.basis_;
    const auto& x = a.c_;
    const auto& y = b.c_;
    // sqrt m1 sqrt m2 = g sqrt m3, sqrt m1 sqrt m3 = (m1/g) sqrt m2,
    // sqrt m2 sqrt m3 = (m2/g) sqrt m1.
    const Rational m1g(m1 / g), m2g(m2 / g);
    return QuartElem(a.basis_, {
        x[0] * y[0] + m1 * x[1] * y[1] + m2 * x[2] * y[2] + m3 * x[3] * y[3],
        x[0] * y[1] + x[1] * y[0] + m2g * (x[2] * y[3] + x[3] * y[2]),
        x[0] * y[2] + x[2] * y[0] + m1g * (x[1] * y[3] + x[3] * y[1]),
        x[0] * y[3] + x[3] * y[0] + g * (x[1] * y[2] + x[2] * y[1]),
    });
}

bool operator==(const QuartElem& a, const QuartElem& b)
{
    return a.basis_ == b.basis_ && a.c_ == b.c_;
}

QuartElem pow(const QuartElem& base, unsigned exp)
{
    QuartElem result = base.one();
    QuartElem b = base;
    while (exp > 0) {
        if (exp & 1)
            result = result * b;
        exp >>= 1;
        if (exp > 0)
            b = b * b;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Square roots through the tower Q(sqrt m1)(sqrt m2)

namespace {

QuartElem canonical_sign(const QuartElem& r)
{
    for (const Rational& x : r.coords()) {
        if (x != 0)
            return x < 0 ? -r : r;
    }
    return r;
}

}  // namespace

std::optional<QuartElem> quart_is_square(const QuartElem& e)
{
    if (e.is_zero())
        fail(ErrorCode::invalid_argument, "quart_is_square: zero element");
    const auto& [m1, m2, m3, g] = e.basis_;
    const auto& c = e.c_;

    // e = y + z sqrt m2 with y, z in F = Q(sqrt m1); c3 sqrt m3 = (c3/g) sqrt m1 sqrt m2.
    const QuadElem y(m1, c[0], c[1]);
    const QuadElem z(m1, c[2], c[3] / g);
    const QuadElem m2_in_f(m1, Rational(m2));

    auto lift = [&](const QuadElem& u, const QuadElem& v) {
        return QuartElem(e.basis_, {u.x(), u.y(), v.x(), v.y() * g});
    };

    if (z.is_zero()) {
        if (auto u = quad_is_square(y))
            return canonical_sign(lift(*u, QuadElem(m1, 0)));
        if (auto v = quad_is_square(y / m2_in_f))
            return canonical_sign(lift(QuadElem(m1, 0), *v));
        return std::nullopt;
    }

    // (u + v sqrt m2)^2 = e  =>  y^2 - m2 z^2 = (u^2 - m2 v^2)^2 and
    // u^2 = (y + n)/2 for one of the two square roots n of the relative norm.
    const QuadElem rel_norm = y * y - m2_in_f * z * z;
    if (rel_norm.is_zero())
        return std::nullopt;
    auto n = quad_is_square(rel_norm);
    if (!n)
        return std::nullopt;
    const Rational half(1, 2);
    for (const QuadElem& cand : {half * (y + *n), half * (y - *n)}) {
        if (cand.is_zero())
            continue;
        auto u = quad_is_square(cand);
        if (!u)
            continue;
        QuadElem v = z / (Rational(2) * *u);
        QuartElem root = lift(*u, v);
        if (root * root == e)
            return canonical_sign(root);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Conductor, unit index, class number

Integer conductor_multiquad(const MultiquadField& field)
{
    Integer f = 1;
    for (const Integer& m : field.subfield_radicands())
        f = lcm(f, conductor_quad(QuadField(m)));
    return f;
}

UnitIndex unit_index(const BiquadField& field)
{
    const auto radicands = field.radicands();
    UnitIndex result{1, {{0, 0, 0}}, {fundamental_unit(QuadField(radicands[0])),
                                      fundamental_unit(QuadField(radicands[1])),
                                      fundamental_unit(QuadField(radicands[2]))}};
    std::array<QuartElem, 3> eps{QuartElem::embed(field, 0, result.units[0].unit),
                                 QuartElem::embed(field, 1, result.units[1].unit),
                                 QuartElem::embed(field, 2, result.units[2].unit)};

    for (int v = 1; v < 8; ++v) {
        QuartElem prod(field, Rational(1));
        for (int i = 0; i < 3; ++i) {
            if (v & (1 << i))
                prod = prod * eps[i];
        }
        // A square in a totally real field is totally positive, so at most
        // one sign can succeed; the vector is counted once either way.
        if (quart_is_square(prod) || quart_is_square(-prod))
            result.vectors.push_back({v & 1, (v >> 1) & 1, (v >> 2) & 1});
    }
    result.index = static_cast<int>(result.vectors.size());

    // The square classes must form a subgroup of (Z/2)^3.
    std::set<int> masks;
    for (const auto& vec : result.vectors)
        masks.insert(vec[0] | vec[1] << 1 | vec[2] << 2);
    for (int a : masks) {
        for (int b : masks) {
            if (!masks.count(a ^ b))
                fail(ErrorCode::internal, "unit_index: square exponent vectors are not a subgroup");
        }
    }
    return result;
}

BiquadInvariants biquad_invariants(const BiquadField& field)
{
    const auto radicands = field.radicands();
    std::array<Integer, 3> h;
    for (int i = 0; i < 3; ++i)
        h[i] = class_number_quad(QuadField(radicands[i]));
    UnitIndex units = unit_index(field);
    Integer product = units.index * h[0] * h[1] * h[2];
    if (mod(product, Integer(4)) != 0)
        fail(ErrorCode::internal, "class_number_biquad: Q h1 h2 h3 = " + product.get_str() + " is not divisible by 4 for " +
                                      field.multiquad().name());
    Integer class_number = product / 4;
    return {std::move(h), std::move(units), std::move(class_number)};
}

Integer class_number_biquad(const BiquadField& field)
{
    return biquad_invariants(field).class_number;
}

MultiquadField hilbert_class_field(const BiquadField& field)
{
    if (field.family() == Family::other)
        fail(ErrorCode::family_not_covered, "hilbert_class_field: family not covered for " + field.multiquad().name());
    return hilbert_class_field(field, class_number_biquad(field));
}

MultiquadField hilbert_class_field(const BiquadField& field, const Integer& class_number)
{
    if (field.family() == Family::other || !field.family_primes())
        fail(ErrorCode::family_not_covered, "hilbert_class_field: family not covered for " + field.multiquad().name());
    if (class_number != 2)
        fail(ErrorCode::class_number_not_two, "hilbert_class_field: class number not 2 (h = " + class_number.get_str() +
                                                  ") for " + field.multiquad().name());
    const FamilyPrimes& fp = *field.family_primes();
    return MultiquadField({fp.q, fp.k, fp.r});
}

// ---------------------------------------------------------------------------
// Ramification and splitting through quadratic characters

namespace {

// Local component at 2 of the character of Q(sqrt m), as bits over the prime
// discriminants -4 (bit 0) and 8 (bit 1).
unsigned two_adic_component(const Integer& m)
{
    if (mpz_odd_p(m.get_mpz_t()))
        return mod(m, Integer(4)) == 1 ? 0u : 1u;
    Integer half = m / 2;
    return mod(half, Integer(4)) == 1 ? 2u : 3u;
}

// Span size of vectors in F_2^2.
int span_size(const std::vector<unsigned>& vecs)
{
    std::set<unsigned> span{0};
    for (unsigned v : vecs) {
        std::set<unsigned> next = span;
        for (unsigned s : span)
            next.insert(s ^ v);
        span = std::move(next);
    }
    return static_cast<int>(span.size());
}

void require_prime(const Integer& p, const char* where)
{
    if (!is_prime(p))
        fail(ErrorCode::invalid_argument, std::string(where) + ": " + p.get_str() + " is not prime");
}

// (D/p) for the discriminant of Q(sqrt m): 0 when p ramifies in it.
int kronecker(const Integer& m, const Integer& p)
{
    if (p == 2)
        return kronecker_at_two(QuadField(m).discriminant());
    return jacobi(m, p);
}

}  // namespace

int ramification_index(const Integer& p, const MultiquadField& field)
{
    require_prime(p, "ramification_index");
    if (p == 2) {
        std::vector<unsigned> comps;
        for (const Integer& m : field.generators())
            comps.push_back(two_adic_component(m));
        return span_size(comps);
    }
    for (const Integer& m : field.generators()) {
        if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()))
            return 2;
    }
    return 1;
}

UnramifiedReport verify_unramified(const MultiquadField& top, const MultiquadField& base)
{
    UnramifiedReport report;
    report.contains_base = std::all_of(base.subfield_radicands().begin(), base.subfield_radicands().end(),
                                       [&](const Integer& m) { return top.has_subfield(m); });
    report.unramified = report.contains_base;
    const Integer f = conductor_multiquad(top);
    for (auto [p, e] : factor_trial(to_u64(f))) {
        Integer pp(static_cast<unsigned long>(p));
        RamificationEntry entry{pp, ramification_index(pp, top), ramification_index(pp, base)};
        if (entry.e_top != entry.e_base)
            report.unramified = false;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

SplitData splitting_data(const Integer& p, const MultiquadField& field)
{
    require_prime(p, "splitting_data");
    SplitData sd;
    sd.p = p;
    sd.radicands = field.subfield_radicands();
    sd.e = ramification_index(p, field);

    // Subfields unramified at p are those of the inertia field; Frobenius
    // there is trivial iff every one of their characters is +1 at p.
    int unramified_subfields = 0;
    bool frobenius_trivial = true;
    for (const Integer& m : sd.radicands) {
        int s = kronecker(m, p);
        sd.pattern.push_back(s);
        if (s != 0) {
            ++unramified_subfields;
            if (s == -1)
                frobenius_trivial = false;
        }
    }
    if (static_cast<unsigned>(unramified_subfields + 1) * static_cast<unsigned>(sd.e) != field.degree())
        fail(ErrorCode::internal, "splitting_data: inertia field size disagrees with e at p = " + p.get_str());
    sd.f = frobenius_trivial ? 1 : 2;
    sd.g = static_cast<int>(field.degree()) / (sd.e * sd.f);
    return sd;
}

bool is_nonprincipal_split_prime(const Integer& p, const BiquadField& field)
{
    return is_nonprincipal_split_prime(p, field, hilbert_class_field(field));
}

bool is_nonprincipal_split_prime(const Integer& p, const BiquadField& field, const MultiquadField& hilbert)
{
    SplitData in_k = splitting_data(p, field.multiquad());
    if (in_k.e != 1 || in_k.f != 1)
        fail(ErrorCode::not_completely_split, "is_nonprincipal_split_prime: " + p.get_str() +
                                                  " is not completely split in " + field.multiquad().name());
    return splitting_data(p, hilbert).f == 2;
}

}  // namespace bqf
