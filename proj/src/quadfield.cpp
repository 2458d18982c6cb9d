#include "bqf/quadfield.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bqf {

namespace {

Integer isqrt(const Integer& n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Largest discriminant the form enumeration accepts; well past desk scale
// and far from int64 overflow in b^2 - D.
constexpr std::int64_t max_form_discriminant = 1'000'000'000'000LL;

}  // namespace

QuadField::QuadField(Integer m) : m_(std::move(m))
{
    if (m_ <= 1 || !is_squarefree(m_))
        fail(ErrorCode::invalid_argument, "quadratic field radicand must be squarefree and > 1, got " + m_.get_str());
    disc_ = mod(m_, Integer(4)) == 1 ? m_ : Integer(4 * m_);
}

QuadElem::QuadElem(Integer m, Rational x, Rational y) : m_(std::move(m)), x_(std::move(x)), y_(std::move(y))
{
    x_.canonicalize();
    y_.canonicalize();
}

void QuadElem::check_same_field(const QuadElem& other) const
{
    if (m_ != other.m_)
        fail(ErrorCode::invalid_argument,
             "mixing elements of Q(sqrt " + m_.get_str() + ") and Q(sqrt " + other.m_.get_str() + ")");
}

QuadElem QuadElem::inverse() const
{
    Rational n = norm();
    if (n == 0)
        fail(ErrorCode::invalid_argument, "inverse of zero in Q(sqrt " + m_.get_str() + ")");
    return {m_, x_ / n, -y_ / n};
}

int QuadElem::sign() const
{
    int sx = sgn(x_);
    int sy = sgn(y_);
    if (sy == 0)
        return sx;
    if (sx == 0 || sx == sy)
        return sy;
    // Opposite signs: the larger magnitude wins.
    Rational lhs = x_ * x_;
    Rational rhs = m_ * y_ * y_;
    return lhs > rhs ? sx : sy;
}

QuadElem operator+(const QuadElem& a, const QuadElem& b)
{
    a.check_same_field(b);
    return {a.m_, a.x_ + b.x_, a.y_ + b.y_};
}

QuadElem operator-(const QuadElem& a, const QuadElem& b)
{
    a.check_same_field(b);
    return {a.m_, a.x_ - b.x_, a.y_ - b.y_};
}

QuadElem operator*(const QuadElem& a, const QuadElem& b)
{
    a.check_same_field(b);
    return {a.m_, a.x_ * b.x_ + a.m_ * a.y_ * b.y_, a.x_ * b.y_ + a.y_ * b.x_};
}

QuadElem operator*(const Rational& a, const QuadElem& b)
{
    return {b.m_, a * b.x_, a * b.y_};
}

QuadElem operator/(const QuadElem& a, const QuadElem& b)
{
    return a * b.inverse();
}

bool operator==(const QuadElem& a, const QuadElem& b)
{
    return a.m_ == b.m_ && a.x_ == b.x_ && a.y_ == b.y_;
}

QuadElem pow(const QuadElem& base, unsigned exp)
{
    QuadElem result(base.radicand(), 1);
    QuadElem b = base;
    while (exp > 0) {
        if (exp & 1)
            result = result * b;
        b = b * b;
        exp >>= 1;
    }
    return result;
}

bool is_fundamental_discriminant(const Integer& d)
{
    Integer r = mod(d, Integer(4));
    if (r == 1)
        return d != 1 && is_squarefree(d);
    if (r != 0)
        return false;
    Integer m = d / 4;
    Integer mr = mod(m, Integer(4));
    return (mr == 2 || mr == 3) && is_squarefree(m);
}

Integer conductor_quad(const QuadField& field)
{
    return field.discriminant();
}

FundamentalUnit fundamental_unit(const QuadField& field)
{
    // Continued fraction of theta = (P0 + sqrt D)/Q0 with Q0 = 2. With
    // convergents A/B and G = Q0*A - P0*B, the element (G + B sqrt D)/Q0 has
    // norm (-1)^(i+1) Q_(i+1)/Q0, so the first return to Q = Q0 yields the
    // smallest unit of the maximal order above 1.
    const Integer& D = field.discriminant();
    const Integer& m = field.radicand();
    const Integer s = isqrt(D);
    const Integer P0 = mpz_odd_p(D.get_mpz_t()) ? 1 : 0;
    const Integer Q0 = 2;

    Integer P = P0, Q = Q0;
    // Convergent recurrences seeded with A_{-2}, A_{-1} and B_{-2}, B_{-1}.
    Integer A_prev = 0, A = 1;
    Integer B_prev = 1, B = 0;

    for (std::size_t i = 0;; ++i) {
        Integer a = Q > 0 ? floor_div(P + s, Q) : floor_div(P + s + 1, Q);
        Integer A_next = a * A + A_prev;
        Integer B_next = a * B + B_prev;
        A_prev = std::move(A);
        A = std::move(A_next);
        B_prev = std::move(B);
        B = std::move(B_next);

        Integer P_next = a * Q - P;
        Integer Q_next = (D - P_next * P_next) / Q;
        P = std::move(P_next);
        Q = std::move(Q_next);

        if (Q == Q0 && mod(P - P0, Q0) == 0) {
            Integer G = Q0 * A - P0 * B;
            // sqrt D = 2 sqrt m when D = 4m.
            QuadElem unit = D == m ? QuadElem(m, Rational(G, 2), Rational(B, 2))
                                   : QuadElem(m, Rational(G, 2), Rational(B));
            Rational n = unit.norm();
            if (!(n == 1 || n == -1) || unit.x() <= 0 || unit.y() <= 0)
                fail(ErrorCode::internal, "fundamental_unit: continued fraction produced a non-unit for m = " + m.get_str());
            return {unit, n == 1 ? 1 : -1};
        }
        if (i > 100'000'000)
            fail(ErrorCode::internal, "fundamental_unit: period not found for m = " + m.get_str());
    }
}

bool is_reduced(const QuadForm& f)
{
    const Integer D = f.discriminant();
    if (D <= 0)
        return false;
    const Integer s = isqrt(D);
    if (s * s == D)
        return false;
    // sqrt D irrational: b < sqrt D <=> b <= s, and sqrt D - b < 2|a| <=> 2|a| > s - b.
    Integer two_a = 2 * abs(f.a);
    return f.b > 0 && f.b <= s && two_a > s - f.b && two_a <= s + f.b;
}

std::vector<QuadForm> reduced_forms(const Integer& disc)
{
    if (disc <= 0 || disc > max_form_discriminant)
        fail(ErrorCode::invalid_argument, "reduced_forms: discriminant out of range: " + disc.get_str());
    const std::int64_t D = to_i64(disc);
    const std::int64_t s = to_i64(isqrt(disc));
    if (s * s == D)
        fail(ErrorCode::invalid_argument, "reduced_forms: square discriminant " + disc.get_str());

    std::vector<QuadForm> forms;
    for (std::int64_t b = (D % 2 == 0 ? 2 : 1); b <= s; b += 2) {
        const std::int64_t num = b * b - D;  // = 4ac < 0
        for (std::int64_t abs_a = (s - b) / 2 + 1; 2 * abs_a <= s + b; ++abs_a) {
            if (num % (4 * abs_a) != 0)
                continue;
            const std::int64_t c = num / (4 * abs_a);
            if (std::gcd(std::gcd(abs_a, b), c) != 1)
                continue;  // imprimitive
            forms.push_back({Integer(static_cast<long>(abs_a)), Integer(static_cast<long>(b)), Integer(static_cast<long>(c))});
            forms.push_back({Integer(static_cast<long>(-abs_a)), Integer(static_cast<long>(b)), Integer(static_cast<long>(-c))});
        }
    }
    std::sort(forms.begin(), forms.end());
    return forms;
}

QuadForm rho(const QuadForm& f)
{
    const Integer D = f.discriminant();
    const Integer s = isqrt(D);
    const Integer two_c = 2 * abs(f.c);
    Integer b = s - mod(s + f.b, two_c);
    Integer c = (b * b - D) / (4 * f.c);
    return {f.c, b, c};
}

std::vector<std::vector<QuadForm>> form_cycles(const Integer& disc)
{
    std::vector<QuadForm> forms = reduced_forms(disc);
    std::map<QuadForm, bool> seen;
    for (const QuadForm& f : forms)
        seen.emplace(f, false);

    std::vector<std::vector<QuadForm>> cycles;
    for (const QuadForm& start : forms) {
        if (seen.at(start))
            continue;
        std::vector<QuadForm> cycle;
        QuadForm f = start;
        do {
            auto it = seen.find(f);
            if (it == seen.end() || it->second)
                fail(ErrorCode::internal, "form_cycles: reduction step left the reduced set at D = " + disc.get_str());
            it->second = true;
            cycle.push_back(f);
            f = rho(f);
        } while (!(f == start));
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

Integer narrow_class_number(const Integer& disc)
{
    const Integer r = mod(disc, Integer(4));
    if (disc <= 0 || (r != 0 && r != 1) || mpz_perfect_square_p(disc.get_mpz_t()))
        fail(ErrorCode::invalid_argument,
             "narrow_class_number: " + disc.get_str() + " is not a positive non-square discriminant");
    return Integer(static_cast<unsigned long>(form_cycles(disc).size()));
}

Integer class_number_quad(const QuadField& field)
{
    Integer h_plus = narrow_class_number(field.discriminant());
    if (fundamental_unit(field).norm == -1)
        return h_plus;
    if (mpz_odd_p(h_plus.get_mpz_t()))
        fail(ErrorCode::internal, "class_number_quad: odd narrow class number with a norm +1 unit at m = " +
                                      field.radicand().get_str());
    return h_plus / 2;
}

namespace {

QuadElem canonical_sign(QuadElem r)
{
    if (r.x() < 0 || (r.x() == 0 && r.y() < 0))
        return -r;
    return r;
}

}  // namespace

std::optional<QuadElem> quad_is_square(const QuadElem& e)
{
    if (e.is_zero())
        fail(ErrorCode::invalid_argument, "quad_is_square: zero element");
    const Integer& m = e.radicand();

    if (e.y() == 0) {
        if (auto r = rational_sqrt(e.x()))
            return QuadElem(m, *r, 0);
        if (auto t = rational_sqrt(e.x() / m))
            return QuadElem(m, 0, *t);
        return std::nullopt;
    }

    // (u + v sqrt m)^2 = e  =>  |u^2 - m v^2| = sqrt N(e) and u^2 = (x +- n)/2.
    auto n = rational_sqrt(e.norm());
    if (!n)
        return std::nullopt;
    for (const Rational& cand : {Rational((e.x() + *n) / 2), Rational((e.x() - *n) / 2)}) {
        auto u = rational_sqrt(cand);
        if (!u || *u == 0)
            continue;
        QuadElem root(m, *u, e.y() / (2 * *u));
        if (root * root == e)
            return canonical_sign(root);
    }
    return std::nullopt;
}

}  // namespace bqf
