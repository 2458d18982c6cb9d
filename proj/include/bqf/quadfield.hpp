#pragma once

// Real quadratic fields Q(sqrt m): conductor, fundamental unit from the
// continued fraction of the maximal order, narrow and wide class numbers from
// cycles of reduced indefinite forms, and exact element arithmetic.

#include <optional>
#include <vector>

#include "bqf/arith.hpp"

namespace bqf {

class QuadField {
public:
    // m squarefree, m > 1.
    explicit QuadField(Integer m);

    const Integer& radicand() const noexcept { return m_; }
    const Integer& discriminant() const noexcept { return disc_; }

    friend bool operator==(const QuadField& a, const QuadField& b) { return a.m_ == b.m_; }

private:
    Integer m_;
    Integer disc_;
};

// x + y sqrt(m) with rational coordinates.
class QuadElem {
public:
    QuadElem(Integer m, Rational x, Rational y = 0);

    const Integer& radicand() const noexcept { return m_; }
    const Rational& x() const noexcept { return x_; }
    const Rational& y() const noexcept { return y_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    QuadElem conjugate() const { return {m_, x_, -y_}; }
    Rational norm() const { return x_ * x_ - m_ * y_ * y_; }
    Rational trace() const { return 2 * x_; }
    QuadElem inverse() const;

    // Sign of the real embedding with sqrt(m) > 0.
    int sign() const;

    QuadElem operator-() const { return {m_, -x_, -y_}; }
    friend QuadElem operator+(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator-(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator*(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator*(const Rational& a, const QuadElem& b);
    friend QuadElem operator/(const QuadElem& a, const QuadElem& b);
    friend bool operator==(const QuadElem& a, const QuadElem& b);

private:
    void check_same_field(const QuadElem& other) const;

    Integer m_;
    Rational x_;
    Rational y_;
};

QuadElem pow(const QuadElem& base, unsigned exp);

// Binary quadratic form a x^2 + b x y + c y^2.
struct QuadForm {
    Integer a;
    Integer b;
    Integer c;

    Integer discriminant() const { return b * b - 4 * a * c; }
    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    friend auto operator<=>(const QuadForm& l, const QuadForm& r)
    {
        if (auto c = cmp(l.a, r.a); c != 0)
            return c <=> 0;
        if (auto c = cmp(l.b, r.b); c != 0)
            return c <=> 0;
        return cmp(l.c, r.c) <=> 0;
    }
};

struct FundamentalUnit {
    QuadElem unit;  // smallest unit > 1
    int norm;       // +1 or -1
};

bool is_fundamental_discriminant(const Integer& d);

Integer conductor_quad(const QuadField& field);

FundamentalUnit fundamental_unit(const QuadField& field);

// Primitive reduced indefinite forms of discriminant D: 0 < b < sqrt D and
// sqrt D - b < 2|a| < sqrt D + b.
std::vector<QuadForm> reduced_forms(const Integer& disc);
bool is_reduced(const QuadForm& f);

// One reduction step on a reduced form: (a, b, c) -> (c, b', a') with
// b' = -b mod 2c and sqrt D - 2|c| < b' < sqrt D.
QuadForm rho(const QuadForm& f);

// Orbits of rho on the reduced forms, each starting at its least form and
// listed in order of their least forms.
std::vector<std::vector<QuadForm>> form_cycles(const Integer& disc);

// Narrow class number of the order of discriminant D (D > 0, not a square,
// D = 0 or 1 mod 4); for fundamental D that of the maximal order.
Integer narrow_class_number(const Integer& disc);

Integer class_number_quad(const QuadField& field);

// A square root of e in Q(sqrt m), with positive first nonzero coordinate.
std::optional<QuadElem> quad_is_square(const QuadElem& e);

}  // namespace bqf
