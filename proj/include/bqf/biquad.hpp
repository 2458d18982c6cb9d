#pragma once

// Multiquadratic fields Q(sqrt m_1, ..., sqrt m_n). Conductors, ramification
// and splitting come from the quadratic characters of the subfields (as
// vectors over the prime discriminants -4, 8 and p* = +-p). The degree-four
// case additionally gets exact quartic arithmetic, the Kubota unit index and
// class numbers through Kuroda's formula h = Q h_1 h_2 h_3 / 4.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bqf/arith.hpp"
#include "bqf/quadfield.hpp"

namespace bqf {

// Squarefree part of a*b for squarefree a, b: a*b / gcd(a, b)^2.
Integer squarefree_product(const Integer& a, const Integer& b);

class MultiquadField {
public:
    // Multiplicatively independent squarefree generators > 1. An empty list
    // is the rational field.
    explicit MultiquadField(std::vector<Integer> generators);

    const std::vector<Integer>& generators() const noexcept { return generators_; }

    // All 2^n - 1 quadratic subfield radicands; entry i is the squarefree
    // part of the product of the generators selected by the bits of i + 1.
    const std::vector<Integer>& subfield_radicands() const noexcept { return subfields_; }

    std::size_t rank() const noexcept { return generators_.size(); }
    unsigned degree() const noexcept { return 1u << generators_.size(); }

    bool has_subfield(const Integer& m) const;
    std::string name() const;

    friend bool operator==(const MultiquadField& a, const MultiquadField& b);

private:
    std::vector<Integer> generators_;
    std::vector<Integer> subfields_;
};

struct SubfieldTriple {
    Integer m1;
    Integer m2;
    Integer m3;
};

SubfieldTriple subfield_radicands(const Integer& a, const Integer& b);

enum class Family { q3, sqrt2, hsu, other };

std::string to_string(Family family);
std::optional<Family> parse_family(const std::string& tag);

// (q, k, r) with K = Q(sqrt q, sqrt kr); the sqrt2 family stores (2, p, q).
struct FamilyPrimes {
    Integer q;
    Integer k;
    Integer r;
};

class BiquadField {
public:
    BiquadField(Integer a, Integer b);

    // Q(sqrt q, sqrt kr) for primes q, k, r. The given order of k and r is
    // kept for certificate construction.
    static BiquadField from_family(const Integer& q, const Integer& k, const Integer& r);

    const MultiquadField& multiquad() const noexcept { return field_; }
    const Integer& m1() const noexcept { return field_.subfield_radicands()[0]; }
    const Integer& m2() const noexcept { return field_.subfield_radicands()[1]; }
    const Integer& m3() const noexcept { return field_.subfield_radicands()[2]; }
    std::array<Integer, 3> radicands() const { return {m1(), m2(), m3()}; }

    Family family() const noexcept { return family_; }
    const std::optional<FamilyPrimes>& family_primes() const noexcept { return primes_; }

private:
    MultiquadField field_;
    Family family_ = Family::other;
    std::optional<FamilyPrimes> primes_;
};

// c0 + c1 sqrt m1 + c2 sqrt m2 + c3 sqrt m3 in a biquadratic field, where
// sqrt m3 = sqrt m1 sqrt m2 / gcd(m1, m2).
class QuartElem {
public:
    QuartElem(const BiquadField& field, std::array<Rational, 4> coords);
    QuartElem(const BiquadField& field, const Rational& value);

    // Image of an element of the quadratic subfield with the given index (0..2).
    static QuartElem embed(const BiquadField& field, int subfield, const QuadElem& e);

    const std::array<Rational, 4>& coords() const noexcept { return c_; }
    bool is_zero() const;
    QuartElem one() const { return QuartElem(basis_, {1, 0, 0, 0}); }

    // sigma_1 negates sqrt m1, sigma_2 negates sqrt m2, sigma_3 = sigma_1 sigma_2.
    QuartElem conjugate(int which) const;
    Rational norm() const;

    QuartElem operator-() const;
    friend QuartElem operator+(const QuartElem& a, const QuartElem& b);
    friend QuartElem operator-(const QuartElem& a, const QuartElem& b);
    friend QuartElem operator*(const QuartElem& a, const QuartElem& b);
    friend bool operator==(const QuartElem& a, const QuartElem& b);

private:
    struct Basis {
        Integer m1, m2, m3, g;
        friend bool operator==(const Basis&, const Basis&) = default;
    };
    QuartElem(Basis basis, std::array<Rational, 4> coords);
    void check_same_field(const QuartElem& other) const;

    Basis basis_;
    std::array<Rational, 4> c_;

    friend std::optional<QuartElem> quart_is_square(const QuartElem& e);
};

QuartElem pow(const QuartElem& base, unsigned exp);

// Root with positive first nonzero coordinate, found through the tower
// Q(sqrt m1)(sqrt m2) and relative norms.
std::optional<QuartElem> quart_is_square(const QuartElem& e);

Integer conductor_multiquad(const MultiquadField& field);

struct UnitIndex {
    int index = 1;                             // [E_K : <-1, e1, e2, e3>]
    std::vector<std::array<int, 3>> vectors;   // exponent vectors v with +-e^v a square, incl. 0
    std::array<FundamentalUnit, 3> units;      // of Q(sqrt m1), Q(sqrt m2), Q(sqrt m3)
};

UnitIndex unit_index(const BiquadField& field);

struct BiquadInvariants {
    std::array<Integer, 3> subfield_class_numbers;
    UnitIndex units;
    Integer class_number;
};

BiquadInvariants biquad_invariants(const BiquadField& field);
Integer class_number_biquad(const BiquadField& field);

// The triquadratic genus field of an h = 2 member of the q3, sqrt2 or hsu
// family. The overload taking h skips recomputing the class number.
MultiquadField hilbert_class_field(const BiquadField& field);
MultiquadField hilbert_class_field(const BiquadField& field, const Integer& class_number);

int ramification_index(const Integer& p, const MultiquadField& field);

struct RamificationEntry {
    Integer p;
    int e_top;
    int e_base;
};

struct UnramifiedReport {
    bool unramified = false;
    bool contains_base = false;
    std::vector<RamificationEntry> entries;
};

UnramifiedReport verify_unramified(const MultiquadField& top, const MultiquadField& base);

struct SplitData {
    Integer p;
    std::vector<Integer> radicands;
    std::vector<int> pattern;  // Kronecker symbols (D_i / p) per subfield
    int e = 1;
    int f = 1;
    int g = 1;
};

SplitData splitting_data(const Integer& p, const MultiquadField& field);

bool is_nonprincipal_split_prime(const Integer& p, const BiquadField& field);
bool is_nonprincipal_split_prime(const Integer& p, const BiquadField& field, const MultiquadField& hilbert);

}  // namespace bqf
