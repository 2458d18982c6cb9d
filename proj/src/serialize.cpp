#include "bqf/serialize.hpp"

#include <cstdio>

#include "json.hpp"

namespace bqf {

using json = nlohmann::ordered_json;

namespace {

json number(const Integer& n)
{
    if (n.fits_slong_p())
        return n.get_si();
    return n.get_str();
}

json number(std::uint64_t n)
{
    return n;
}

json rational(const Rational& r, int digits = 6)
{
    return json{{"num", number(r.get_num())}, {"den", number(r.get_den())}, {"decimal", decimal(r, digits)}};
}

std::string fixed(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

[[noreturn]] void parse_fail(const std::string& what)
{
    fail(ErrorCode::parse_error, "certificate: " + what);
}

const json& field(const json& obj, const char* key)
{
    if (!obj.is_object())
        parse_fail(std::string("expected an object holding \"") + key + "\"");
    auto it = obj.find(key);
    if (it == obj.end())
        parse_fail(std::string("missing key \"") + key + "\"");
    return *it;
}

Integer read_integer(const json& v, const char* what)
{
    if (v.is_number_integer())
        return v.is_number_unsigned() ? Integer(std::to_string(v.get<std::uint64_t>()))
                                      : Integer(std::to_string(v.get<std::int64_t>()));
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        Integer n;
        if (s.empty() || n.set_str(s, 10) != 0)
            parse_fail(std::string(what) + ": \"" + s + "\" is not a decimal integer");
        return n;
    }
    parse_fail(std::string(what) + ": expected an integer");
}

int read_int(const json& v, const char* what)
{
    if (!v.is_number_integer())
        parse_fail(std::string(what) + ": expected a small integer");
    return v.get<int>();
}

const json& read_array(const json& v, const char* what)
{
    if (!v.is_array())
        parse_fail(std::string(what) + ": expected an array");
    return v;
}

}  // namespace

std::string qf_info_json(const Integer& m)
{
    QuadField field(m);
    FundamentalUnit eps = fundamental_unit(field);
    const Integer disc = field.discriminant();
    json j;
    j["m"] = number(m);
    j["discriminant"] = number(disc);
    j["conductor"] = number(conductor_quad(field));
    j["fundamental_unit"] = {{"x_num", eps.unit.x().get_num().get_str()},
                             {"x_den", eps.unit.x().get_den().get_str()},
                             {"y_num", eps.unit.y().get_num().get_str()},
                             {"y_den", eps.unit.y().get_den().get_str()}};
    j["unit_norm"] = eps.norm;
    j["h_plus"] = number(narrow_class_number(disc));
    j["h"] = number(class_number_quad(field));
    return dump(j);
}

std::string bq_info_json(const Integer& a, const Integer& b)
{
    BiquadField field(a, b);
    BiquadInvariants inv = biquad_invariants(field);
    json j;
    j["radicands"] = json::array({number(a), number(b)});
    json subs = json::array();
    for (int i = 0; i < 3; ++i) {
        subs.push_back({{"m", number(field.radicands()[i])}, {"h", number(inv.subfield_class_numbers[i])},
                        {"unit_norm", inv.units.units[i].norm}});
    }
    j["subfields"] = subs;
    j["conductor"] = number(conductor_multiquad(field.multiquad()));
    j["unit_index"] = inv.units.index;
    j["h"] = number(inv.class_number);
    if (inv.class_number == 2 && field.family() != Family::other) {
        MultiquadField h = hilbert_class_field(field, inv.class_number);
        json gens = json::array();
        for (const Integer& g : h.generators())
            gens.push_back(number(g));
        j["hilbert_class_field"] = {{"radicands", gens}, {"name", h.name()}};
    }
    j["family"] = to_string(field.family());
    return dump(j);
}

std::string certificate_to_json(const Certificate& cert)
{
    json j;
    j["family"] = to_string(cert.family);
    j["primes"] = json::array({number(cert.primes.q), number(cert.primes.k), number(cert.primes.r)});
    j["h"] = number(cert.h);
    j["l"] = number(cert.l);
    json aux = json::array(), flags = json::array();
    for (const AuxPrime& a : cert.aux_primes) {
        aux.push_back(number(a.prime));
        flags.push_back(a.fallback);
    }
    j["aux_primes"] = aux;
    j["fallback_flags"] = flags;
    j["x0"] = {{"residue", number(cert.x0.residue())}, {"modulus", number(cert.x0.modulus())}};
    j["w"] = number(cert.w);
    j["u"] = number(cert.u);
    json jac = json::array();
    for (const JacobiCheck& c : cert.checks.jacobi) {
        jac.push_back({{"numerator", number(c.numerator)},
                       {"denominator", number(c.denominator)},
                       {"expected", c.expected},
                       {"direct", c.direct},
                       {"via_reciprocity", c.via_reciprocity}});
    }
    j["checks"] = {{"gcd_u", number(cert.checks.gcd_u)},
                   {"gcd_u_minus_1_half", number(cert.checks.gcd_u_minus_1_half)},
                   {"jacobi", jac}};
    return dump(j);
}

Certificate certificate_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        parse_fail(e.what());
    }

    Certificate cert;
    const json& fam = field(j, "family");
    if (!fam.is_string())
        parse_fail("family: expected a string");
    auto family = parse_family(fam.get<std::string>());
    if (!family)
        parse_fail("unknown family \"" + fam.get<std::string>() + "\"");
    cert.family = *family;

    const json& primes = read_array(field(j, "primes"), "primes");
    if (primes.size() != 3)
        parse_fail("primes: expected three entries");
    cert.primes = {read_integer(primes[0], "primes"), read_integer(primes[1], "primes"),
                   read_integer(primes[2], "primes")};
    cert.h = read_integer(field(j, "h"), "h");
    cert.l = read_integer(field(j, "l"), "l");

    const json& aux = read_array(field(j, "aux_primes"), "aux_primes");
    const json& flags = read_array(field(j, "fallback_flags"), "fallback_flags");
    if (aux.size() != flags.size())
        parse_fail("aux_primes and fallback_flags differ in length");
    for (std::size_t i = 0; i < aux.size(); ++i) {
        if (!flags[i].is_boolean())
            parse_fail("fallback_flags: expected booleans");
        cert.aux_primes.push_back({read_integer(aux[i], "aux_primes"), flags[i].get<bool>()});
    }

    const json& x0 = field(j, "x0");
    Integer modulus = read_integer(field(x0, "modulus"), "x0.modulus");
    if (modulus <= 0)
        parse_fail("x0.modulus must be positive");
    cert.x0 = ResidueClass(read_integer(field(x0, "residue"), "x0.residue"), modulus);
    cert.w = read_integer(field(j, "w"), "w");
    cert.u = read_integer(field(j, "u"), "u");

    const json& checks = field(j, "checks");
    cert.checks.gcd_u = read_integer(field(checks, "gcd_u"), "checks.gcd_u");
    cert.checks.gcd_u_minus_1_half = read_integer(field(checks, "gcd_u_minus_1_half"), "checks.gcd_u_minus_1_half");
    for (const json& c : read_array(field(checks, "jacobi"), "checks.jacobi")) {
        cert.checks.jacobi.push_back({read_integer(field(c, "numerator"), "jacobi.numerator"),
                                      read_integer(field(c, "denominator"), "jacobi.denominator"),
                                      read_int(field(c, "expected"), "jacobi.expected"),
                                      read_int(field(c, "direct"), "jacobi.direct"),
                                      read_int(field(c, "via_reciprocity"), "jacobi.via_reciprocity")});
    }
    return cert;
}

std::string verification_to_json(const VerificationReport& report)
{
    json checks = json::array();
    for (const CheckEntry& c : report.checks)
        checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    return dump(json{{"valid", report.valid}, {"checks", checks}});
}

std::string density_to_json(const DensityReport& report)
{
    json j;
    j["field"] = report.field;
    j["condition"] = report.condition;
    j["bound"] = number(report.bound);
    j["count"] = number(report.count);
    j["pi_x"] = number(report.pi_x);
    j["ramified_excluded"] = number(report.ramified_excluded);
    j["ratio"] = rational(report.ratio());
    j["target"] = rational(report.target);
    return dump(j);
}

std::string growth_to_json(const GrowthReport& report)
{
    json j;
    j["u"] = number(report.u);
    j["l"] = number(report.l);
    json cps = json::array();
    for (const GrowthCheckpoint& cp : report.checkpoints)
        cps.push_back({{"x", number(cp.x)}, {"count", number(cp.count)}, {"ratio", fixed(cp.ratio)}});
    j["checkpoints"] = cps;
    json primes = json::array();
    for (const GrowthPrime& p : report.primes) {
        primes.push_back({{"p", number(p.p)},
                          {"degree_one", p.degree_one},
                          {"nonprincipal", p.nonprincipal},
                          {"surjective", p.surjective},
                          {"unit", p.surjective_unit},
                          {"embeddings_agree", p.embeddings_agree}});
    }
    j["primes"] = primes;
    return dump(j);
}

std::string pool_to_text(const WitnessPool& pool)
{
    std::string out;
    for (std::uint64_t p : pool.primes)
        out += std::to_string(p) + "\n";
    return out;
}

}  // namespace bqf
