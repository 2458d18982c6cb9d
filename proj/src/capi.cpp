#include "bqf/bqf.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "bqf/density.hpp"
#include "bqf/serialize.hpp"
#include "bqf/table.hpp"
#include "bqf/witness.hpp"

struct bqf_context {
    std::string last_error;
    unsigned workers = 1;
    bqf::BuildOptions build;
};

struct bqf_field {
    bqf::BiquadField field;
};

struct bqf_certificate {
    bqf::Certificate cert;
};

namespace {

bqf_status status_of(bqf::ErrorCode code)
{
    using bqf::ErrorCode;
    switch (code) {
    case ErrorCode::invalid_argument: return BQF_E_INVALID_ARGUMENT;
    case ErrorCode::inconsistent_congruences: return BQF_E_INCONSISTENT;
    case ErrorCode::class_number_not_two: return BQF_E_CLASS_NUMBER_NOT_TWO;
    case ErrorCode::family_not_covered: return BQF_E_FAMILY_NOT_COVERED;
    case ErrorCode::not_completely_split: return BQF_E_NOT_COMPLETELY_SPLIT;
    case ErrorCode::search_exhausted: return BQF_E_SEARCH_EXHAUSTED;
    case ErrorCode::parse_error: return BQF_E_PARSE;
    case ErrorCode::internal: return BQF_E_INTERNAL;
    }
    return BQF_E_INTERNAL;
}

// Runs fn, translating exceptions into a status and the context's message.
template <class Fn>
bqf_status guard(bqf_context* ctx, Fn&& fn)
{
    if (!ctx)
        return BQF_E_INVALID_ARGUMENT;
    try {
        fn();
        ctx->last_error.clear();
        return BQF_OK;
    } catch (const bqf::Error& e) {
        ctx->last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        ctx->last_error = "out of memory";
        return BQF_E_INTERNAL;
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return BQF_E_INTERNAL;
    }
}

void require(const void* p, const char* name)
{
    if (!p)
        bqf::fail(bqf::ErrorCode::invalid_argument, std::string(name) + " is null");
}

bqf::Integer parse_integer(const char* s, const char* name)
{
    require(s, name);
    bqf::Integer n;
    if (*s == '\0' || n.set_str(s, 10) != 0)
        bqf::fail(bqf::ErrorCode::invalid_argument, std::string(name) + ": not a decimal integer: \"" + s + "\"");
    return n;
}

char* copy_out(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* bqf_version(void)
{
    return "0.1.0";
}

const char* bqf_status_name(bqf_status status)
{
    switch (status) {
    case BQF_OK: return "ok";
    case BQF_E_INVALID_ARGUMENT: return "invalid argument";
    case BQF_E_INCONSISTENT: return "inconsistent congruences";
    case BQF_E_CLASS_NUMBER_NOT_TWO: return "class number not 2";
    case BQF_E_FAMILY_NOT_COVERED: return "family not covered";
    case BQF_E_NOT_COMPLETELY_SPLIT: return "not completely split";
    case BQF_E_SEARCH_EXHAUSTED: return "search bound exhausted";
    case BQF_E_PARSE: return "parse error";
    case BQF_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

bqf_context* bqf_context_new(void)
{
    return new (std::nothrow) bqf_context();
}

void bqf_context_free(bqf_context* ctx)
{
    delete ctx;
}

const char* bqf_last_error(const bqf_context* ctx)
{
    return ctx ? ctx->last_error.c_str() : "null context";
}

bqf_status bqf_context_set_workers(bqf_context* ctx, unsigned workers)
{
    return guard(ctx, [&] { ctx->workers = workers == 0 ? 1 : workers; });
}

bqf_status bqf_context_set_search_limit(bqf_context* ctx, const char* limit)
{
    return guard(ctx, [&] {
        bqf::Integer n = parse_integer(limit, "limit");
        if (n < 2)
            bqf::fail(bqf::ErrorCode::invalid_argument, "search limit must be at least 2");
        ctx->build.search_limit = n;
    });
}

void bqf_string_free(char* s)
{
    std::free(s);
}

bqf_status bqf_qf_info(bqf_context* ctx, const char* m, char** out_json)
{
    return guard(ctx, [&] {
        require(out_json, "out_json");
        *out_json = copy_out(bqf::qf_info_json(parse_integer(m, "m")));
    });
}

bqf_status bqf_bq_info(bqf_context* ctx, const char* a, const char* b, char** out_json)
{
    return guard(ctx, [&] {
        require(out_json, "out_json");
        *out_json = copy_out(bqf::bq_info_json(parse_integer(a, "a"), parse_integer(b, "b")));
    });
}

bqf_status bqf_table(bqf_context* ctx, const char* family, const char* q, uint64_t k_max, uint64_t r_max,
                     char** out_tsv, char** out_diagnostics)
{
    return guard(ctx, [&] {
        require(family, "family");
        require(out_tsv, "out_tsv");
        require(out_diagnostics, "out_diagnostics");
        auto fam = bqf::parse_family(family);
        if (!fam || *fam == bqf::Family::other)
            bqf::fail(bqf::ErrorCode::invalid_argument, std::string("unknown family \"") + family + "\"");
        bqf::Integer qq = *fam == bqf::Family::sqrt2 && !q ? bqf::Integer(2) : parse_integer(q, "q");
        bqf::TableResult t = bqf::family_table(*fam, qq, k_max, r_max, ctx->workers);
        std::string diag;
        for (const std::string& d : t.diagnostics)
            diag += d + "\n";
        char* tsv = copy_out(bqf::to_tsv(t.rows));
        try {
            *out_diagnostics = copy_out(diag);
        } catch (...) {
            std::free(tsv);
            throw;
        }
        *out_tsv = tsv;
    });
}

bqf_status bqf_field_new(bqf_context* ctx, const char* q, const char* k, const char* r, bqf_field** out)
{
    return guard(ctx, [&] {
        require(out, "out");
        bqf::BiquadField f =
            bqf::BiquadField::from_family(parse_integer(q, "q"), parse_integer(k, "k"), parse_integer(r, "r"));
        *out = new bqf_field{std::move(f)};
    });
}

void bqf_field_free(bqf_field* field)
{
    delete field;
}

bqf_status bqf_field_name(bqf_context* ctx, const bqf_field* field, char** out)
{
    return guard(ctx, [&] {
        require(field, "field");
        require(out, "out");
        *out = copy_out(field->field.multiquad().name());
    });
}

bqf_status bqf_field_family(bqf_context* ctx, const bqf_field* field, char** out)
{
    return guard(ctx, [&] {
        require(field, "field");
        require(out, "out");
        *out = copy_out(bqf::to_string(field->field.family()));
    });
}

bqf_status bqf_field_conductor(bqf_context* ctx, const bqf_field* field, char** out)
{
    return guard(ctx, [&] {
        require(field, "field");
        require(out, "out");
        *out = copy_out(bqf::conductor_multiquad(field->field.multiquad()).get_str());
    });
}

bqf_status bqf_field_class_number(bqf_context* ctx, const bqf_field* field, char** out)
{
    return guard(ctx, [&] {
        require(field, "field");
        require(out, "out");
        *out = copy_out(bqf::class_number_biquad(field->field).get_str());
    });
}

bqf_status bqf_certificate_build(bqf_context* ctx, const bqf_field* field, bqf_certificate** out)
{
    return guard(ctx, [&] {
        require(field, "field");
        require(out, "out");
        bqf::Certificate c = bqf::build_certificate(field->field, ctx->build);
        *out = new bqf_certificate{std::move(c)};
    });
}

bqf_status bqf_certificate_parse(bqf_context* ctx, const char* json, bqf_certificate** out)
{
    return guard(ctx, [&] {
        require(json, "json");
        require(out, "out");
        bqf::Certificate c = bqf::certificate_from_json(json);
        *out = new bqf_certificate{std::move(c)};
    });
}

void bqf_certificate_free(bqf_certificate* cert)
{
    delete cert;
}

bqf_status bqf_certificate_to_json(bqf_context* ctx, const bqf_certificate* cert, char** out_json)
{
    return guard(ctx, [&] {
        require(cert, "cert");
        require(out_json, "out_json");
        *out_json = copy_out(bqf::certificate_to_json(cert->cert));
    });
}

bqf_status bqf_certificate_verify(bqf_context* ctx, const bqf_certificate* cert, int* out_valid,
                                  char** out_report_json)
{
    return guard(ctx, [&] {
        require(cert, "cert");
        require(out_valid, "out_valid");
        bqf::VerificationReport report = bqf::verify_certificate(cert->cert);
        if (out_report_json)
            *out_report_json = copy_out(bqf::verification_to_json(report));
        *out_valid = report.valid ? 1 : 0;
    });
}

bqf_status bqf_density(bqf_context* ctx, const bqf_field* field, const char* which, const char* pattern,
                       uint64_t bound, char** out_json)
{
    return guard(ctx, [&] {
        require(field, "field");
        require(which, "which");
        require(out_json, "out_json");
        const bqf::BiquadField& k = field->field;
        const std::string w = which;
        bqf::DensityReport report;
        if (w == "K") {
            report = bqf::complete_split_density(k.multiquad(), bound, ctx->workers);
        } else if (w == "H") {
            report = bqf::complete_split_density(bqf::hilbert_class_field(k), bound, ctx->workers);
        } else if (w == "pattern") {
            require(pattern, "pattern");
            const auto rad = bqf::pattern_radicands(k);
            std::string p = pattern;
            if (p.size() != rad.size())
                bqf::fail(bqf::ErrorCode::invalid_argument, "pattern needs " + std::to_string(rad.size()) +
                                                                " signs, got \"" + p + "\"");
            std::vector<int> signs;
            for (char c : p) {
                if (c != '+' && c != '-')
                    bqf::fail(bqf::ErrorCode::invalid_argument, "pattern signs must be + or -, got \"" + p + "\"");
                signs.push_back(c == '+' ? 1 : -1);
            }
            report = bqf::pattern_density(k.multiquad(), rad, signs, bound, ctx->workers);
        } else {
            bqf::fail(bqf::ErrorCode::invalid_argument, "density target must be K, H or pattern, got \"" + w + "\"");
        }
        *out_json = copy_out(bqf::density_to_json(report));
    });
}

bqf_status bqf_pool(bqf_context* ctx, const bqf_field* field, uint64_t bound, char** out_text)
{
    return guard(ctx, [&] {
        require(field, "field");
        require(out_text, "out_text");
        *out_text = copy_out(bqf::pool_to_text(bqf::witness_pool(field->field, bound, ctx->workers)));
    });
}

bqf_status bqf_growth(bqf_context* ctx, const bqf_field* field, const bqf_certificate* cert,
                      const uint64_t* bounds, size_t count, char** out_json)
{
    return guard(ctx, [&] {
        require(field, "field");
        require(cert, "cert");
        require(bounds, "bounds");
        require(out_json, "out_json");
        std::vector<std::uint64_t> b(bounds, bounds + count);
        *out_json = copy_out(bqf::growth_to_json(bqf::growth_audit(field->field, cert->cert, b, ctx->workers)));
    });
}

}  // extern "C"
