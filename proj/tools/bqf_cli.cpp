// Command-line front end; talks to the library through the C API only.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bqf/bqf.h"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct Context {
    bqf_context* ctx = bqf_context_new();
    ~Context() { bqf_context_free(ctx); }
};

struct Field {
    bqf_field* ptr = nullptr;
    ~Field() { bqf_field_free(ptr); }
};

struct Cert {
    bqf_certificate* ptr = nullptr;
    ~Cert() { bqf_certificate_free(ptr); }
};

// Owns a string returned by the library.
struct Text {
    char* ptr = nullptr;
    ~Text() { bqf_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

struct Failure {
    int code;
};

void check(bqf_context* ctx, bqf_status st)
{
    if (st == BQF_OK)
        return;
    std::cerr << "error: " << bqf_status_name(st) << ": " << bqf_last_error(ctx) << "\n";
    throw Failure{st == BQF_E_INVALID_ARGUMENT ? exit_usage : exit_failure};
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        throw Failure{exit_failure};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        throw Failure{exit_failure};
    }
}

struct Triple {
    std::string q, k, r;
};

void add_triple(CLI::App* cmd, Triple& t)
{
    cmd->add_option("q", t.q, "first prime (2 for the sqrt 2 family)")->required();
    cmd->add_option("k", t.k, "second prime")->required();
    cmd->add_option("r", t.r, "third prime")->required();
}

void open_field(bqf_context* ctx, const Triple& t, Field& f)
{
    check(ctx, bqf_field_new(ctx, t.q.c_str(), t.k.c_str(), t.r.c_str(), &f.ptr));
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Invariants, class-number tables and Euclidean ideal class certificates for real biquadratic fields"};
    app.require_subcommand(1);

    unsigned workers = 1;
    app.add_option("--workers,-j", workers, "worker threads (output does not depend on it)")
        ->check(CLI::Range(1u, 1024u));

    // qf info M
    std::string qf_m;
    auto* qf = app.add_subcommand("qf", "real quadratic fields");
    qf->require_subcommand(1);
    auto* qf_info = qf->add_subcommand("info", "invariants of Q(sqrt M) as JSON");
    qf_info->add_option("M", qf_m, "squarefree integer > 1")->required();

    // bq info A B / bq table
    std::string bq_a, bq_b;
    auto* bq = app.add_subcommand("bq", "real biquadratic fields");
    bq->require_subcommand(1);
    auto* bq_info = bq->add_subcommand("info", "invariants of Q(sqrt A, sqrt B) as JSON");
    bq_info->add_option("A", bq_a)->required();
    bq_info->add_option("B", bq_b)->required();

    std::string family, table_q;
    std::uint64_t k_max = 0, r_max = 0;
    auto* bq_table = bq->add_subcommand("table", "class-number table as TSV (q k r h_K)");
    bq_table->add_option("--family", family, "q3, sqrt2 or hsu")
        ->required()
        ->check(CLI::IsMember({"q3", "sqrt2", "hsu"}));
    bq_table->add_option("--q", table_q, "the fixed prime q (implied 2 for sqrt2)");
    bq_table->add_option("--k-max", k_max, "largest k")->required();
    bq_table->add_option("--r-max", r_max, "largest r")->required();

    // cert Q K R
    Triple cert_t;
    std::string cert_out, search_limit;
    auto* cert = app.add_subcommand("cert", "build a certificate (JSON)");
    add_triple(cert, cert_t);
    cert->add_option("--search-limit", search_limit, "largest witness prime tried");
    cert->add_option("-o,--output", cert_out, "write to file instead of stdout");

    // verify FILE
    std::string verify_file;
    auto* verify = app.add_subcommand("verify", "re-check a certificate; exit 1 if invalid");
    verify->add_option("FILE", verify_file)->required()->check(CLI::ExistingFile);

    // density Q K R --bound N
    Triple dens_t;
    std::uint64_t dens_bound = 0;
    std::string pattern, dens_field = "K";
    auto* density = app.add_subcommand("density", "splitting density of primes up to a bound (JSON)");
    add_triple(density, dens_t);
    density->add_option("--bound", dens_bound)->required()->check(CLI::Range(std::uint64_t{100}, std::uint64_t{1} << 40));
    auto* pat_opt = density->add_option("--pattern", pattern, "signs of (q/p), (k/p), (r/p), e.g. +--");
    density->add_option("--field", dens_field, "K or H (Hilbert class field)")
        ->check(CLI::IsMember({"K", "H"}))
        ->excludes(pat_opt);

    // pool Q K R --bound N
    Triple pool_t;
    std::uint64_t pool_bound = 0;
    auto* pool = app.add_subcommand("pool", "primes split in K but not in H(K), one per line");
    add_triple(pool, pool_t);
    pool->add_option("--bound", pool_bound)->required()->check(CLI::Range(std::uint64_t{10}, std::uint64_t{1} << 40));

    // growth Q K R --bounds LIST
    Triple growth_t;
    std::vector<std::uint64_t> bounds;
    std::string growth_cert;
    auto* growth = app.add_subcommand("growth", "audit primes in the certificate class (JSON)");
    add_triple(growth, growth_t);
    growth->add_option("--bounds", bounds, "comma-separated bounds")->required()->delimiter(',');
    growth->add_option("--cert", growth_cert, "certificate file (built if omitted)")->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    Context c;
    if (!c.ctx) {
        std::cerr << "error: out of memory\n";
        return exit_failure;
    }
    bqf_context* ctx = c.ctx;

    try {
        check(ctx, bqf_context_set_workers(ctx, workers));

        if (*qf_info) {
            Text out;
            check(ctx, bqf_qf_info(ctx, qf_m.c_str(), &out.ptr));
            std::cout << out.str();
        } else if (*bq_info) {
            Text out;
            check(ctx, bqf_bq_info(ctx, bq_a.c_str(), bq_b.c_str(), &out.ptr));
            std::cout << out.str();
        } else if (*bq_table) {
            if (family != "sqrt2" && table_q.empty()) {
                std::cerr << "error: --q is required for family " << family << "\n";
                return exit_usage;
            }
            Text tsv, diag;
            check(ctx, bqf_table(ctx, family.c_str(), table_q.empty() ? nullptr : table_q.c_str(), k_max, r_max,
                                 &tsv.ptr, &diag.ptr));
            std::cout << tsv.str();
            std::cerr << diag.str();
        } else if (*cert) {
            if (!search_limit.empty())
                check(ctx, bqf_context_set_search_limit(ctx, search_limit.c_str()));
            Field f;
            open_field(ctx, cert_t, f);
            Cert built;
            check(ctx, bqf_certificate_build(ctx, f.ptr, &built.ptr));
            Text json;
            check(ctx, bqf_certificate_to_json(ctx, built.ptr, &json.ptr));
            write_output(json.str(), cert_out);
        } else if (*verify) {
            const std::string text = read_file(verify_file);
            Cert parsed;
            bqf_status st = bqf_certificate_parse(ctx, text.c_str(), &parsed.ptr);
            if (st != BQF_OK) {
                std::cerr << "error: " << bqf_status_name(st) << ": " << bqf_last_error(ctx) << "\n";
                return exit_failure;
            }
            int valid = 0;
            Text report;
            check(ctx, bqf_certificate_verify(ctx, parsed.ptr, &valid, &report.ptr));
            std::cout << report.str();
            return valid ? exit_ok : exit_failure;
        } else if (*density) {
            Field f;
            open_field(ctx, dens_t, f);
            Text out;
            const char* which = pattern.empty() ? dens_field.c_str() : "pattern";
            check(ctx, bqf_density(ctx, f.ptr, which, pattern.c_str(), dens_bound, &out.ptr));
            std::cout << out.str();
        } else if (*pool) {
            Field f;
            open_field(ctx, pool_t, f);
            Text out;
            check(ctx, bqf_pool(ctx, f.ptr, pool_bound, &out.ptr));
            std::cout << out.str();
        } else if (*growth) {
            Field f;
            open_field(ctx, growth_t, f);
            Cert cc;
            if (growth_cert.empty())
                check(ctx, bqf_certificate_build(ctx, f.ptr, &cc.ptr));
            else
                check(ctx, bqf_certificate_parse(ctx, read_file(growth_cert).c_str(), &cc.ptr));
            Text out;
            check(ctx, bqf_growth(ctx, f.ptr, cc.ptr, bounds.data(), bounds.size(), &out.ptr));
            std::cout << out.str();
        }
    } catch (const Failure& f) {
        return f.code;
    }
    return exit_ok;
}
