// simpson: command-line front end for Higgs modules, small representations and their cohomology.
//
// Exit codes: 0 ok, 1 suite failure, 2 parse/validation/domain error,
// 3 cohomology comparison failure, 4 precision exhausted.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "simpson/simpson.hpp"

namespace {

using namespace simpson;
using io::json;

enum Exit { kOk = 0, kSuiteFailure = 1, kInvalid = 2, kComparison = 3, kPrecision = 4 };

struct Common {
    std::int64_t precision = 0;
    std::int64_t slack = kDefaultSlack;
    std::uint64_t seed = 0;
    std::string out;
};

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

// --precision beats SIMPSON_PRECISION; 0 means "use the file's own precision".
std::int64_t effective_precision(const Common& c) {
    if (c.precision > 0) return c.precision;
    if (const char* env = std::getenv("SIMPSON_PRECISION")) {
        try {
            const long long v = std::stoll(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
        throw ParseError(std::string("SIMPSON_PRECISION is not a positive integer: '") + env + "'");
    }
    return 0;
}

void emit(const json& j, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        io::write_file(out, j);
    }
}

json provenance(const std::string& command, const std::string& input, const Context& ctx, const Common& c) {
    return json{{"command", command},
                {"input", input},
                {"input_sha256", sha256_hex(io::read_text(input))},
                {"precision_used", ctx->precision()},
                {"slack", c.slack}};
}

struct Loaded {
    json raw;
    std::string kind;
};

Loaded load(const std::string& path) {
    json j = io::read_file(path);
    return {j, io::kind_of(j)};
}

HiggsModule load_higgs_like(const Loaded& in, const Common& c) {
    const std::int64_t prec = effective_precision(c);
    if (in.kind == "higgs") return io::higgs_from_json(in.raw, prec);
    if (in.kind == "rep") return rep_to_higgs(io::rep_from_json(in.raw, prec));
    throw ParseError("expected a higgs or rep instance, got '" + in.kind + "'");
}

void print_report(const CohomologyReport& r) {
    std::cout << r.side << ": h = " << r.dims() << "\n";
    std::cout << r.side << ": margins =";
    for (auto m : r.margins) std::cout << " " << m;
    std::cout << "\n";
}

int cmd_to_rep(const std::string& input, const Common& c) {
    const Loaded in = load(input);
    const HiggsModule h = io::higgs_from_json(in.raw, effective_precision(c));
    json j = io::rep_to_json(higgs_to_rep(h));
    j["metadata"] = json{{"provenance", provenance("to-rep", input, h.ctx, c)}};
    emit(j, c.out);
    return kOk;
}

int cmd_to_higgs(const std::string& input, const Common& c) {
    const Loaded in = load(input);
    const SmallRep v = io::rep_from_json(in.raw, effective_precision(c));
    json j = io::higgs_to_json(rep_to_higgs(v));
    j["metadata"] = json{{"provenance", provenance("to-higgs", input, v.ctx, c)}};
    emit(j, c.out);
    return kOk;
}

int cmd_cohomology(const std::string& input, const Common& c) {
    const Loaded in = load(input);
    const std::int64_t prec = effective_precision(c);
    CohomologyReport r;
    Context ctx;
    if (in.kind == "higgs") {
        const HiggsModule h = io::higgs_from_json(in.raw, prec);
        ctx = h.ctx;
        r = higgs_cohomology(h, c.slack);
    } else if (in.kind == "rep") {
        const SmallRep v = io::rep_from_json(in.raw, prec);
        ctx = v.ctx;
        r = group_cohomology(v, c.slack);
    } else {
        throw ParseError("cohomology expects a higgs or rep instance, got '" + in.kind + "'");
    }
    print_report(r);
    if (!c.out.empty()) {
        json j = io::report_to_json(r);
        j["metadata"] = json{{"provenance", provenance("cohomology", input, ctx, c)}};
        io::write_file(c.out, j);
    }
    return kOk;
}

int cmd_compare(const std::string& input, const Common& c) {
    const Loaded in = load(input);
    const HiggsModule h = load_higgs_like(in, c);
    auto write = [&](const CohomologyReport& a, const CohomologyReport& b, bool equal) {
        if (c.out.empty()) return;
        json j{{"format", io::kFormat}, {"kind", "comparison"}, {"higgs", io::report_to_json(a)},
               {"group", io::report_to_json(b)}, {"equal", equal}};
        j["metadata"] = json{{"provenance", provenance("compare", input, h.ctx, c)}};
        io::write_file(c.out, j);
    };
    try {
        const CohomologyComparison r = compare_cohomology(h, c.slack);
        print_report(r.higgs);
        print_report(r.group);
        write(r.higgs, r.group, true);
        std::cout << "dimensions agree in all degrees\n";
        return kOk;
    } catch (const ComparisonFailure& e) {
        print_report(e.higgs());
        print_report(e.group());
        write(e.higgs(), e.group(), false);
        std::cerr << "comparison failed: " << e.what() << "\n";
        return kComparison;
    }
}

int cmd_spectral(const std::string& input, const Common& c) {
    const Loaded in = load(input);
    const HiggsModule h = load_higgs_like(in, c);
    const SpectralAlgebra s = spectral_algebra(h, c.slack);
    const BTwist t = make_twist(s.algebra, s.tau);
    std::cout << "spectral algebra: dim = " << s.algebra->dim() << "\n";
    std::cout << "basis:";
    for (const auto& l : s.algebra->labels()) std::cout << " " << l;
    std::cout << "\n";
    json j = io::twist_to_json(s, t);
    j["metadata"] = json{{"provenance", provenance("spectral", input, h.ctx, c)}};
    if (!c.out.empty()) io::write_file(c.out, j);
    return kOk;
}

struct GenOptions {
    std::int64_t p = 5;
    std::size_t d = 2;
    std::size_t rank = 3;
    double density = 0.6;
    std::string kind = "higgs";
};

int cmd_gen(const GenOptions& g, const Common& c) {
    GenParams params;
    params.p = g.p;
    const std::int64_t prec = effective_precision(c);
    params.precision = prec > 0 ? prec : 32;
    params.d = g.d;
    params.rank = g.rank;
    params.density = g.density;
    params.seed = c.seed;
    if (g.density < 0 || g.density > 1) throw ValidationError("gen: density must lie in [0, 1]");
    if (g.d < 1 || g.rank < 1) throw ValidationError("gen: d and rank must be positive");
    (void)PrimeContext::create(params.p, params.precision);
    json j = g.kind == "rep" ? io::rep_to_json(generate_rep(params)) : io::higgs_to_json(generate_higgs(params));
    j["metadata"] = json{{"seed", params.seed},
                         {"generator", json{{"p", params.p},
                                            {"precision", params.precision},
                                            {"d", params.d},
                                            {"rank", params.rank},
                                            {"density", params.density}}}};
    emit(j, c.out);
    return kOk;
}

struct VerifyOptions {
    std::vector<std::string> suites;
    std::vector<std::int64_t> primes;
    std::size_t d_max = 3;
    std::size_t n_max = 4;
    std::size_t count = 50;
    unsigned threads = 0;
    std::string instance;
    std::string replay;
};

std::string sibling(const std::string& summary_path, const std::string& name) {
    const std::filesystem::path p(summary_path);
    return (p.has_parent_path() ? p.parent_path() / name : std::filesystem::path(name)).string();
}

int cmd_verify(const VerifyOptions& o, const Common& c) {
    if (!o.replay.empty()) {
        const json ce = io::read_file(o.replay);
        const verify::CaseResult r = verify::replay(ce);
        if (r.ok) {
            std::cout << "replay: case passes\n";
            return kOk;
        }
        std::cout << "replay: case fails: " << r.message << "\n";
        return kSuiteFailure;
    }
    verify::VerifyConfig cfg;
    if (!o.suites.empty()) cfg.suites = o.suites;
    if (!o.primes.empty()) cfg.primes = o.primes;
    cfg.d_max = o.d_max;
    cfg.n_max = o.n_max;
    cfg.count = o.count;
    cfg.seed = c.seed;
    cfg.slack = c.slack;
    cfg.threads = o.threads;
    const std::int64_t prec = effective_precision(c);
    if (prec > 0) cfg.precision = prec;
    verify::check_config(cfg);

    std::optional<HiggsModule> instance;
    if (!o.instance.empty()) {
        const Loaded in = load(o.instance);
        if (in.kind != "higgs") throw ParseError("--instance expects a higgs instance");
        instance = io::higgs_from_json(in.raw, prec);
    }

    const std::string summary_path = c.out.empty() ? "verify-summary.json" : c.out;
    std::vector<verify::SuiteResult> results;
    bool ok = true;
    for (const auto& s : cfg.suites) {
        const auto t0 = std::chrono::steady_clock::now();
        const verify::SuiteResult r = instance ? verify::run_on_instance(cfg, s, *instance) : verify::run_suite(cfg, s);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << std::left << std::setw(14) << s << " passed " << r.passed << "/" << (r.passed + r.failed)
                  << std::fixed << std::setprecision(2) << "  (" << secs << " s)\n";
        if (r.failed) {
            ok = false;
            const std::string path = sibling(summary_path, s + "-counterexample.json");
            json ce = verify::counterexample_json(cfg, r);
            if (instance) ce["config"]["count"] = 1;
            io::write_file(path, ce);
            std::cout << "  first failure (case " << *r.first_failure << "): " << r.first_message << "\n";
            std::cout << "  counterexample written to " << path << "\n";
        }
        results.push_back(r);
    }
    io::write_file(summary_path, verify::summary_json(cfg, results));
    std::cout << "summary written to " << summary_path << "\n";
    return ok ? kOk : kSuiteFailure;
}

void add_common(CLI::App* sub, Common& c, bool with_seed) {
    sub->add_option("--precision", c.precision, "Working precision N (overrides SIMPSON_PRECISION)");
    sub->add_option("--slack", c.slack, "Digits of slack for rank decisions and tolerances");
    sub->add_option("--out", c.out, "Output file");
    if (with_seed) sub->add_option("--seed", c.seed, "Random seed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Higgs modules, small representations and Koszul cohomology over Q_p"};
    app.require_subcommand(1);
    Common common;
    std::string input;

    auto* to_rep = app.add_subcommand("to-rep", "Higgs module -> small representation (exp)");
    auto* to_higgs = app.add_subcommand("to-higgs", "Small representation -> Higgs module (log)");
    auto* cohom = app.add_subcommand("cohomology", "Koszul cohomology of a higgs or rep instance");
    auto* compare = app.add_subcommand("compare", "Compare Higgs and group cohomology");
    auto* spectral = app.add_subcommand("spectral", "Spectral algebra and twist of a Higgs module");
    for (auto* s : {to_rep, to_higgs, cohom, compare, spectral}) {
        s->add_option("input", input, "Instance file")->required();
        add_common(s, common, false);
    }

    GenOptions gen_opts;
    auto* gen = app.add_subcommand("gen", "Generate a valid random instance");
    gen->add_option("--p", gen_opts.p, "Prime");
    gen->add_option("--d", gen_opts.d, "Number of components");
    gen->add_option("--rank", gen_opts.rank, "Rank of the module");
    gen->add_option("--density", gen_opts.density, "Fraction of nonzero triangular entries");
    gen->add_option("--kind", gen_opts.kind, "higgs or rep")->check(CLI::IsMember({"higgs", "rep"}));
    add_common(gen, common, true);

    VerifyOptions vo;
    auto* ver = app.add_subcommand("verify", "Run seeded property suites");
    ver->add_option("--suites", vo.suites, "Suites to run")->delimiter(',')->check(CLI::IsMember(verify::all_suites()));
    ver->add_option("--primes", vo.primes, "Primes")->delimiter(',');
    ver->add_option("--d-max", vo.d_max, "Largest number of components");
    ver->add_option("--n-max", vo.n_max, "Largest rank");
    ver->add_option("--count", vo.count, "Cases per suite");
    ver->add_option("--threads", vo.threads, "Worker threads (0: all cores)");
    ver->add_option("--instance", vo.instance, "Run the suites on one higgs instance file");
    ver->add_option("--replay", vo.replay, "Rerun a counterexample file");
    add_common(ver, common, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*to_rep) return cmd_to_rep(input, common);
        if (*to_higgs) return cmd_to_higgs(input, common);
        if (*cohom) return cmd_cohomology(input, common);
        if (*compare) return cmd_compare(input, common);
        if (*spectral) return cmd_spectral(input, common);
        if (*gen) return cmd_gen(gen_opts, common);
        if (*ver) return cmd_verify(vo, common);
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n"
                  << "hint: rerun with a larger --precision (or SIMPSON_PRECISION)\n";
        return kPrecision;
    } catch (const ComparisonFailure& e) {
        std::cerr << "comparison failed: " << e.what() << "\n";
        return kComparison;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
