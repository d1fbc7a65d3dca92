#pragma once

/**
 * @file verify.hpp
 * @brief Seeded property suites over generated instances, run in parallel.
 *
 * Every instance is derived from (seed, suite, index) alone, so a single
 * instance can be replayed without rerunning its suite.
 */

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "simpson/generate.hpp"
#include "simpson/io.hpp"
#include "simpson/koszul.hpp"
#include "simpson/root_class.hpp"
#include "simpson/spectral.hpp"

namespace simpson::verify {

using io::json;

/// Digits that the correspondence round trips are allowed to lose.
inline constexpr std::int64_t kRoundTripLoss = 8;

inline const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> s{"roundtrip",  "cohomology",  "functoriality", "explog",
                                            "cartdiag",   "unitscaling", "spectral"};
    return s;
}

struct VerifyConfig {
    std::vector<std::string> suites = all_suites();
    std::vector<std::int64_t> primes{3, 5, 7};
    std::size_t d_max = 3;
    std::size_t n_max = 4;
    std::size_t count = 50;
    std::uint64_t seed = 0;
    std::int64_t slack = kDefaultSlack;
    std::int64_t precision = 32;
    unsigned threads = 0;  ///< 0: hardware concurrency
};

inline void check_config(const VerifyConfig& c) {
    if (c.count < 1) throw ValidationError("verify: count must be at least 1");
    if (c.d_max < 1 || c.d_max > 4) throw ValidationError("verify: d_max must lie in [1, 4]");
    if (c.n_max < 1 || c.n_max > 6) throw ValidationError("verify: n_max must lie in [1, 6]");
    if (c.primes.empty()) throw ValidationError("verify: no primes given");
    if (c.precision < 8) throw ValidationError("verify: precision must be at least 8");
    if (c.slack < 0 || c.slack >= c.precision) throw ValidationError("verify: slack out of range");
    for (const auto& s : c.suites)
        if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
            throw ValidationError("verify: unknown suite '" + s + "'");
    for (auto p : c.primes) (void)PrimeContext::create(p, c.precision);
}

inline json config_to_json(const VerifyConfig& c) {
    return json{{"suites", c.suites}, {"primes", c.primes}, {"d_max", c.d_max},   {"n_max", c.n_max},
                {"count", c.count},   {"seed", c.seed},     {"slack", c.slack},   {"precision", c.precision}};
}

inline VerifyConfig config_from_json(const json& j) {
    VerifyConfig c;
    c.suites = io::detail::field<std::vector<std::string>>(j, "suites");
    c.primes = io::detail::field<std::vector<std::int64_t>>(j, "primes");
    c.d_max = io::detail::field<std::size_t>(j, "d_max");
    c.n_max = io::detail::field<std::size_t>(j, "n_max");
    c.count = io::detail::field<std::size_t>(j, "count");
    c.seed = io::detail::field<std::uint64_t>(j, "seed");
    c.slack = io::detail::field<std::int64_t>(j, "slack");
    c.precision = io::detail::field<std::int64_t>(j, "precision");
    return c;
}

struct CaseResult {
    bool ok = true;
    std::string message;
    json instance;  ///< offending input, when there is one
};

struct SuiteResult {
    std::string name;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::optional<std::size_t> first_failure;
    std::string first_message;
    json first_instance;
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t suite_tag(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return h;
}

inline std::uint64_t case_seed(const VerifyConfig& c, const std::string& suite, std::size_t index) {
    return splitmix(splitmix(c.seed ^ suite_tag(suite)) + index);
}

inline std::int64_t prime_for(const VerifyConfig& c, std::size_t index) { return c.primes[index % c.primes.size()]; }

struct Shape {
    std::size_t d;
    std::size_t n;
    double density;
    std::uint64_t seed;
};

inline Shape shape_for(const VerifyConfig& c, Rng& rng) {
    std::uniform_int_distribution<std::size_t> dd(1, c.d_max), nn(1, c.n_max);
    std::uniform_real_distribution<double> dens(0.3, 1.0);
    const std::size_t d = dd(rng);
    const std::size_t n = nn(rng);
    return {d, n, dens(rng), rng()};
}

inline GenParams params_for(const VerifyConfig& c, std::size_t index, Rng& rng, bool trivial = false) {
    const Shape s = shape_for(c, rng);
    return {prime_for(c, index), c.precision, s.d, s.n, trivial ? 0.0 : s.density, s.seed};
}

inline CaseResult fail(std::string msg, json instance = nullptr) { return {false, std::move(msg), std::move(instance)}; }

// Runs body, turning library errors into a failed case tied to the instance.
inline CaseResult guarded(const json& instance, const std::function<CaseResult()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        return fail(e.what(), instance);
    }
}

inline std::int64_t tolerance(const VerifyConfig& c) { return c.precision - kRoundTripLoss; }

inline bool families_agree(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::int64_t digits) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].agrees_with(b[i], digits)) return false;
    return true;
}

} // namespace detail

/// Round trip in both directions and the triviality criterion on one Higgs module.
inline CaseResult check_roundtrip(const HiggsModule& h, std::int64_t digits) {
    const json inst = io::higgs_to_json(h);
    return detail::guarded(inst, [&]() -> CaseResult {
        const ValidationReport r = validate_higgs(h);
        if (!r.valid()) return detail::fail("validation failed: " + r.summary(), inst);
        const SmallRep v = higgs_to_rep(h);
        if (!detail::families_agree(rep_to_higgs(v).theta, h.theta, digits))
            return detail::fail("rep_to_higgs(higgs_to_rep(H)) != H", inst);
        if (!detail::families_agree(higgs_to_rep(rep_to_higgs(v)).rho, v.rho, digits))
            return detail::fail("higgs_to_rep(rep_to_higgs(V)) != V", inst);
        if (is_trivial(h) != is_trivial(v)) return detail::fail("triviality of H and exp(H) disagree", inst);
        return {};
    });
}

inline CaseResult check_rep_roundtrip(const SmallRep& v, std::int64_t digits) {
    const json inst = io::rep_to_json(v);
    return detail::guarded(inst, [&]() -> CaseResult {
        const ValidationReport r = validate_rep(v);
        if (!r.valid()) return detail::fail("validation failed: " + r.summary(), inst);
        const HiggsModule h = rep_to_higgs(v);
        if (!detail::families_agree(higgs_to_rep(h).rho, v.rho, digits))
            return detail::fail("higgs_to_rep(rep_to_higgs(V)) != V", inst);
        if (is_trivial(h) != is_trivial(v)) return detail::fail("triviality of V and log(V) disagree", inst);
        return {};
    });
}

inline CaseResult check_cohomology(const HiggsModule& h, std::int64_t slack) {
    const json inst = io::higgs_to_json(h);
    return detail::guarded(inst, [&]() -> CaseResult {
        (void)compare_cohomology(h, slack);
        return {};
    });
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Trivial rank-one object: h^k = binomial(d, k) on both sides.
inline CaseResult check_hodge_tate(const Context& ctx, std::size_t d, std::int64_t slack) {
    const HiggsModule h = trivial_higgs(ctx, 1, d);
    const json inst = io::higgs_to_json(h);
    return detail::guarded(inst, [&]() -> CaseResult {
        const CohomologyComparison c = compare_cohomology(h, slack);
        const CohomologyReport g = group_cohomology(trivial_rep(ctx, 1, d), slack);
        for (std::size_t k = 0; k <= d; ++k) {
            const auto b = binomial(d, k);
            if (c.higgs.h.at(k) != b || c.group.h.at(k) != b || g.h.at(k) != b)
                return detail::fail("trivial rank-1 cohomology is not binomial in degree " + std::to_string(k), inst);
        }
        return {};
    });
}

inline CaseResult check_functoriality(const HiggsModule& a, const HiggsModule& b, std::int64_t digits,
                                      std::int64_t slack) {
    json inst = json{{"format", io::kFormat}, {"kind", "pair"}, {"first", io::higgs_to_json(a)},
                     {"second", io::higgs_to_json(b)}};
    return detail::guarded(inst, [&]() -> CaseResult {
        const SmallRep va = higgs_to_rep(a), vb = higgs_to_rep(b);
        if (!detail::families_agree(higgs_to_rep(direct_sum(a, b)).rho, direct_sum(va, vb).rho, digits))
            return detail::fail("correspondence does not commute with direct sums", inst);
        if (!detail::families_agree(higgs_to_rep(tensor(a, b)).rho, tensor(va, vb).rho, digits))
            return detail::fail("correspondence does not commute with tensor products", inst);
        if (!detail::families_agree(higgs_to_rep(dual(a)).rho, dual(va, slack).rho, digits))
            return detail::fail("correspondence does not commute with duals", inst);
        if (!detail::families_agree(rep_to_higgs(tensor(va, vb)).theta, tensor(a, b).theta, digits))
            return detail::fail("inverse correspondence does not commute with tensor products", inst);
        if (!detail::families_agree(rep_to_higgs(dual(va, slack)).theta, dual(a).theta, digits))
            return detail::fail("inverse correspondence does not commute with duals", inst);
        return {};
    });
}

/// Scalar exp/log both ways plus the two domain boundaries.
inline CaseResult check_explog_scalar(const Context& ctx, Rng& rng, std::int64_t slack) {
    const std::int64_t e0 = ctx->exp_domain();
    const std::int64_t digits = ctx->precision() - slack;
    std::uniform_int_distribution<std::int64_t> vdist(e0, e0 + 3);
    const PadicScalar x = random_scalar(ctx, rng, vdist(rng));
    json inst{{"format", io::kFormat}, {"kind", "scalar"}, {"p", ctx->prime()}, {"precision", ctx->precision()},
              {"x", io::scalar_to_json(x)}};
    return detail::guarded(inst, [&]() -> CaseResult {
        if (!log_scalar(exp_scalar(x)).agrees_with(x, digits)) return detail::fail("log(exp(x)) != x", inst);
        const PadicScalar u = PadicScalar::one(ctx) + x;
        if (!exp_scalar(log_scalar(u)).agrees_with(u, digits)) return detail::fail("exp(log(1 + x)) != 1 + x", inst);
        const PadicScalar outside = PadicScalar::power_of_p(ctx, e0 - 1) * random_unit(ctx, rng);
        try {
            (void)exp_scalar(outside);
            return detail::fail("exp accepted an argument of valuation " + std::to_string(e0 - 1), inst);
        } catch (const OutsideExpDomain&) {
        }
        try {
            (void)log_scalar(random_unit(ctx, rng) * PadicScalar::power_of_p(ctx, -1));
            return detail::fail("log accepted a non-integral argument", inst);
        } catch (const OutsideLogDomain&) {
        }
        return {};
    });
}

/// A random integral order K[x]/(f) with f monic of degree 2..4.
inline Algebra random_monogenic(const Context& ctx, Rng& rng) {
    std::uniform_int_distribution<int> deg(2, 4);
    const int m = deg(rng);
    std::vector<long> f;
    for (int i = 0; i < m; ++i) f.push_back(random_small(rng, 4));
    return FinAlgebra::monogenic(ctx, f);
}

inline CaseResult check_explog_algebra(const Context& ctx, Rng& rng, std::int64_t slack) {
    const std::int64_t e0 = ctx->exp_domain();
    const std::int64_t digits = ctx->precision() - slack;
    const Algebra a = random_monogenic(ctx, rng);
    const AlgElement x = random_element(a, rng, e0);
    json inst{{"format", io::kFormat}, {"kind", "algebra-element"}, {"algebra", io::algebra_to_json(*a)},
              {"x", io::element_to_json(x)}};
    return detail::guarded(inst, [&]() -> CaseResult {
        if (!alg_log(alg_exp(x)).agrees_with(x, digits)) return detail::fail("log(exp(x)) != x in the algebra", inst);
        const AlgElement u = AlgElement::one(a) + x;
        if (!alg_exp(alg_log(u)).agrees_with(u, digits))
            return detail::fail("exp(log(1 + x)) != 1 + x in the algebra", inst);
        try {
            (void)alg_exp(AlgElement::scalar(a, PadicScalar::power_of_p(ctx, e0 - 1)) + x);
            return detail::fail("algebra exp accepted an eigenvalue of valuation " + std::to_string(e0 - 1), inst);
        } catch (const OutsideExpDomain&) {
        }
        return {};
    });
}

/// The fixed battery of quotients R -> K (the identity when no quotient to K exists).
inline std::vector<std::pair<std::string, AlgebraMorphism>> cart_battery(const Context& ctx) {
    const std::int64_t p = ctx->prime();
    // a unit that is not a square in Z_p (mod 8 for p = 2)
    std::int64_t nonsquare = 3;
    if (p != 2) {
        auto is_square_mod = [p](std::int64_t c) {
            for (std::int64_t y = 0; y < p; ++y)
                if ((y * y - c) % p == 0) return true;
            return false;
        };
        nonsquare = 2;
        while (is_square_mod(nonsquare)) ++nonsquare;
    }
    const Algebra k = FinAlgebra::field(ctx);
    auto to_k = [&](const Algebra& r, long root) {
        // x -> root on K[x]/(f), basis 1, x, x^2, ...
        Matrix m(ctx, 1, r->dim());
        PadicScalar pw = PadicScalar::one(ctx);
        for (std::size_t j = 0; j < r->dim(); ++j) {
            m(0, j) = pw;
            pw = pw * PadicScalar::from_int(ctx, root);
        }
        return AlgebraMorphism(r, k, m);
    };
    std::vector<std::pair<std::string, AlgebraMorphism>> out;
    out.emplace_back("K", AlgebraMorphism::identity(k));
    const Algebra x2 = FinAlgebra::monogenic(ctx, std::vector<long>{0, 0});
    out.emplace_back("K[x]/(x^2)", to_k(x2, 0));
    const Algebra x3 = FinAlgebra::monogenic(ctx, std::vector<long>{0, 0, 0});
    out.emplace_back("K[x]/(x^3)", to_k(x3, 0));
    const Algebra idem = FinAlgebra::monogenic(ctx, std::vector<long>{0, -1});
    out.emplace_back("K[x]/(x^2-x)", to_k(idem, 0));
    const Algebra sq = FinAlgebra::monogenic(ctx, std::vector<long>{-4, 0});
    out.emplace_back("K[x]/(x^2-4)", to_k(sq, 2));
    const Algebra ns = FinAlgebra::monogenic(ctx, std::vector<long>{-nonsquare, 0});
    out.emplace_back("K[x]/(x^2-" + std::to_string(nonsquare) + ")", AlgebraMorphism::identity(ns));
    return out;
}

inline CaseResult check_cart(const AlgebraMorphism& f, const std::string& name, std::uint64_t seed,
                             std::int64_t slack) {
    json inst{{"format", io::kFormat}, {"kind", "morphism"}, {"name", name}, {"source", io::algebra_to_json(*f.source())},
              {"target", io::algebra_to_json(*f.target())}, {"matrix", io::matrix_to_json(f.matrix())}};
    return detail::guarded(inst, [&]() -> CaseResult {
        CartSquareOptions opt;
        opt.seed = seed;
        opt.slack = slack;
        const CartSquareReport r = cart_square_check(f, opt);
        if (!r.passed()) return detail::fail(name + ": " + r.counterexamples.front(), inst);
        return {};
    });
}

/// Kos(theta_i) against Kos(theta_i u_i) for units u_i = c_i + sum_j b_ij theta_j.
inline CaseResult check_unit_scaling(const HiggsModule& h, Rng& rng, std::int64_t slack) {
    const json inst = io::higgs_to_json(h);
    return detail::guarded(inst, [&]() -> CaseResult {
        std::vector<Matrix> units;
        const Matrix id = Matrix::identity(h.ctx, h.rank);
        for (std::size_t i = 0; i < h.d(); ++i) {
            Matrix u = random_unit(h.ctx, rng) * id;
            for (std::size_t j = 0; j < h.d(); ++j) u += PadicScalar::from_int(h.ctx, random_small(rng, 3)) * h.theta[j];
            if (i % 2 == 1) u = u * exp_quotient(h.theta[i]);
            units.push_back(std::move(u));
        }
        if (!koszul_unit_scaling_check(h.ctx, h.rank, h.theta, units, slack))
            return detail::fail("unit scaling changed the Koszul cohomology", inst);
        return {};
    });
}

inline CaseResult check_spectral(const HiggsModule& h, std::int64_t digits, std::int64_t slack) {
    const json inst = io::higgs_to_json(h);
    return detail::guarded(inst, [&]() -> CaseResult {
        const SpectralAlgebra s = spectral_algebra(h, slack);
        for (std::size_t i = 0; i < h.d(); ++i)
            if (!(s.embed(s.tau[i]) == h.theta[i]))
                return detail::fail("embedding of tau_" + std::to_string(i + 1) + " differs from theta", inst);
        if (s.algebra->dim() > std::max<std::size_t>(h.rank * h.rank, 1))
            return detail::fail("spectral algebra larger than End(E)", inst);
        if (is_trivial(h) && s.algebra->dim() != 1)
            return detail::fail("spectral algebra of theta = 0 has dimension " + std::to_string(s.algebra->dim()),
                                inst);
        const BTwist t = make_twist(s.algebra, s.tau);
        if (!detail::families_agree(twist_higgs(h, s, t).rho, higgs_to_rep(h).rho, digits))
            return detail::fail("twist over the spectral algebra differs from exp(theta)", inst);
        return {};
    });
}

/// Case `index` of `suite`, reproducible from the config alone.
inline CaseResult run_case(const VerifyConfig& c, const std::string& suite, std::size_t index) {
    Rng rng(detail::case_seed(c, suite, index));
    const std::int64_t p = detail::prime_for(c, index);
    const Context ctx = PrimeContext::create(p, c.precision);
    const std::int64_t digits = detail::tolerance(c);
    if (suite == "roundtrip") {
        const bool trivial = index % 4 == 3;
        const GenParams g = detail::params_for(c, index, rng, trivial);
        if (index % 2 == 0) return check_roundtrip(generate_higgs(g), digits);
        return check_rep_roundtrip(generate_rep(g), digits);
    }
    if (suite == "cohomology") {
        if (index % 8 == 7) return check_hodge_tate(ctx, 1 + (index / 8) % c.d_max, c.slack);
        return check_cohomology(generate_higgs(detail::params_for(c, index, rng)), c.slack);
    }
    if (suite == "functoriality") {
        GenParams g = detail::params_for(c, index, rng);
        const HiggsModule a = generate_higgs(g);
        g.rank = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(c.n_max, 3))(rng);
        g.density = 0.8;
        g.seed = rng();
        return check_functoriality(a, generate_higgs(g), digits, c.slack);
    }
    if (suite == "explog") {
        if (index % 10 == 9) return check_explog_algebra(ctx, rng, c.slack);
        return check_explog_scalar(ctx, rng, c.slack);
    }
    if (suite == "cartdiag") {
        const auto battery = cart_battery(ctx);
        const auto& [name, f] = battery[(index / c.primes.size()) % battery.size()];
        return check_cart(f, name, rng(), c.slack);
    }
    if (suite == "unitscaling") return check_unit_scaling(generate_higgs(detail::params_for(c, index, rng)), rng, c.slack);
    if (suite == "spectral") {
        const bool trivial = index % 8 == 7;
        return check_spectral(generate_higgs(detail::params_for(c, index, rng, trivial)), digits, c.slack);
    }
    throw ValidationError("unknown suite '" + suite + "'");
}

/// Applies fn to 0..count-1 on a thread pool; results are stored by index.
inline std::vector<CaseResult> parallel_cases(std::size_t count, unsigned threads,
                                              const std::function<CaseResult(std::size_t)>& fn) {
    std::vector<CaseResult> out(count);
    unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    t = static_cast<unsigned>(std::min<std::size_t>(t, count));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (const std::exception& e) {
                out[i] = detail::fail(e.what());
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < t; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

inline SuiteResult aggregate(const std::string& name, const std::vector<CaseResult>& cases) {
    SuiteResult r{name, 0, 0, std::nullopt, {}, nullptr};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (cases[i].ok) {
            ++r.passed;
            continue;
        }
        ++r.failed;
        if (!r.first_failure) {
            r.first_failure = i;
            r.first_message = cases[i].message;
            r.first_instance = cases[i].instance;
        }
    }
    return r;
}

inline SuiteResult run_suite(const VerifyConfig& c, const std::string& suite) {
    return aggregate(suite, parallel_cases(c.count, c.threads, [&](std::size_t i) { return run_case(c, suite, i); }));
}

/// The suites applicable to one given Higgs module.
inline SuiteResult run_on_instance(const VerifyConfig& c, const std::string& suite, const HiggsModule& h) {
    const std::int64_t digits = h.ctx->precision() - kRoundTripLoss;
    CaseResult r;
    try {
        if (suite == "roundtrip") {
            r = check_roundtrip(h, digits);
        } else if (suite == "cohomology") {
            r = check_cohomology(h, c.slack);
        } else if (suite == "spectral") {
            r = check_spectral(h, digits, c.slack);
        } else if (suite == "functoriality") {
            r = check_functoriality(h, h, digits, c.slack);
        } else if (suite == "unitscaling") {
            Rng rng(c.seed);
            r = check_unit_scaling(h, rng, c.slack);
        } else {
            throw ValidationError("suite '" + suite + "' does not take an instance file");
        }
    } catch (const Error& e) {
        r = detail::fail(e.what(), io::higgs_to_json(h));
    }
    return aggregate(suite, {r});
}

inline json suite_to_json(const SuiteResult& r) {
    json j{{"name", r.name}, {"passed", r.passed}, {"failed", r.failed}};
    if (r.first_failure) {
        j["first_failure"] = *r.first_failure;
        j["message"] = r.first_message;
    }
    return j;
}

inline json summary_json(const VerifyConfig& c, const std::vector<SuiteResult>& results) {
    json suites = json::array();
    bool ok = true;
    for (const auto& r : results) {
        suites.push_back(suite_to_json(r));
        ok = ok && r.failed == 0;
    }
    return json{{"format", io::kFormat}, {"kind", "summary"}, {"config", config_to_json(c)}, {"suites", suites},
                {"ok", ok}};
}

/// Replay record of the first failure of a suite.
inline json counterexample_json(const VerifyConfig& c, const SuiteResult& r) {
    return json{{"format", io::kFormat},  {"kind", "counterexample"},  {"suite", r.name},
                {"index", *r.first_failure}, {"message", r.first_message}, {"config", config_to_json(c)},
                {"instance", r.first_instance}};
}

/// Reruns the recorded case; returns its fresh result.
inline CaseResult replay(const json& ce) {
    if (io::kind_of(ce) != "counterexample") throw ParseError("expected a counterexample file");
    const VerifyConfig c = config_from_json(io::detail::field<json>(ce, "config"));
    const auto suite = io::detail::field<std::string>(ce, "suite");
    const auto& inst = ce.contains("instance") ? ce.at("instance") : json();
    if (inst.is_object() && inst.value("kind", "") == "higgs") {
        const SuiteResult r = run_on_instance(c, suite, io::higgs_from_json(inst));
        if (r.failed) return detail::fail(r.first_message, inst);
        return {};
    }
    if (inst.is_object() && inst.value("kind", "") == "rep")
        return check_rep_roundtrip(io::rep_from_json(inst), c.precision - kRoundTripLoss);
    return run_case(c, suite, io::detail::field<std::size_t>(ce, "index"));
}

} // namespace simpson::verify
