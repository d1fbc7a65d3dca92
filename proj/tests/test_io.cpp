#include <gtest/gtest.h>

#include <functional>
#include <string>
#include <vector>

#include "simpson/generate.hpp"
#include "simpson/io.hpp"
#include "simpson/verify.hpp"

using namespace simpson;
using io::json;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

json noncommuting_instance() { return io::read_file(fixture("noncommuting_higgs.json")); }

} // namespace

TEST(Json, ScalarsRoundTrip) {
    const Context c = PrimeContext::create(5, 20);
    for (const char* text : {"0", "7", "-4", "3/25", "2:13", "0@7", "6@9"}) {
        const PadicScalar x = parse_scalar(c, text);
        const PadicScalar y = io::scalar_from_json(c, io::scalar_to_json(x));
        EXPECT_EQ(x, y) << text;
        EXPECT_EQ(x.precision(), y.precision()) << text;
    }
    EXPECT_EQ(io::scalar_from_json(c, json(12)), PadicScalar::from_int(c, 12));
    EXPECT_THROW(io::scalar_from_json(c, json(1.5)), ParseError);
    EXPECT_THROW(io::scalar_from_json(c, json("x")), ParseError);
}

TEST(Json, HiggsAndRepRoundTrip) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const HiggsModule h = generate_higgs({7, 24, 2, 3, 0.6, seed});
        const json j = io::higgs_to_json(h);
        const HiggsModule back = io::higgs_from_json(json::parse(j.dump()));
        EXPECT_EQ(io::higgs_to_json(back), j);
        const SmallRep v = generate_rep({3, 24, 3, 2, 0.6, seed});
        EXPECT_EQ(io::rep_to_json(io::rep_from_json(io::rep_to_json(v))), io::rep_to_json(v));
    }
}

TEST(Json, RationalFixtureParses) {
    const HiggsModule h = io::higgs_from_json(io::read_file(fixture("rational_higgs.json")));
    EXPECT_EQ(h.ctx->prime(), 3);
    EXPECT_EQ(h.d(), 2u);
    EXPECT_EQ(h.theta[0](0, 0), PadicScalar::from_rational(h.ctx, 3, 2));
    EXPECT_EQ(h.theta[1](0, 1), PadicScalar::from_int(h.ctx, 21));
    EXPECT_TRUE(validate_higgs(h).valid());
    EXPECT_EQ(io::higgs_from_json(io::read_file(fixture("rational_higgs.json")), 40).ctx->precision(), 40);
}

TEST(Json, MalformedInstancesAreParseErrors) {
    const json good = io::read_file(fixture("nilpotent_higgs.json"));
    auto broken = [&](const std::function<void(json&)>& edit) {
        json j = good;
        edit(j);
        return j;
    };
    EXPECT_THROW(io::higgs_from_json(broken([](json& j) { j["format"] = 2; })), ParseError);
    EXPECT_THROW(io::higgs_from_json(broken([](json& j) { j.erase("theta"); })), ParseError);
    EXPECT_THROW(io::higgs_from_json(broken([](json& j) { j["kind"] = "rep"; })), ParseError);
    EXPECT_THROW(io::higgs_from_json(broken([](json& j) { j["rank"] = 3; })), ParseError);
    EXPECT_THROW(io::higgs_from_json(broken([](json& j) { j["d"] = 2; })), ParseError);
    EXPECT_THROW(io::higgs_from_json(broken([](json& j) { j["p"] = 6; })), ParseError);
    EXPECT_THROW(io::higgs_from_json(broken([](json& j) { j["p"] = "five"; })), ParseError);
    EXPECT_THROW(io::higgs_from_json(json::array()), ParseError);
    EXPECT_THROW(io::read_file(fixture("does_not_exist.json")), ParseError);
}

TEST(Json, AlgebraAndTwistSerialization) {
    const Context c = PrimeContext::create(5, 24);
    const Algebra a = FinAlgebra::monogenic(c, std::vector<long>{-5, 0, 1});
    const Algebra b = io::algebra_from_json(json::parse(io::algebra_to_json(*a).dump()));
    ASSERT_EQ(b->dim(), a->dim());
    for (std::size_t i = 0; i < a->dim(); ++i)
        for (std::size_t k = 0; k < a->dim(); ++k) EXPECT_EQ(b->constants()[i][k], a->constants()[i][k]);
    EXPECT_EQ(b->labels(), a->labels());

    const HiggsModule h = generate_higgs({5, 24, 2, 2, 0.6, 1});
    const SpectralAlgebra s = spectral_algebra(h);
    const json t = io::twist_to_json(s, make_twist(s.algebra, s.tau));
    EXPECT_EQ(t["kind"], "twist");
    EXPECT_EQ(t["tau"].size(), 2u);
    EXPECT_EQ(t["embedding"].size(), s.algebra->dim());
    EXPECT_EQ(io::algebra_from_body(c, t["algebra"])->dim(), s.algebra->dim());
}

TEST(Json, ReportRoundTrip) {
    const CohomologyReport r{{1, 2, 1}, {28, 30}, "higgs"};
    const CohomologyReport back = io::report_from_json(io::report_to_json(r));
    EXPECT_EQ(back.h, r.h);
    EXPECT_EQ(back.margins, r.margins);
    EXPECT_EQ(back.side, r.side);
}

TEST(Generator, DeterministicAndValid) {
    const GenParams g{5, 32, 3, 4, 0.6, 0};
    EXPECT_EQ(io::higgs_to_json(generate_higgs(g)).dump(), io::higgs_to_json(generate_higgs(g)).dump());
    GenParams other = g;
    other.seed = 1;
    EXPECT_NE(io::higgs_to_json(generate_higgs(g)).dump(), io::higgs_to_json(generate_higgs(other)).dump());
    for (std::int64_t p : {2, 3, 5, 7, 11}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const HiggsModule h = generate_higgs({p, 32, 1 + seed % 4, 1 + seed % 6, 0.6, seed});
            EXPECT_TRUE(validate_higgs(h).valid()) << "p = " << p << " seed " << seed;
            EXPECT_TRUE(validate_rep(generate_rep({p, 32, 2, 3, 0.6, seed})).valid());
        }
    }
}

TEST(Generator, ZeroDensityGivesZeroField) {
    const HiggsModule h = generate_higgs({3, 24, 3, 4, 0.0, 9});
    EXPECT_TRUE(is_trivial(h));
    EXPECT_TRUE(is_trivial(generate_rep({3, 24, 3, 4, 0.0, 9})));
}

TEST(Verify, ConfigValidationAndRoundTrip) {
    verify::VerifyConfig c;
    EXPECT_NO_THROW(verify::check_config(c));
    const verify::VerifyConfig back = verify::config_from_json(verify::config_to_json(c));
    EXPECT_EQ(verify::config_to_json(back), verify::config_to_json(c));
    auto bad = [](const std::function<void(verify::VerifyConfig&)>& edit) {
        verify::VerifyConfig x;
        edit(x);
        return x;
    };
    EXPECT_THROW(verify::check_config(bad([](auto& x) { x.count = 0; })), ValidationError);
    EXPECT_THROW(verify::check_config(bad([](auto& x) { x.suites = {"nonsense"}; })), ValidationError);
    EXPECT_THROW(verify::check_config(bad([](auto& x) { x.primes = {4}; })), std::invalid_argument);
    EXPECT_THROW(verify::check_config(bad([](auto& x) { x.n_max = 7; })), ValidationError);
}

TEST(Verify, SummaryIndependentOfThreadCount) {
    verify::VerifyConfig c;
    c.count = 12;
    c.seed = 5;
    std::vector<verify::SuiteResult> one, many;
    for (const auto& s : c.suites) {
        c.threads = 1;
        one.push_back(verify::run_suite(c, s));
        c.threads = 3;
        many.push_back(verify::run_suite(c, s));
    }
    const std::string a = verify::summary_json(c, one).dump(2);
    EXPECT_EQ(a, verify::summary_json(c, many).dump(2));
    EXPECT_TRUE(verify::summary_json(c, one)["ok"].get<bool>());
    EXPECT_EQ(a.find("time"), std::string::npos);
}

TEST(Verify, CorruptedInstanceFailsAndReplays) {
    verify::VerifyConfig c;
    c.suites = {"roundtrip"};
    const HiggsModule bad = io::higgs_from_json(noncommuting_instance());
    const verify::SuiteResult r = verify::run_on_instance(c, "roundtrip", bad);
    EXPECT_EQ(r.failed, 1u);
    ASSERT_TRUE(r.first_failure.has_value());
    EXPECT_NE(r.first_message.find("commute"), std::string::npos);
    const json ce = json::parse(verify::counterexample_json(c, r).dump());
    EXPECT_EQ(ce["kind"], "counterexample");
    EXPECT_FALSE(verify::replay(ce).ok);
}

TEST(Verify, ReplayOfPassingCaseSucceeds) {
    verify::VerifyConfig c;
    c.suites = {"cohomology"};
    verify::SuiteResult r;
    r.name = "cohomology";
    r.first_failure = 3;
    EXPECT_TRUE(verify::replay(verify::counterexample_json(c, r)).ok);
    EXPECT_THROW(verify::replay(io::read_file(fixture("zero_higgs.json"))), ParseError);
}
