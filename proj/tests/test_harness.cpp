#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "accause/correspondence.hpp"
#include "accause/harness.hpp"
#include "support.hpp"

using namespace accause;

TEST_CASE("generation is deterministic per seed and index") {
    FuzzCaps caps;
    caps.seed = 7;
    GeneratedInstance a = gen_random_model(caps, 0);
    GeneratedInstance b = gen_random_model(caps, 0);
    CHECK(write_model(a.model) == write_model(b.model));
    CHECK(a.context == b.context);
    GeneratedInstance c = gen_random_model(caps, 1);
    CHECK(write_model(a.model) != write_model(c.model));

    TrialRng r1(7, 3), r2(7, 3), r3(7, 3, 1);
    std::uint64_t x = r1.next();
    CHECK(x == r2.next());
    CHECK(x != r3.next());
}

TEST_CASE("generated models respect the caps") {
    FuzzCaps caps;
    caps.max_domain = 2;
    caps.max_endogenous = 5;
    caps.max_exogenous = 1;
    for (std::size_t i = 0; i < 100; ++i) {
        GeneratedInstance g = gen_random_model(caps, i);
        const Signature& sig = g.model.signature();
        CHECK(sig.num_exogenous() == 1);
        CHECK(sig.num_endogenous() >= 2);
        CHECK(sig.num_endogenous() <= 5);
        for (VarId v = 0; v < static_cast<VarId>(sig.size()); ++v) CHECK(sig.range_size(v) == 2);
        CHECK(validate_recursive(g.model).size() == sig.num_endogenous());
        CHECK(g.context.size() == sig.num_exogenous());
    }
    GeneratedInstance bin = gen_binary_model(3, 8);
    CHECK(bin.model.signature().num_endogenous() == 8);
    FuzzCaps bad;
    bad.max_domain = 0;
    CHECK_THROWS_AS(bad.validate(), SemanticError);
}

TEST_CASE("generated causes and formulas have the documented shapes") {
    FuzzCaps caps;
    for (std::size_t i = 0; i < 50; ++i) {
        GeneratedInstance g = gen_random_model(caps, i);
        const Signature& sig = g.model.signature();
        TrialRng rng(1, i);
        auto cause = gen_cause(rng, sig, g.model.solve(g.context));
        CHECK(cause.size() >= 1);
        CHECK(cause.size() <= 2);
        for (const Event& e : cause) CHECK_FALSE(sig.is_exogenous(e.var));
        CHECK(is_propositional(gen_effect(rng, sig, 3)));
        Formula ls = gen_ls_formula(rng, sig, 3);
        CHECK_FALSE(contains_counterfactual(ls));
        CHECK_FALSE(contains_intervention(intervention_as_counterfactual(ls)));
    }
}

TEST_CASE("counterparts of default-cap models rarely exceed the state cap") {
    FuzzCaps caps;
    std::size_t skipped = 0, n = 200;
    for (std::size_t i = 0; i < n; ++i) {
        GeneratedInstance g = gen_random_model(caps, i);
        if (g.model.signature().assignment_count() > caps.state_cap) ++skipped;
    }
    CHECK(skipped * 10 < n);
}

TEST_CASE("small differential runs agree and serialize deterministically") {
    FuzzCaps caps;
    caps.trials = 20;
    for (Suite s : {Suite::Theorem1, Suite::Theorem2, Suite::Proposition3, Suite::Theorem4, Suite::Theorem5}) {
        DifferentialReport r = run_differential(s, caps);
        CAPTURE(static_cast<int>(s));
        CHECK(r.trials == 20);
        CHECK(r.disagreements_count == 0);
        CHECK(r.agreements + r.disagreements_count == r.checks);
        CHECK(report_to_json(r, false) == report_to_json(run_differential(s, caps), false));
        auto j = nlohmann::json::parse(report_to_json(r));
        CHECK(j["disagreements"] == 0);
        CHECK(j["bundles"].is_array());
    }
}

TEST_CASE("disagreements carry replayable bundles") {
    FuzzCaps caps;
    caps.trials = 60;
    caps.negated = true;
    DifferentialReport r = run_differential(Suite::Theorem1, caps);
    REQUIRE(r.disagreements_count > 0);
    const Disagreement& d = r.disagreements.front();
    CHECK_FALSE(d.replay.empty());
    CHECK(parse_model(d.model_text).signature().num_endogenous() > 0);

    auto dir = std::filesystem::temp_directory_path() / "accause-bundle-test";
    std::filesystem::remove_all(dir);
    write_repro_bundles(r, dir.string());
    CHECK(std::filesystem::exists(dir / "report.json"));
    CHECK(std::filesystem::exists(dir / ("trial-" + std::to_string(d.trial) + ".cm")));
    CHECK(report_to_text(r).find("disagree") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("corpus scenarios pass and the shipped files match") {
    for (const ScenarioResult& s : run_corpus()) {
        CAPTURE(s.name);
        CAPTURE(s.detail);
        CHECK(s.passed);
    }
    for (const auto& [name, text] : corpus_files()) {
        std::ifstream in(testing::data_path(name));
        std::stringstream buf;
        buf << in.rdbuf();
        CAPTURE(name);
        CHECK(buf.str() == text);
    }
}
