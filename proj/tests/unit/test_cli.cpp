#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "nlmp/cli.hpp"

using namespace nlmp;
using namespace nlmp::cli;

namespace {

std::string corpus(const char* name) { return (std::filesystem::path(NLMP_CORPUS_DIR) / name).string(); }

std::string write_temp(const char* name, const char* text) {
    const std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p.string();
}

const char* const psi_star = "<a>[>1/4 <b>[T]>=1, <3/4 <b>[T]>=1]";

}  // namespace

TEST_CASE("validate") {
    CHECK(cmd_validate(corpus("fig1.nlmp")).exit_code == exit_ok);
    CHECK(cmd_validate(corpus("measurability_repaired.nlmp")).exit_code == exit_ok);
    const CommandResult bad = cmd_validate(corpus("measurability_failure.nlmp"));
    CHECK(bad.exit_code == exit_invalid_model);
    CHECK(bad.report["valid"] == false);
    REQUIRE(bad.report["findings"].size() >= 1);
    CHECK(bad.report["findings"][0]["preimage"] == nlohmann::json{"s"});
    CHECK(bad.report["findings"][0]["line"].is_number());

    const CommandResult malformed = cmd_validate(write_temp("nlmp_malformed.nlmp", "states s\ntrans s\n"));
    CHECK(malformed.exit_code == exit_usage);
    CHECK(malformed.report["error"]["kind"] == "parse");
    CHECK(malformed.report["error"]["line"] == 2);
    CHECK(cmd_validate(corpus("does_not_exist.nlmp")).exit_code == exit_usage);

    for (const char* name : {"coarse_valid.nlmp", "identical_rows.nlmp", "lmp_chain.nlmp", "np_equal.nlmp",
                             "np_unequal.nlmp"})
        CHECK_MESSAGE(cmd_validate(corpus(name)).exit_code == exit_ok, name);
}

TEST_CASE("bisim") {
    const CommandResult r = cmd_bisim(corpus("fig1.nlmp"), "all");
    CHECK(r.exit_code == exit_ok);
    const nlohmann::json singletons = {{"s"}, {"t"}, {"x"}, {"y"}, {"z"}};
    CHECK(r.report["traditional"]["partition"] == singletons);
    CHECK(r.report["state"]["partition"] == singletons);
    CHECK(r.report["event"]["partition"] == singletons);
    CHECK(r.report["chain"]["holds"] == true);
    CHECK(r.report["chain"]["all_equal"] == true);

    const CommandResult total = cmd_bisim(corpus("identical_rows.nlmp"), "traditional");
    CHECK(total.report["traditional"]["partition"].size() == 1);
    CHECK_FALSE(total.report.contains("state"));

    const CommandResult lmp = cmd_bisim(corpus("lmp_chain.nlmp"), "all");
    CHECK(lmp.exit_code == exit_ok);
    CHECK(lmp.report["lmp_bisimilarity"] == lmp.report["traditional"]["partition"]);
    CHECK(lmp.report["lmp_bisimilarity"] == lmp.report["state"]["partition"]);

    const CommandResult coarse = cmd_bisim(corpus("coarse_valid.nlmp"), "event");
    CHECK(coarse.report["event"]["partition"] == nlohmann::json{{"s", "t"}, {"u", "v"}, {"w"}});

    CHECK(cmd_bisim(corpus("fig1.nlmp"), "weak").exit_code == exit_usage);
    CHECK(cmd_bisim(corpus("measurability_failure.nlmp"), "all").exit_code == exit_invalid_model);
}

TEST_CASE("check") {
    const CommandResult all = cmd_check(corpus("fig1.nlmp"), "T", std::nullopt);
    CHECK(all.exit_code == exit_ok);
    CHECK(all.report["satisfying_states"] == nlohmann::json{"s", "t", "x", "y", "z"});
    CHECK(cmd_check(corpus("fig1.nlmp"), psi_star, "s").exit_code == exit_ok);
    const CommandResult t = cmd_check(corpus("fig1.nlmp"), psi_star, "t");
    CHECK(t.exit_code == exit_unsatisfied);
    CHECK(t.report["satisfied"] == false);
    CHECK(t.report["depth"] == 2);
    CHECK(cmd_check(corpus("fig1.nlmp"), "<a>[T", std::nullopt).exit_code == exit_usage);
    CHECK(cmd_check(corpus("fig1.nlmp"), "T", "w").exit_code == exit_usage);
    CHECK(cmd_check(corpus("fig1.nlmp"), "<e>[T]>=1", std::nullopt).exit_code == exit_usage);
}

TEST_CASE("distinguish") {
    const CommandResult st = cmd_distinguish(corpus("fig1.nlmp"), "s", "t");
    CHECK(st.exit_code == exit_ok);
    CHECK(st.report["formula"] == "<a>[>1/4 <b>[>0 T], <3/4 <b>[>0 T]]");
    CHECK(st.report["holds_at"] == "s");
    const CommandResult xx = cmd_distinguish(corpus("fig1.nlmp"), "x", "x");
    CHECK(xx.exit_code == exit_equivalent);
    CHECK(xx.report["result"] == "equivalent");
    CHECK(cmd_distinguish(corpus("np_equal.nlmp"), "s", "t").exit_code == exit_equivalent);
    CHECK(cmd_distinguish(corpus("np_unequal.nlmp"), "s", "t").exit_code == exit_ok);
    CHECK(cmd_distinguish(corpus("coarse_valid.nlmp"), "s", "u").exit_code == exit_unsupported);
}

TEST_CASE("equiv") {
    const CommandResult r = cmd_equiv(corpus("fig1.nlmp"), "Lf");
    CHECK(r.exit_code == exit_ok);
    CHECK(r.report["partition"].size() == 5);
    CHECK(r.report["formulas"].size() == 10);
    CHECK(cmd_equiv(corpus("identical_rows.nlmp"), "L").report["partition"].size() == 1);
    CHECK(cmd_equiv(corpus("fig1.nlmp"), "M").exit_code == exit_usage);
}

TEST_CASE("reports are deterministic apart from timing") {
    for (const auto& entry : std::filesystem::directory_iterator(NLMP_CORPUS_DIR)) {
        const std::string path = entry.path().string();
        const CommandResult a = cmd_bisim(path, "all");
        const CommandResult b = cmd_bisim(path, "all");
        CHECK(a.report.contains(timing_key));
        CHECK(stable_dump(a.report) == stable_dump(b.report));
        CHECK(stable_dump(a.report).find(timing_key) == std::string::npos);
        CHECK(stable_dump(cmd_validate(path).report) == stable_dump(cmd_validate(path).report));
    }
    const nlohmann::json u = partition_json(*make_universe({"b", "a", "c"}), Partition::from_keys(std::vector<int>{1, 0, 1}));
    CHECK(u == nlohmann::json{{"a"}, {"b", "c"}});
}
