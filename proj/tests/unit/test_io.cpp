#include <doctest.h>

#include <filesystem>

#include "nlmp/errors.hpp"
#include "nlmp/io.hpp"
#include "../support/fixtures.hpp"

using namespace nlmp;

namespace {

const std::filesystem::path corpus_dir = NLMP_CORPUS_DIR;

std::pair<std::size_t, std::size_t> error_at(const char* text) {
    try {
        parse_model(text);
    } catch (const ParseError& e) {
        return {e.line(), e.column()};
    }
    return {0, 0};
}

std::string error_message(const char* text) {
    try {
        parse_model(text);
    } catch (const ParseError& e) {
        return e.message();
    }
    return {};
}

}  // namespace

TEST_CASE("minimal model") {
    const ModelDocument doc = parse_model("states s\nlabels a\n");
    CHECK(doc.model.state_count() == 1);
    CHECK(doc.model.label_count() == 1);
    CHECK(doc.model.transitions(0, 0).empty());
    CHECK(doc.model.sigma().is_powerset());
    CHECK_FALSE(doc.lmp.has_value());
    CHECK(nlmp_validate(doc.model).valid());
}

TEST_CASE("the FIG1 corpus file is the canonical model") {
    const ModelDocument doc = load_model(corpus_dir / "fig1.nlmp");
    CHECK(doc.model == fixtures::fig1());
    REQUIRE(doc.location_of(0, 0).has_value());
    CHECK(doc.location_of(0, 0)->line == 13);
    CHECK_FALSE(doc.location_of(1, 1).has_value());
    CHECK(load_model(corpus_dir / "measurability_failure.nlmp").model == fixtures::measurability_failure());
    CHECK(load_model(corpus_dir / "identical_rows.nlmp").model.state_count() == 3);
}

TEST_CASE("weights must sum to one") {
    const char* text = "states s x y\nlabels a\ntrans s a x:1/2 y:1/3\n";
    CHECK(error_message(text) == "weights sum to 5/6");
    CHECK(error_at(text) == std::pair<std::size_t, std::size_t>{3, 11});  // the first weight
}

TEST_CASE("parse errors") {
    CHECK(error_at("labels a\n").first == 1);
    CHECK(error_message("labels a\n") == "missing 'states' declaration");
    CHECK(error_at("states s\nfoo\n") == std::pair<std::size_t, std::size_t>{2, 1});
    CHECK(error_at("states s\nlabels a\ntrans s b -> s\n") == std::pair<std::size_t, std::size_t>{3, 9});
    CHECK(error_at("states s\nlabels a\ntrans q a -> s\n") == std::pair<std::size_t, std::size_t>{3, 7});
    CHECK(error_at("states s s\n").first == 1);
    CHECK(error_at("states s\nlabels a\ntrans s a s:2\n").first == 3);
    CHECK(error_at("states s\nlabels a\ntrans s a s:x\n").first == 3);
    CHECK(error_at("states s\nlabels a\ntrans s a s:1/2 s:1/2\n").first == 3);
    CHECK(error_at("states s\nlabels a\ntrans s a ->\n").first == 3);
    CHECK(error_at("states s\nlabels a\ntrans s a -> s\nstates t\n").first == 4);
    CHECK(error_at("states s t\nlabels a\nlmp\ntrans s a -> s\ntrans s a -> t\n").first == 5);
    CHECK(error_at("states s-t\n").first == 1);
    CHECK(error_at("states s t\nsigma gen {s\n").first == 2);
    CHECK(error_at("states s t\nsigma powerset\nsigma powerset\n").first == 3);
    CHECK_THROWS_AS(load_model(corpus_dir / "missing.nlmp"), std::runtime_error);
}

TEST_CASE("comments, blank lines and weights summed per atom") {
    const ModelDocument doc = parse_model(
        "# header\n"
        "states s t u   # trailing\n"
        "\n"
        "labels a\n"
        "sigma gen {s t}\n"
        "trans u a s:1/4 t:1/4 u:1/2\n");
    CHECK(doc.model.sigma().atom_count() == 2);
    REQUIRE(doc.model.transitions(2, 0).size() == 1);
    const Measure& mu = doc.model.pool().at(doc.model.transitions(2, 0).first());
    CHECK(measure_eval(mu, StateSet(3, {0, 1})) == Rational(1, 2));
}

TEST_CASE("serialization round-trips on the corpus") {
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
        if (entry.path().extension() != ".nlmp")
            continue;
        ++files;
        const ModelDocument doc = load_model(entry.path());
        const std::string text = serialize_model(doc);
        const ModelDocument back = parse_model(text);
        CHECK_MESSAGE(back.model == doc.model, entry.path());
        CHECK(back.lmp.has_value() == doc.lmp.has_value());
        CHECK(serialize_model(back) == text);
        CHECK(model_digest(back) == model_digest(doc));
        CHECK(model_digest(doc).size() == 16);
    }
    CHECK(files == 8);
}

TEST_CASE("digests tell models apart") {
    const ModelDocument a = load_model(corpus_dir / "np_equal.nlmp");
    const ModelDocument b = load_model(corpus_dir / "np_unequal.nlmp");
    CHECK(model_digest(a) != model_digest(b));
    CHECK(model_digest(a) == model_digest(load_model(corpus_dir / "np_equal.nlmp")));
}
