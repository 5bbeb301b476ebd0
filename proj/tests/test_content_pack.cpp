#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "entrex/content_pack.hpp"
#include "support.hpp"

using namespace entrex;
using namespace entrex::pack;

namespace {

bool has_error_at(const ValidationReport& r, const std::string& path) {
    return std::any_of(r.diagnostics.begin(), r.diagnostics.end(), [&](const Diagnostic& d) {
        return d.severity == Severity::Error && d.path == path;
    });
}

bool has_error_containing(const ValidationReport& r, const std::string& text) {
    return std::any_of(r.diagnostics.begin(), r.diagnostics.end(), [&](const Diagnostic& d) {
        return d.severity == Severity::Error && d.message.find(text) != std::string::npos;
    });
}

}  // namespace

TEST_CASE("default pack has the eight curriculum levels in order", "[content_pack]") {
    const auto& p = default_pack();
    const std::vector<std::string> titles = {
        "Market and Ideas",       "Strategic Positioning", "Product Strategy",
        "Price Strategy",         "Distribution Strategy", "Communication Strategy",
        "SWOT Analysis",          "Financial Viability"};
    REQUIRE(p.level_titles() == titles);
    for (std::size_t i = 0; i < p.levels.size(); ++i) {
        CHECK(p.levels[i].number == static_cast<int>(i) + 1);
        CHECK(p.levels[i].quiz.size() >= 5);
    }
}

TEST_CASE("default pack validates without diagnostics", "[content_pack]") {
    const auto report = validate_pack(default_pack());
    CHECK(report.ok);
    CHECK(report.diagnostics.empty());
}

TEST_CASE("default pack taxonomies", "[content_pack]") {
    const auto& p = default_pack();
    REQUIRE(p.levels[3].title == "Price Strategy");
    const auto* pricing = p.taxonomy(p.levels[3].exercises.at(0).taxonomy);
    REQUIRE(pricing != nullptr);
    CHECK(pricing->categories.size() == 9);

    const auto& swot_level = p.levels[6];
    auto swot = std::find_if(swot_level.exercises.begin(), swot_level.exercises.end(),
                             [](const ExerciseRef& e) {
                                 return e.kind == ExerciseKind::Classification &&
                                        e.taxonomy == "swot";
                             });
    REQUIRE(swot != swot_level.exercises.end());
    CHECK(p.taxonomy("swot")->categories.size() == 4);
    CHECK(p.taxonomy("swot")->items.size() == 12);

    CHECK(std::count_if(p.floors.begin(), p.floors.end(),
                        [](const Floor& f) { return f.kind == FloorKind::TopList; }) == 1);
    CHECK(p.taxonomy("distribution_strategies")->categories.size() == 3);
    CHECK(p.taxonomy("communication_cycle")->categories ==
          std::vector<std::string>{"Sender", "Encoding", "Message", "Decoder", "Receiver"});
    CHECK(p.profile.areas.size() == 6);
    CHECK(p.profile.items.size() == 24);
}

TEST_CASE("load_pack accepts the serialized default pack", "[content_pack]") {
    const auto text = serialize_pack(default_pack());
    const auto loaded = load_pack(text);
    CHECK(loaded.levels.size() == 8);
    CHECK(loaded.floors.size() == 6);
    CHECK(loaded == default_pack());
}

TEST_CASE("load_pack rejects empty and malformed documents", "[content_pack]") {
    CHECK_THROWS_AS(load_pack(""), ParseError);
    CHECK_THROWS_AS(load_pack("   \n"), ParseError);

    try {
        load_pack("{\n  \"levels\": [\n    1,,\n  ]\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 0);
        CHECK(e.code() == ErrorCode::ParseError);
    }
}

TEST_CASE("load_pack reports a deleted level as a validation error", "[content_pack]") {
    auto doc = to_json(default_pack());
    doc["levels"].erase(4);
    try {
        load_pack(doc.dump());
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(has_error_containing(e.report(), "expected 8 levels, found 7"));
        CHECK_FALSE(e.report().ok);
    }
}

TEST_CASE("load_pack reports shape problems with paths", "[content_pack]") {
    auto doc = to_json(default_pack());
    doc["levels"][2]["quiz"][0].erase("correct_index");
    doc["floors"][1]["kind"] = "Basement";
    doc["levels"][0]["number"] = "one";
    try {
        load_pack(doc.dump());
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const auto& r = e.report();
        CHECK(has_error_at(r, "levels[2].quiz[0].correct_index"));
        CHECK(has_error_at(r, "floors[1].kind"));
        CHECK(has_error_at(r, "levels[0].number"));
    }
    CHECK_THROWS_AS(load_pack("[1, 2, 3]"), ValidationError);
}

TEST_CASE("validate_pack flags correct_index equal to option count", "[content_pack]") {
    auto p = default_pack();
    auto& q = p.levels[2].quiz[1];
    q.correct_index = static_cast<int>(q.options.size());
    const auto r = validate_pack(p);
    CHECK_FALSE(r.ok);
    CHECK(has_error_at(r, "levels[2].quiz[1].correct_index"));
}

TEST_CASE("validate_pack flags duplicate floor kinds", "[content_pack]") {
    auto p = default_pack();
    p.floors[0].kind = FloorKind::Chat;
    const auto r = validate_pack(p);
    CHECK_FALSE(r.ok);
    CHECK(has_error_containing(r, "duplicate floor kind"));
}

TEST_CASE("validate_pack flags references to missing taxonomies", "[content_pack]") {
    auto p = default_pack();
    p.taxonomies.erase("swot");
    const auto r = validate_pack(p);
    CHECK(has_error_at(r, "levels[6].exercises[0].taxonomy"));
}

TEST_CASE("validate_pack orders diagnostics by document position", "[content_pack]") {
    auto p = default_pack();
    p.levels[5].title = "";
    p.levels[1].quiz[0].options = {"only"};
    p.floors[3].title = "";
    const auto r = validate_pack(p);
    REQUIRE(r.diagnostics.size() >= 3);
    CHECK(r.diagnostics[0].path.rfind("levels[1]", 0) == 0);
    CHECK(r.diagnostics[1].path == "levels[5].title");
    CHECK(r.diagnostics.back().path == "floors[3].title");
}

TEST_CASE("static resources outside recreation are a warning only", "[content_pack]") {
    auto p = default_pack();
    p.floors[0].static_resources.push_back({"Guide", "docs/guide.pdf"});
    const auto r = validate_pack(p);
    CHECK(r.ok);
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].severity == Severity::Warning);
}

TEST_CASE("single-field invariant mutations always produce an error", "[content_pack][fuzz]") {
    std::mt19937_64 rng(20240501);
    for (int i = 0; i < 500; ++i) {
        auto p = default_pack();
        const auto what = testing::break_one_invariant(p, rng);
        INFO(what);
        const auto r = validate_pack(p);
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.error_count() >= 1);
    }
}

TEST_CASE("validator survives arbitrary byte damage", "[content_pack][fuzz]") {
    const std::string text = serialize_pack(default_pack());
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pos(0, text.size() - 1);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int i = 0; i < 300; ++i) {
        std::string damaged = text;
        for (int k = 0; k < 3; ++k) damaged[pos(rng)] = static_cast<char>(byte(rng));
        try {
            const auto p = load_pack(damaged);
            CHECK(validate_pack(p).ok);
        } catch (const ParseError&) {
        } catch (const ValidationError& e) {
            CHECK_FALSE(e.report().ok);
        }
    }
}

TEST_CASE("round trip: serialize(load(b)) re-parses to an equal pack", "[content_pack]") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
        auto p = default_pack();
        // shuffle content a little while keeping it valid
        auto& level = p.levels[rng() % 8];
        std::shuffle(level.quiz.begin(), level.quiz.end(), rng);
        level.content_units.push_back({"Note " + std::to_string(i), "Extra text \"quoted\" é"});
        const auto once = load_pack(serialize_pack(p));
        const auto twice = load_pack(serialize_pack(once));
        CHECK(once == p);
        CHECK(twice == once);
    }
}

TEST_CASE("public view strips correct answers", "[content_pack]") {
    const auto view = public_view(default_pack());
    const auto dump = view.dump();
    CHECK(dump.find("correct_index") == std::string::npos);
    CHECK(view["levels"].size() == 8);
}
