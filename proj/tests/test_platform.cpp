#include <catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <thread>

#include "entrex/error.hpp"
#include "entrex/platform.hpp"
#include "support.hpp"

using namespace entrex;
using namespace entrex::platform;
namespace fs = std::filesystem;

namespace {

market::SimulationOutcome outcome(std::int64_t score, bool success = true) {
    market::SimulationOutcome o;
    o.success = success;
    o.score = score;
    return o;
}

StorageOptions fast() {
    StorageOptions o;
    o.fsync = false;
    return o;
}

// brute force: per-player max (earliest on ties), sort, truncate
std::vector<LeaderEntry> oracle_top(const std::vector<LeaderEntry>& recorded) {
    std::map<std::string, LeaderEntry> best;
    for (const auto& e : recorded) {
        auto it = best.find(e.player_id);
        if (it == best.end() || e.score > it->second.score) best[e.player_id] = e;
    }
    std::vector<LeaderEntry> all;
    for (const auto& [_, e] : best) all.push_back(e);
    std::sort(all.begin(), all.end(), [](const LeaderEntry& a, const LeaderEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.achieved_at_ms != b.achieved_at_ms) return a.achieved_at_ms < b.achieved_at_ms;
        return a.player_id < b.player_id;
    });
    if (all.size() > 15) all.resize(15);
    return all;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::BadRequest;
}

}  // namespace

TEST_CASE("leaderboard keeps each player's best score", "[platform][leaderboard]") {
    Leaderboard board;
    board.record_result("a", outcome(100), 1);
    board.record_result("a", outcome(90), 2);
    CHECK(board.top_list().front() == LeaderEntry{"a", 100, 1});
    board.record_result("a", outcome(100), 3);
    CHECK(board.top_list().front().achieved_at_ms == 1);
    board.record_result("a", outcome(150), 4);
    CHECK(board.top_list().front() == LeaderEntry{"a", 150, 4});
    CHECK(board.size() == 1);

    CHECK(code_of([&] { board.record_result("b", outcome(999, false), 5); }) ==
          ErrorCode::NotSuccessful);
    CHECK(board.size() == 1);
}

TEST_CASE("leaderboard tie-breaks", "[platform][leaderboard]") {
    Leaderboard board;
    board.record_result("zed", outcome(50), 10);
    board.record_result("amy", outcome(50), 20);
    board.record_result("bob", outcome(50), 10);
    const auto top = board.top_list();
    REQUIRE(top.size() == 3);
    CHECK(top[0].player_id == "bob");
    CHECK(top[1].player_id == "zed");
    CHECK(top[2].player_id == "amy");
}

TEST_CASE("leaderboard matches the brute-force oracle", "[platform][leaderboard]") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 200; ++trial) {
        Leaderboard board;
        std::vector<LeaderEntry> recorded;
        for (int i = 0; i < 100; ++i) {
            LeaderEntry e{"p" + std::to_string(rng() % 30), static_cast<std::int64_t>(rng() % 40),
                          static_cast<std::int64_t>(rng() % 50)};
            board.record_result(e.player_id, outcome(e.score), e.achieved_at_ms);
            recorded.push_back(e);
        }
        REQUIRE(board.top_list() == oracle_top(recorded));
        REQUIRE(board.top_list().size() <= kTopListSize);
    }
}

TEST_CASE("leaderboard persists and reloads", "[platform][leaderboard]") {
    testing::TempDir dir;
    const auto file = dir.path() / "leaderboard.json";
    {
        Leaderboard board(file, fast());
        board.record_result("a", outcome(10), 1);
        board.record_result("b", outcome(20), 2);
    }
    Leaderboard again(file, fast());
    CHECK(again.top_list() == std::vector<LeaderEntry>{{"b", 20, 2}, {"a", 10, 1}});
}

TEST_CASE("leaderboard rolls back when the write fails", "[platform][leaderboard]") {
    testing::TempDir dir;
    const auto file = dir.path() / "leaderboard.json";
    StorageOptions opts = fast();
    bool crash = false;
    opts.after_temp_write = [&](const fs::path&) {
        if (crash) throw Error(ErrorCode::StorageError, "injected");
    };
    Leaderboard board(file, opts);
    board.record_result("a", outcome(10), 1);
    crash = true;
    CHECK(code_of([&] { board.record_result("a", outcome(30), 2); }) == ErrorCode::StorageError);
    CHECK(board.top_list().front().score == 10);
    CHECK(Leaderboard(file, fast()).top_list().front().score == 10);
}

TEST_CASE("chat sequences, filters and limits", "[platform][chat]") {
    ChatStore chat;
    CHECK(chat.post_message("lobby", "a", "hello", 1).sequence == 1);
    CHECK(chat.post_message("lobby", "b", "hi", 2).sequence == 2);
    CHECK(chat.post_message("other", "a", "x", 3).sequence == 1);
    CHECK(chat.list_messages("lobby", 0).size() == 2);
    CHECK(chat.list_messages("lobby", 1).front().body == "hi");
    CHECK(chat.list_messages("empty-room", 0).empty());

    CHECK(code_of([&] { chat.post_message("lobby", "a", "", 4); }) == ErrorCode::EmptyBody);
    CHECK(code_of([&] { chat.post_message("lobby", "a", " \n\t", 4); }) == ErrorCode::EmptyBody);
    CHECK(code_of([&] { chat.post_message("lobby", "a", std::string(1001, 'x'), 4); }) ==
          ErrorCode::BodyTooLong);
    std::string accents;
    for (int i = 0; i < 1000; ++i) accents += "é";
    CHECK(chat.post_message("lobby", "a", accents, 5).sequence == 3);
    CHECK(code_of([&] { chat.post_message("bad room", "a", "x", 4); }) == ErrorCode::InvalidRoom);
    CHECK(code_of([&] { chat.post_message("../etc", "a", "x", 4); }) == ErrorCode::InvalidRoom);
    CHECK(code_of([&] { chat.list_messages("lobby", -1); }) == ErrorCode::BadRequest);

    CHECK(utf8_length("héllo") == 5);
    CHECK(valid_room_name("Team_7-a"));
    CHECK_FALSE(valid_room_name(""));
    CHECK_FALSE(valid_room_name(std::string(65, 'a')));
}

TEST_CASE("concurrent posters get gap-free sequences", "[platform][chat]") {
    testing::TempDir dir;
    ChatStore chat(dir.path() / "chat", fast());
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] {
            for (int i = 0; i < 50; ++i) {
                chat.post_message("lobby", "u" + std::to_string(t), "m" + std::to_string(i), i);
            }
        });
    }
    for (auto& t : threads) t.join();
    const auto all = chat.list_messages("lobby", 0);
    REQUIRE(all.size() == 400);
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].sequence == static_cast<std::int64_t>(i + 1));

    ChatStore reloaded(dir.path() / "chat", fast());
    CHECK(reloaded.list_messages("lobby", 0) == all);
    CHECK(reloaded.post_message("lobby", "x", "after", 1).sequence == 401);
}

TEST_CASE("a torn chat tail is ignored on reload", "[platform][chat]") {
    testing::TempDir dir;
    {
        ChatStore chat(dir.path(), fast());
        chat.post_message("lobby", "a", "one", 1);
        chat.post_message("lobby", "a", "two", 2);
    }
    fs::path log;
    for (const auto& entry : fs::recursive_directory_iterator(dir.path())) {
        if (entry.is_regular_file()) log = entry.path();
    }
    REQUIRE_FALSE(log.empty());
    {
        std::ofstream out(log, std::ios::app | std::ios::binary);
        out << "{\"room\":\"lobby\",\"sen";
    }
    ChatStore chat(dir.path(), fast());
    CHECK(chat.list_messages("lobby", 0).size() == 2);
}

TEST_CASE("player records persist and reload", "[platform][players]") {
    testing::TempDir dir;
    const auto pack = std::make_shared<pack::ContentPack>(pack::default_pack());
    std::string id, token;
    progression::PlayerProgress progress_before;
    {
        ServiceOptions opts;
        opts.state_dir = dir.path();
        opts.storage = fast();
        opts.clock = [] { return std::int64_t{1000}; };
        Platform platform(pack, opts);
        const auto rec = platform.register_player("Ada");
        id = rec.player_id;
        token = rec.token;
        platform.with_player(id, [&](PlayerRecord& r) {
            r.progress = progression::submit_assessment(r.progress, *pack, 1,
                                                        testing::answers_with(pack->levels[0], 6),
                                                        1000)
                             .progress;
            r.plan.upsert_section("SWOT Analysis", "draft", 1000);
            ActiveSimulation sim;
            sim.initial_state = market::initial_state({}, 0.5, 3);
            sim.state = sim.initial_state;
            r.simulation = sim;
        });
        progress_before = platform.snapshot(id).progress;
    }
    ServiceOptions opts;
    opts.state_dir = dir.path();
    opts.storage = fast();
    Platform platform(pack, opts);
    CHECK(platform.authenticate(token) == id);
    CHECK(platform.display_name(id) == "Ada");
    const auto snap = platform.snapshot(id);
    CHECK(snap.progress == progress_before);
    CHECK(*snap.plan.body("SWOT Analysis") == "draft");
    REQUIRE(snap.simulation.has_value());
    CHECK(snap.simulation->state.rng == market::initial_state({}, 0.5, 3).rng);
    CHECK(same_record(record_from_json(to_json(snap)), snap));

    CHECK(code_of([&] { platform.authenticate("nope"); }) == ErrorCode::Unauthorized);
    CHECK(code_of([&] { platform.snapshot("p0"); }) == ErrorCode::UnknownPlayer);
    CHECK(code_of([&] { platform.register_player("  "); }) == ErrorCode::BadRequest);
}

TEST_CASE("a crash after the temp write keeps the previous record", "[platform][durability]") {
    testing::TempDir dir;
    StorageOptions opts = fast();
    int countdown = -1;
    opts.after_temp_write = [&](const fs::path&) {
        if (countdown == 0) throw Error(ErrorCode::StorageError, "injected crash");
        if (countdown > 0) --countdown;
    };
    PlayerStore store(dir.path(), opts);
    PlayerRecord rec;
    rec.player_id = "p1";
    rec.display_name = "one";
    rec.token = "t";
    rec.plan = plan::BusinessPlan("p1", pack::default_pack().level_titles(), 0);
    store.persist_player_state(rec);

    auto changed = rec;
    changed.plan.upsert_section("Price Strategy", "new text", 5);
    countdown = 0;
    CHECK(code_of([&] { store.persist_player_state(changed); }) == ErrorCode::StorageError);
    CHECK(same_record(store.load("p1"), rec));

    // leftover temp files from a real crash are not records
    std::ofstream(dir.path() / "p1.json.tmp.1.1") << "{\"player_id\": \"p1\", tor";
    CHECK(store.load_all().size() == 1);

    countdown = -1;
    store.persist_player_state(changed);
    CHECK(same_record(store.load("p1"), changed));
}

TEST_CASE("platform keeps the committed record when persistence fails", "[platform][durability]") {
    testing::TempDir dir;
    bool crash = false;
    ServiceOptions opts;
    opts.state_dir = dir.path();
    opts.storage = fast();
    opts.storage.after_temp_write = [&](const fs::path&) {
        if (crash) throw Error(ErrorCode::StorageError, "injected");
    };
    Platform platform(std::make_shared<pack::ContentPack>(pack::default_pack()), opts);
    const auto id = platform.register_player("Bo").player_id;
    crash = true;
    CHECK(code_of([&] {
              platform.with_player(id, [](PlayerRecord& r) {
                  r.plan.upsert_section("SWOT Analysis", "lost", 1);
              });
          }) == ErrorCode::StorageError);
    CHECK(platform.snapshot(id).plan.body("SWOT Analysis")->empty());
}

TEST_CASE("concurrent updates to one player are serialized", "[platform][concurrency]") {
    testing::TempDir dir;
    ServiceOptions opts;
    opts.state_dir = dir.path();
    opts.storage = fast();
    Platform platform(std::make_shared<pack::ContentPack>(pack::default_pack()), opts);
    const auto id = platform.register_player("Cy").player_id;
    const auto other = platform.register_player("Di").player_id;
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] {
            for (int i = 0; i < 25; ++i) {
                platform.with_player(t % 2 ? id : other,
                                     [](PlayerRecord& r) { ++r.simulations_started; });
            }
        });
    }
    for (auto& t : threads) t.join();
    CHECK(platform.snapshot(id).simulations_started == 100);
    CHECK(platform.snapshot(other).simulations_started == 100);
    PlayerStore store(dir.path() / "players", fast());
    CHECK(store.load(id).simulations_started == 100);
}

TEST_CASE("simulation seeds differ per player and per run", "[platform]") {
    testing::TempDir dir;
    ServiceOptions opts;
    opts.state_dir = dir.path();
    opts.storage = fast();
    opts.seed = 42;
    Platform platform(std::make_shared<pack::ContentPack>(pack::default_pack()), opts);
    CHECK(platform.simulation_seed("a", 0) != platform.simulation_seed("a", 1));
    CHECK(platform.simulation_seed("a", 0) != platform.simulation_seed("b", 0));
    CHECK(platform.simulation_seed("a", 3) == platform.simulation_seed("a", 3));
}
