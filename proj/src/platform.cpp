#include "entrex/platform.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "entrex/error.hpp"
#include "entrex/rng.hpp"

namespace entrex::platform {

namespace fs = std::filesystem;
using nlohmann::json;

std::int64_t system_now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

// ---------------------------------------------------------------------------
// leaderboard

bool ranks_before(const LeaderEntry& a, const LeaderEntry& b) noexcept {
    if (a.score != b.score) return a.score > b.score;
    if (a.achieved_at_ms != b.achieved_at_ms) return a.achieved_at_ms < b.achieved_at_ms;
    return a.player_id < b.player_id;
}

json to_json(const LeaderEntry& e) {
    return {{"player_id", e.player_id}, {"score", e.score}, {"achieved_at_ms", e.achieved_at_ms}};
}

Leaderboard::Leaderboard(fs::path file, StorageOptions options)
    : file_(std::move(file)), options_(std::move(options)) {
    std::error_code ec;
    if (!fs::exists(*file_, ec)) return;
    try {
        const json doc = json::parse(read_file(*file_));
        for (const auto& e : doc.at("entries")) {
            LeaderEntry entry{e.at("player_id").get<std::string>(), e.at("score").get<std::int64_t>(),
                              e.at("achieved_at_ms").get<std::int64_t>()};
            best_[entry.player_id] = entry;
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::StorageError,
                    "leaderboard " + file_->string() + " is unreadable: " + e.what());
    }
}

void Leaderboard::record_result(const std::string& player_id,
                                const market::SimulationOutcome& outcome,
                                std::int64_t achieved_at_ms) {
    if (!outcome.success) {
        throw Error(ErrorCode::NotSuccessful, "only successful simulations are ranked");
    }
    std::lock_guard lock(mutex_);
    auto it = best_.find(player_id);
    if (it != best_.end() && it->second.score >= outcome.score) return;

    std::optional<LeaderEntry> previous;
    if (it != best_.end()) previous = it->second;
    best_[player_id] = {player_id, outcome.score, achieved_at_ms};
    try {
        persist_locked();
    } catch (...) {
        if (previous) {
            best_[player_id] = *previous;
        } else {
            best_.erase(player_id);
        }
        throw;
    }
}

void Leaderboard::persist_locked() const {
    if (!file_) return;
    json entries = json::array();
    for (const auto& [_, e] : best_) entries.push_back(to_json(e));
    atomic_write(*file_, json{{"entries", std::move(entries)}}.dump(2) + "\n", options_);
}

std::vector<LeaderEntry> Leaderboard::top_list(std::size_t limit) const {
    std::vector<LeaderEntry> all;
    {
        std::lock_guard lock(mutex_);
        all.reserve(best_.size());
        for (const auto& [_, e] : best_) all.push_back(e);
    }
    const std::size_t n = std::min(limit, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(),
                      ranks_before);
    all.resize(n);
    return all;
}

std::size_t Leaderboard::size() const {
    std::lock_guard lock(mutex_);
    return best_.size();
}

// ---------------------------------------------------------------------------
// chat

bool valid_room_name(std::string_view room) noexcept {
    if (room.empty() || room.size() > 64) return false;
    return std::all_of(room.begin(), room.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-';
    });
}

std::size_t utf8_length(std::string_view text) noexcept {
    return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) {
        return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
    }));
}

json to_json(const ChatMessage& m) {
    return {{"room", m.room},
            {"sender", m.sender},
            {"body", m.body},
            {"sequence", m.sequence},
            {"sent_at_ms", m.sent_at_ms}};
}

namespace {

ChatMessage message_from_json(const json& j) {
    return {j.at("room").get<std::string>(), j.at("sender").get<std::string>(),
            j.at("body").get<std::string>(), j.at("sequence").get<std::int64_t>(),
            j.at("sent_at_ms").get<std::int64_t>()};
}

}  // namespace

ChatStore::ChatStore(fs::path dir, StorageOptions options)
    : dir_(std::move(dir)), options_(std::move(options)) {
    std::error_code ec;
    if (!fs::is_directory(*dir_, ec)) return;
    for (const auto& entry : fs::directory_iterator(*dir_)) {
        if (entry.path().extension() != ".jsonl") continue;
        const std::string name = entry.path().stem().string();
        if (!valid_room_name(name)) continue;
        auto room = std::make_unique<Room>();
        std::istringstream lines(read_file(entry.path()));
        std::string line;
        while (std::getline(lines, line)) {
            if (line.empty()) continue;
            try {
                ChatMessage m = message_from_json(json::parse(line));
                if (m.sequence != static_cast<std::int64_t>(room->messages.size()) + 1) break;
                room->messages.push_back(std::move(m));
            } catch (const json::exception&) {
                break;  // torn tail from an interrupted append
            }
        }
        rooms_.emplace(name, std::move(room));
    }
}

ChatStore::Room& ChatStore::room(const std::string& name) const {
    std::lock_guard lock(rooms_mutex_);
    auto& slot = rooms_[name];
    if (!slot) slot = std::make_unique<Room>();
    return *slot;
}

ChatMessage ChatStore::post_message(const std::string& room_name, const std::string& sender,
                                    const std::string& body, std::int64_t now_ms) {
    if (!valid_room_name(room_name)) {
        throw Error(ErrorCode::InvalidRoom, "invalid room name \"" + room_name + "\"");
    }
    const bool blank = std::all_of(body.begin(), body.end(),
                                   [](unsigned char c) { return std::isspace(c); });
    if (blank) throw Error(ErrorCode::EmptyBody, "message body is empty");
    if (utf8_length(body) > kMaxChatBody) {
        throw Error(ErrorCode::BodyTooLong, "message body exceeds " +
                                                std::to_string(kMaxChatBody) + " characters");
    }

    Room& r = room(room_name);
    std::lock_guard lock(r.mutex);
    ChatMessage m{room_name, sender, body, static_cast<std::int64_t>(r.messages.size()) + 1,
                  now_ms};
    if (dir_) append_line(*dir_ / (room_name + ".jsonl"), to_json(m).dump(), options_);
    r.messages.push_back(m);
    return m;
}

std::vector<ChatMessage> ChatStore::list_messages(const std::string& room_name,
                                                  std::int64_t since_sequence) const {
    if (!valid_room_name(room_name)) {
        throw Error(ErrorCode::InvalidRoom, "invalid room name \"" + room_name + "\"");
    }
    if (since_sequence < 0) throw Error(ErrorCode::BadRequest, "since must be >= 0");
    const Room& r = room(room_name);
    std::lock_guard lock(r.mutex);
    // sequence k lives at index k - 1
    const auto start = static_cast<std::size_t>(
        std::min<std::int64_t>(since_sequence, static_cast<std::int64_t>(r.messages.size())));
    return {r.messages.begin() + static_cast<std::ptrdiff_t>(start), r.messages.end()};
}

// ---------------------------------------------------------------------------
// player records

namespace {

json simulation_json(const ActiveSimulation& sim) {
    json turns = json::array();
    for (const auto& t : sim.turns) turns.push_back(market::to_json(t));
    return {{"config", market::to_json(sim.config)},
            {"initial_state", market::to_json(sim.initial_state)},
            {"state", market::to_json(sim.state)},
            {"turns", std::move(turns)},
            {"finished", sim.finished}};
}

ActiveSimulation simulation_from_json(const json& j) {
    ActiveSimulation sim;
    sim.config = market::apply_overrides({}, j.at("config"));
    sim.initial_state = market::state_from_json(j.at("initial_state"));
    sim.state = market::state_from_json(j.at("state"));
    for (const auto& t : j.at("turns")) sim.turns.push_back(market::turn_result_from_json(t));
    sim.finished = j.at("finished").get<bool>();
    return sim;
}

}  // namespace

json to_json(const PlayerRecord& r) {
    json j = {{"format", 1},
              {"player_id", r.player_id},
              {"display_name", r.display_name},
              {"token", r.token},
              {"progress", progression::to_json(r.progress)},
              {"plan", plan::to_json(r.plan)},
              {"simulations_started", r.simulations_started}};
    j["simulation"] = r.simulation ? simulation_json(*r.simulation) : json(nullptr);
    return j;
}

PlayerRecord record_from_json(const json& j) {
    PlayerRecord r;
    r.player_id = j.at("player_id").get<std::string>();
    r.display_name = j.at("display_name").get<std::string>();
    r.token = j.at("token").get<std::string>();
    r.progress = progression::progress_from_json(j.at("progress"));
    r.plan = plan::plan_from_json(j.at("plan"));
    r.simulations_started = j.at("simulations_started").get<std::int64_t>();
    if (const auto& s = j.at("simulation"); !s.is_null()) r.simulation = simulation_from_json(s);
    return r;
}

bool same_record(const PlayerRecord& a, const PlayerRecord& b) {
    return to_json(a) == to_json(b);
}

PlayerStore::PlayerStore(fs::path dir, StorageOptions options)
    : dir_(std::move(dir)), options_(std::move(options)) {}

fs::path PlayerStore::path_for(const std::string& player_id) const {
    return dir_ / (player_id + ".json");
}

void PlayerStore::persist_player_state(const PlayerRecord& record) const {
    atomic_write(path_for(record.player_id), to_json(record).dump(2) + "\n", options_);
}

PlayerRecord PlayerStore::load(const std::string& player_id) const {
    const fs::path path = path_for(player_id);
    try {
        return record_from_json(json::parse(read_file(path)));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::StorageError,
                    "player record " + path.string() + " is unreadable: " + e.what());
    }
}

std::vector<PlayerRecord> PlayerStore::load_all() const {
    std::vector<PlayerRecord> out;
    std::error_code ec;
    if (!fs::is_directory(dir_, ec)) return out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir_)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back(load(f.stem().string()));
    return out;
}

// ---------------------------------------------------------------------------
// service

namespace {

std::string random_hex(std::size_t bytes) {
    static thread_local std::random_device device;
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes * 2);
    for (std::size_t i = 0; i < bytes; ++i) {
        const auto b = static_cast<unsigned>(device()) & 0xFFu;
        out += digits[b >> 4];
        out += digits[b & 0xF];
    }
    return out;
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

Platform::Platform(std::shared_ptr<const pack::ContentPack> pack, ServiceOptions options)
    : pack_(std::move(pack)),
      options_(std::move(options)),
      players_store_(options_.state_dir / "players", options_.storage),
      leaderboard_(options_.state_dir / "leaderboard.json", options_.storage),
      chat_(options_.state_dir / "chat", options_.storage) {
    for (auto& record : players_store_.load_all()) {
        auto slot = std::make_shared<Slot>();
        tokens_[record.token] = record.player_id;
        const std::string id = record.player_id;
        slot->record = std::move(record);
        players_.emplace(id, std::move(slot));
    }
}

PlayerRecord Platform::register_player(const std::string& display_name) {
    const bool blank = std::all_of(display_name.begin(), display_name.end(),
                                   [](unsigned char c) { return std::isspace(c); });
    if (blank) throw Error(ErrorCode::BadRequest, "display_name must not be empty");
    if (utf8_length(display_name) > 64) {
        throw Error(ErrorCode::BadRequest, "display_name must be at most 64 characters");
    }

    PlayerRecord record;
    record.display_name = display_name;
    record.token = random_hex(24);
    const std::int64_t now = now_ms();
    std::unique_lock lock(registry_mutex_);
    do {
        record.player_id = "p" + random_hex(8);
    } while (players_.contains(record.player_id));
    record.progress.player_id = record.player_id;
    record.plan = plan::BusinessPlan(record.player_id, pack_->level_titles(), now);

    players_store_.persist_player_state(record);
    auto slot = std::make_shared<Slot>();
    slot->record = record;
    players_.emplace(record.player_id, std::move(slot));
    tokens_[record.token] = record.player_id;
    return record;
}

std::string Platform::authenticate(const std::string& token) const {
    std::shared_lock lock(registry_mutex_);
    auto it = tokens_.find(token);
    if (token.empty() || it == tokens_.end()) {
        throw Error(ErrorCode::Unauthorized, "missing or unknown session token");
    }
    return it->second;
}

bool Platform::is_registered(const std::string& player_id) const {
    std::shared_lock lock(registry_mutex_);
    return players_.contains(player_id);
}

std::optional<std::string> Platform::display_name(const std::string& player_id) const {
    auto slot = [&]() -> std::shared_ptr<Slot> {
        std::shared_lock lock(registry_mutex_);
        auto it = players_.find(player_id);
        return it == players_.end() ? nullptr : it->second;
    }();
    if (!slot) return std::nullopt;
    std::lock_guard lock(slot->mutex);
    return slot->record.display_name;
}

std::shared_ptr<Platform::Slot> Platform::find_slot(const std::string& player_id) const {
    std::shared_lock lock(registry_mutex_);
    auto it = players_.find(player_id);
    if (it == players_.end()) {
        throw Error(ErrorCode::UnknownPlayer, "unknown player \"" + player_id + "\"");
    }
    return it->second;
}

void Platform::commit(Slot& slot, PlayerRecord working) {
    players_store_.persist_player_state(working);
    slot.record = std::move(working);
}

PlayerRecord Platform::snapshot(const std::string& player_id) const {
    auto slot = find_slot(player_id);
    std::lock_guard lock(slot->mutex);
    return slot->record;
}

std::uint64_t Platform::simulation_seed(const std::string& player_id,
                                        std::int64_t n) const noexcept {
    return mix_seed(options_.seed ^ mix_seed(fnv1a(player_id) + static_cast<std::uint64_t>(n)));
}

ChatMessage Platform::post_message(const std::string& room, const std::string& sender,
                                   const std::string& body) {
    if (!is_registered(sender)) {
        throw Error(ErrorCode::UnknownPlayer, "unknown player \"" + sender + "\"");
    }
    return chat_.post_message(room, sender, body, now_ms());
}

}  // namespace entrex::platform
