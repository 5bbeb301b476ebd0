#pragma once

// Host process state: player records, the top-15 leaderboard and chat
// rooms, all persisted under one state directory.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "entrex/business_plan.hpp"
#include "entrex/content_pack.hpp"
#include "entrex/market_sim.hpp"
#include "entrex/progression.hpp"
#include "entrex/storage.hpp"
#include "json.hpp"

namespace entrex::platform {

inline constexpr std::size_t kTopListSize = 15;
inline constexpr std::size_t kMaxChatBody = 1000;

using Clock = std::function<std::int64_t()>;

/// Wall clock in milliseconds since the Unix epoch.
std::int64_t system_now_ms();

// ---------------------------------------------------------------------------
// leaderboard

struct LeaderEntry {
    std::string player_id;
    std::int64_t score = 0;
    std::int64_t achieved_at_ms = 0;
    friend bool operator==(const LeaderEntry&, const LeaderEntry&) = default;
};

/// Score descending, then earlier achieved_at, then player_id.
bool ranks_before(const LeaderEntry& a, const LeaderEntry& b) noexcept;

/// One best entry per player.  With a backing file every change is written
/// through before record() returns.
class Leaderboard {
public:
    Leaderboard() = default;
    explicit Leaderboard(std::filesystem::path file, StorageOptions options = {});

    /// Keeps the player's best score; an equal score keeps the older entry.
    /// Throws NotSuccessful for failed outcomes (nothing is recorded) and
    /// StorageError.
    void record_result(const std::string& player_id, const market::SimulationOutcome& outcome,
                       std::int64_t achieved_at_ms);

    std::vector<LeaderEntry> top_list(std::size_t limit = kTopListSize) const;
    std::size_t size() const;

private:
    void persist_locked() const;

    mutable std::mutex mutex_;
    std::map<std::string, LeaderEntry> best_;
    std::optional<std::filesystem::path> file_;
    StorageOptions options_;
};

// ---------------------------------------------------------------------------
// chat

struct ChatMessage {
    std::string room;
    std::string sender;
    std::string body;
    std::int64_t sequence = 0;
    std::int64_t sent_at_ms = 0;
    friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

/// Room names are 1..64 of [A-Za-z0-9_-].
bool valid_room_name(std::string_view room) noexcept;

/// Number of Unicode code points in a UTF-8 string.
std::size_t utf8_length(std::string_view text) noexcept;

/// Per-room append-only logs.  Each room has its own lock; sequences start
/// at 1 and have no gaps.
class ChatStore {
public:
    ChatStore() = default;
    explicit ChatStore(std::filesystem::path dir, StorageOptions options = {});

    /// Throws InvalidRoom, EmptyBody, BodyTooLong, StorageError.  The caller
    /// checks that the sender is registered.
    ChatMessage post_message(const std::string& room, const std::string& sender,
                             const std::string& body, std::int64_t now_ms);

    std::vector<ChatMessage> list_messages(const std::string& room,
                                           std::int64_t since_sequence) const;

private:
    struct Room {
        mutable std::mutex mutex;
        std::vector<ChatMessage> messages;
    };
    Room& room(const std::string& name) const;

    mutable std::mutex rooms_mutex_;
    mutable std::map<std::string, std::unique_ptr<Room>> rooms_;
    std::optional<std::filesystem::path> dir_;
    StorageOptions options_;
};

nlohmann::json to_json(const ChatMessage& message);
nlohmann::json to_json(const LeaderEntry& entry);

// ---------------------------------------------------------------------------
// players

struct ActiveSimulation {
    market::VentureConfig config;
    market::MarketState initial_state;
    market::MarketState state;
    std::vector<market::TurnResult> turns;
    bool finished = false;
};

struct PlayerRecord {
    std::string player_id;
    std::string display_name;
    std::string token;
    progression::PlayerProgress progress;
    plan::BusinessPlan plan;
    std::optional<ActiveSimulation> simulation;
    std::int64_t simulations_started = 0;
};

nlohmann::json to_json(const PlayerRecord& record);
PlayerRecord record_from_json(const nlohmann::json& j);
/// Equality of everything that is persisted.
bool same_record(const PlayerRecord& a, const PlayerRecord& b);

/// One JSON document per player under `dir`.
class PlayerStore {
public:
    explicit PlayerStore(std::filesystem::path dir, StorageOptions options = {});

    std::filesystem::path path_for(const std::string& player_id) const;
    /// Atomic write-temp-then-rename.  Throws StorageError.
    void persist_player_state(const PlayerRecord& record) const;
    /// Throws StorageError when the file is missing or unreadable.
    PlayerRecord load(const std::string& player_id) const;
    /// Every *.json record in the directory; temp files are ignored.
    std::vector<PlayerRecord> load_all() const;

    StorageOptions& options() noexcept { return options_; }

private:
    std::filesystem::path dir_;
    StorageOptions options_;
};

// ---------------------------------------------------------------------------
// service

struct ServiceOptions {
    std::filesystem::path state_dir;
    std::uint64_t seed = 0;
    progression::Rules rules;
    StorageOptions storage;
    Clock clock = system_now_ms;
};

/// All game state behind the HTTP API.  Per-player mutations are serialized
/// by a per-player lock; the leaderboard and each chat room have their own.
class Platform {
public:
    Platform(std::shared_ptr<const pack::ContentPack> pack, ServiceOptions options);

    const pack::ContentPack& pack() const noexcept { return *pack_; }
    const ServiceOptions& options() const noexcept { return options_; }

    /// Creates a player with a fresh session token.
    PlayerRecord register_player(const std::string& display_name);

    /// Player id for a session token; throws Unauthorized.
    std::string authenticate(const std::string& token) const;
    bool is_registered(const std::string& player_id) const;
    std::optional<std::string> display_name(const std::string& player_id) const;

    /// Runs `fn` on the player's record under its lock and persists the
    /// record afterwards if `fn` returns normally.  Throws UnknownPlayer.
    template <typename Fn>
    auto with_player(const std::string& player_id, Fn&& fn) {
        auto slot = find_slot(player_id);
        std::lock_guard lock(slot->mutex);
        PlayerRecord working = slot->record;
        if constexpr (std::is_void_v<decltype(fn(working))>) {
            fn(working);
            commit(*slot, std::move(working));
        } else {
            auto result = fn(working);
            commit(*slot, std::move(working));
            return result;
        }
    }

    /// Read-only snapshot of a player's committed record.
    PlayerRecord snapshot(const std::string& player_id) const;

    /// Seed of the player's n-th simulation (0-based).
    std::uint64_t simulation_seed(const std::string& player_id, std::int64_t n) const noexcept;

    Leaderboard& leaderboard() noexcept { return leaderboard_; }
    ChatStore& chat() noexcept { return chat_; }
    std::int64_t now_ms() const { return options_.clock(); }

    ChatMessage post_message(const std::string& room, const std::string& sender,
                             const std::string& body);

private:
    struct Slot {
        std::mutex mutex;
        PlayerRecord record;
    };

    std::shared_ptr<Slot> find_slot(const std::string& player_id) const;
    void commit(Slot& slot, PlayerRecord working);

    std::shared_ptr<const pack::ContentPack> pack_;
    ServiceOptions options_;
    PlayerStore players_store_;
    Leaderboard leaderboard_;
    ChatStore chat_;

    mutable std::shared_mutex registry_mutex_;
    std::map<std::string, std::shared_ptr<Slot>> players_;
    std::map<std::string, std::string> tokens_;
};

}  // namespace entrex::platform
