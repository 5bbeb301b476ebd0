#pragma once

// Per-player journey through the eight levels: assessment scoring, level
// gating, the aggregate learning score that feeds the virtual market, the
// entrepreneur profile questionnaire and the answer history.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entrex/content_pack.hpp"
#include "json.hpp"

namespace entrex::progression {

struct Answer {
    std::string question_id;
    int chosen_index = 0;
    friend bool operator==(const Answer&, const Answer&) = default;
};

struct LevelAttempt {
    int level_number = 0;
    std::vector<Answer> answers;
    int score = 0;  ///< percentage 0..100
    bool passed = false;
    std::int64_t timestamp_ms = 0;
    friend bool operator==(const LevelAttempt&, const LevelAttempt&) = default;
};

struct ProfileResponse {
    std::string item_id;
    int rating = 0;
    friend bool operator==(const ProfileResponse&, const ProfileResponse&) = default;
};

struct ProfileReport {
    /// Keyed by area name; one entry per pack area.
    std::map<std::string, double> area_scores;
    std::vector<ProfileResponse> responses;
    friend bool operator==(const ProfileReport&, const ProfileReport&) = default;
};

struct PlayerProgress {
    std::string player_id;
    std::map<int, std::vector<LevelAttempt>> attempts;
    std::optional<ProfileReport> profile;
    friend bool operator==(const PlayerProgress&, const PlayerProgress&) = default;
};

struct LearningScore {
    double value = 0.0;
    std::array<int, pack::kLevelCount> per_level{};  ///< index 0 is level 1
};

struct Rules {
    int pass_threshold = 50;
};

/// Percentage of correct answers, rounded half-up.
int score_percentage(std::size_t correct, std::size_t total) noexcept;

bool is_level_unlocked(const PlayerProgress& progress, int level_number) noexcept;

struct SubmitResult {
    PlayerProgress progress;
    LevelAttempt attempt;
    /// Per-answer correctness, aligned with attempt.answers.
    std::vector<bool> correct;
};

/// Scores one attempt and appends it.  Throws UnknownLevel, LevelLocked,
/// IncompleteAnswers or InvalidAnswer.  Timestamps never go backwards: an
/// attempt older than the last recorded one takes the last timestamp.
SubmitResult submit_assessment(const PlayerProgress& progress, const pack::ContentPack& pack,
                               int level_number, const std::vector<Answer>& answers,
                               std::int64_t now_ms, const Rules& rules = {});

LearningScore aggregate_learning_score(const PlayerProgress& progress) noexcept;

/// Computes per-area means and stores the report on `progress`.  Throws
/// IncompleteResponses or RatingOutOfRange.
ProfileReport record_profile_questionnaire(PlayerProgress& progress,
                                           const pack::ProfileQuestionnaire& questionnaire,
                                           const std::vector<ProfileResponse>& responses);

struct HistoryRow {
    int level_number = 0;
    std::string prompt;
    std::string chosen_option;
    std::string correct_option;
    bool was_correct = false;
};

std::vector<HistoryRow> answer_history(const PlayerProgress& progress,
                                       const pack::ContentPack& pack);

nlohmann::json to_json(const PlayerProgress& progress);
PlayerProgress progress_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LevelAttempt& attempt);
nlohmann::json to_json(const ProfileReport& report);

}  // namespace entrex::progression
