#include "entrex/progression.hpp"

#include <algorithm>
#include <set>

namespace entrex::progression {

using nlohmann::json;

int score_percentage(std::size_t correct, std::size_t total) noexcept {
    if (total == 0) return 0;
    // round(100 * c / n) half-up, in integers
    return static_cast<int>((200 * correct + total) / (2 * total));
}

bool is_level_unlocked(const PlayerProgress& progress, int level_number) noexcept {
    if (level_number == 1) return true;
    if (level_number < 1 || level_number > static_cast<int>(pack::kLevelCount)) return false;
    auto it = progress.attempts.find(level_number - 1);
    if (it == progress.attempts.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [](const LevelAttempt& a) { return a.passed; });
}

namespace {

std::int64_t last_timestamp(const PlayerProgress& progress) {
    std::int64_t last = 0;
    for (const auto& [_, list] : progress.attempts) {
        for (const auto& a : list) last = std::max(last, a.timestamp_ms);
    }
    return last;
}

}  // namespace

SubmitResult submit_assessment(const PlayerProgress& progress, const pack::ContentPack& pack,
                               int level_number, const std::vector<Answer>& answers,
                               std::int64_t now_ms, const Rules& rules) {
    const pack::Level* level = pack.level(level_number);
    if (level == nullptr || level_number < 1 ||
        level_number > static_cast<int>(pack::kLevelCount)) {
        throw Error(ErrorCode::UnknownLevel, "no level " + std::to_string(level_number));
    }
    if (!is_level_unlocked(progress, level_number)) {
        throw Error(ErrorCode::LevelLocked,
                    "level " + std::to_string(level_number) + " is locked until level " +
                        std::to_string(level_number - 1) + " is passed");
    }

    std::map<std::string, const pack::QuizQuestion*> by_id;
    for (const auto& question : level->quiz) by_id.emplace(question.id, &question);

    std::set<std::string> seen;
    for (const auto& a : answers) {
        if (!by_id.contains(a.question_id)) {
            throw Error(ErrorCode::IncompleteAnswers,
                        "unknown question id \"" + a.question_id + "\"");
        }
        if (!seen.insert(a.question_id).second) {
            throw Error(ErrorCode::IncompleteAnswers,
                        "question \"" + a.question_id + "\" answered more than once");
        }
    }
    for (const auto& question : level->quiz) {
        if (!seen.contains(question.id)) {
            throw Error(ErrorCode::IncompleteAnswers,
                        "question \"" + question.id + "\" is not answered");
        }
    }

    SubmitResult result{progress, {}, {}};
    LevelAttempt& attempt = result.attempt;
    attempt.level_number = level_number;
    attempt.answers = answers;
    std::size_t correct = 0;
    for (const auto& a : answers) {
        const auto& question = *by_id.at(a.question_id);
        if (a.chosen_index < 0 ||
            static_cast<std::size_t>(a.chosen_index) >= question.options.size()) {
            throw Error(ErrorCode::InvalidAnswer, "option " + std::to_string(a.chosen_index) +
                                                      " does not exist for question \"" +
                                                      a.question_id + "\"");
        }
        const bool ok = a.chosen_index == question.correct_index;
        result.correct.push_back(ok);
        if (ok) ++correct;
    }
    attempt.score = score_percentage(correct, level->quiz.size());
    attempt.passed = attempt.score >= rules.pass_threshold;
    attempt.timestamp_ms = std::max(now_ms, last_timestamp(progress));

    result.progress.attempts[level_number].push_back(attempt);
    return result;
}

LearningScore aggregate_learning_score(const PlayerProgress& progress) noexcept {
    LearningScore ls;
    int total = 0;
    for (const auto& [number, list] : progress.attempts) {
        if (number < 1 || number > static_cast<int>(pack::kLevelCount)) continue;
        int best = 0;
        for (const auto& a : list) {
            if (a.passed) best = std::max(best, a.score);
        }
        ls.per_level[static_cast<std::size_t>(number - 1)] = best;
        total += best;
    }
    ls.value = static_cast<double>(total) / (100.0 * pack::kLevelCount);
    return ls;
}

ProfileReport record_profile_questionnaire(PlayerProgress& progress,
                                           const pack::ProfileQuestionnaire& questionnaire,
                                           const std::vector<ProfileResponse>& responses) {
    std::map<std::string, const pack::ProfileItem*> items;
    for (const auto& item : questionnaire.items) items.emplace(item.id, &item);

    std::set<std::string> seen;
    for (const auto& r : responses) {
        if (!items.contains(r.item_id)) {
            throw Error(ErrorCode::IncompleteResponses, "unknown item \"" + r.item_id + "\"");
        }
        if (!seen.insert(r.item_id).second) {
            throw Error(ErrorCode::IncompleteResponses,
                        "item \"" + r.item_id + "\" answered more than once");
        }
        if (r.rating < 1 || r.rating > 5) {
            throw Error(ErrorCode::RatingOutOfRange,
                        "rating " + std::to_string(r.rating) + " for \"" + r.item_id +
                            "\" is outside 1..5");
        }
    }
    if (seen.size() != items.size()) {
        throw Error(ErrorCode::IncompleteResponses,
                    std::to_string(items.size() - seen.size()) + " item(s) not answered");
    }

    std::map<std::string, std::pair<double, int>> sums;
    for (const auto& area : questionnaire.areas) sums[area] = {0.0, 0};
    for (const auto& r : responses) {
        auto& [sum, count] = sums[items.at(r.item_id)->area];
        sum += r.rating;
        ++count;
    }

    ProfileReport report;
    report.responses = responses;
    for (const auto& [area, sc] : sums) {
        report.area_scores[area] = sc.second > 0 ? sc.first / sc.second : 0.0;
    }
    progress.profile = report;
    return report;
}

std::vector<HistoryRow> answer_history(const PlayerProgress& progress,
                                       const pack::ContentPack& pack) {
    std::vector<const LevelAttempt*> ordered;
    for (const auto& [_, list] : progress.attempts) {
        for (const auto& a : list) ordered.push_back(&a);
    }
    // attempt order = time order; ties keep level order (stable)
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
        return a->timestamp_ms < b->timestamp_ms;
    });

    std::vector<HistoryRow> rows;
    for (const LevelAttempt* attempt : ordered) {
        const pack::Level* level = pack.level(attempt->level_number);
        for (const auto& a : attempt->answers) {
            HistoryRow row;
            row.level_number = attempt->level_number;
            const pack::QuizQuestion* question = nullptr;
            if (level != nullptr) {
                for (const auto& candidate : level->quiz) {
                    if (candidate.id == a.question_id) question = &candidate;
                }
            }
            if (question == nullptr) {
                row.prompt = a.question_id;
            } else {
                auto option = [&](int i) {
                    return i >= 0 && static_cast<std::size_t>(i) < question->options.size()
                               ? question->options[static_cast<std::size_t>(i)]
                               : std::string{};
                };
                row.prompt = question->prompt;
                row.chosen_option = option(a.chosen_index);
                row.correct_option = option(question->correct_index);
                row.was_correct = a.chosen_index == question->correct_index;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------

json to_json(const LevelAttempt& attempt) {
    json answers = json::array();
    for (const auto& a : attempt.answers) {
        answers.push_back({{"question_id", a.question_id}, {"chosen_index", a.chosen_index}});
    }
    return {{"level_number", attempt.level_number},
            {"answers", std::move(answers)},
            {"score", attempt.score},
            {"passed", attempt.passed},
            {"timestamp_ms", attempt.timestamp_ms}};
}

json to_json(const ProfileReport& report) {
    json responses = json::array();
    for (const auto& r : report.responses) {
        responses.push_back({{"item_id", r.item_id}, {"rating", r.rating}});
    }
    return {{"area_scores", report.area_scores}, {"responses", std::move(responses)}};
}

json to_json(const PlayerProgress& progress) {
    json attempts = json::object();
    for (const auto& [number, list] : progress.attempts) {
        json arr = json::array();
        for (const auto& a : list) arr.push_back(to_json(a));
        attempts[std::to_string(number)] = std::move(arr);
    }
    json j = {{"player_id", progress.player_id}, {"attempts", std::move(attempts)}};
    j["profile"] = progress.profile ? to_json(*progress.profile) : json(nullptr);
    return j;
}

PlayerProgress progress_from_json(const json& j) {
    PlayerProgress p;
    p.player_id = j.at("player_id").get<std::string>();
    for (const auto& [key, list] : j.at("attempts").items()) {
        const int number = std::stoi(key);
        auto& out = p.attempts[number];
        for (const auto& ja : list) {
            LevelAttempt a;
            a.level_number = ja.at("level_number").get<int>();
            for (const auto& ans : ja.at("answers")) {
                a.answers.push_back(
                    {ans.at("question_id").get<std::string>(), ans.at("chosen_index").get<int>()});
            }
            a.score = ja.at("score").get<int>();
            a.passed = ja.at("passed").get<bool>();
            a.timestamp_ms = ja.at("timestamp_ms").get<std::int64_t>();
            out.push_back(std::move(a));
        }
    }
    if (auto it = j.find("profile"); it != j.end() && !it->is_null()) {
        ProfileReport report;
        report.area_scores = it->at("area_scores").get<std::map<std::string, double>>();
        for (const auto& r : it->at("responses")) {
            report.responses.push_back(
                {r.at("item_id").get<std::string>(), r.at("rating").get<int>()});
        }
        p.profile = std::move(report);
    }
    return p;
}

}  // namespace entrex::progression
