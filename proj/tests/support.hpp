#pragma once

// Shared test fixtures: scratch directories, a reference quiz answer sheet
// and the catalogue of invariant-breaking pack mutations used by the fuzz
// tests.

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "entrex/content_pack.hpp"
#include "entrex/progression.hpp"

namespace entrex::testing {

class TempDir {
public:
    explicit TempDir(const std::string& tag = "entrex") {
        static std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                (tag + "-" + std::to_string(rd()) + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

/// Answers for a level's quiz with exactly `correct` right answers (the
/// first `correct` questions), the rest wrong.
inline std::vector<progression::Answer> answers_with(const pack::Level& level, std::size_t correct) {
    std::vector<progression::Answer> out;
    for (std::size_t i = 0; i < level.quiz.size(); ++i) {
        const auto& q = level.quiz[i];
        const int wrong = q.correct_index == 0 ? 1 : 0;
        out.push_back({q.id, i < correct ? q.correct_index : wrong});
    }
    return out;
}

/// Applies one randomly chosen single-field mutation that breaks a pack
/// invariant.  Returns a short description.
inline std::string break_one_invariant(pack::ContentPack& p, std::mt19937_64& rng) {
    auto pick = [&](std::size_t n) {
        return static_cast<std::size_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    };
    auto& level = p.levels[pick(p.levels.size())];
    auto& question = level.quiz[pick(level.quiz.size())];
    switch (pick(20)) {
        case 0:
            p.levels.erase(p.levels.begin() + static_cast<std::ptrdiff_t>(pick(p.levels.size())));
            return "delete a level";
        case 1:
            p.levels.push_back(p.levels.back());
            p.levels.back().number = 9;
            p.levels.back().title = "Extra";
            return "add a ninth level";
        case 2:
            level.number += 1 + static_cast<int>(pick(5));
            return "renumber a level";
        case 3: {
            const auto& other = p.levels[(static_cast<std::size_t>(&level - p.levels.data()) + 1) %
                                         p.levels.size()];
            level.title = other.title;
            return "duplicate level title";
        }
        case 4:
            level.quiz.clear();
            return "empty a quiz";
        case 5:
            question.correct_index = static_cast<int>(question.options.size() + pick(3));
            return "correct_index past the end";
        case 6:
            question.correct_index = -1 - static_cast<int>(pick(3));
            return "negative correct_index";
        case 7:
            question.options.resize(pick(2));
            question.correct_index = 0;
            return "fewer than two options";
        case 8:
            question.prompt = "   ";
            return "blank prompt";
        case 9: {
            const auto& other = p.levels[(static_cast<std::size_t>(&level - p.levels.data()) + 1) %
                                         p.levels.size()];
            question.id = other.quiz.front().id;
            return "duplicate question id";
        }
        case 10: {
            auto& f = p.floors[pick(p.floors.size())];
            const auto& other = p.floors[(static_cast<std::size_t>(&f - p.floors.data()) + 1) %
                                         p.floors.size()];
            f.kind = other.kind;
            return "duplicate floor kind";
        }
        case 11:
            p.floors.erase(p.floors.begin() + static_cast<std::ptrdiff_t>(pick(p.floors.size())));
            return "delete a floor";
        case 12:
            p.floors[pick(p.floors.size())].title = "";
            return "blank floor title";
        case 13: {
            auto it = std::next(p.taxonomies.begin(),
                                static_cast<std::ptrdiff_t>(pick(p.taxonomies.size())));
            auto& cats = it->second.categories;
            cats.push_back(cats.front());
            return "duplicate taxonomy category";
        }
        case 14: {
            for (auto& [_, t] : p.taxonomies) {
                if (!t.items.empty()) {
                    t.items[pick(t.items.size())].category = "No such category";
                    return "item with unknown category";
                }
            }
            return "unreachable";
        }
        case 15: {
            for (auto& l : p.levels) {
                if (!l.exercises.empty()) {
                    l.exercises[pick(l.exercises.size())].taxonomy = "missing_taxonomy";
                    return "exercise references missing taxonomy";
                }
            }
            return "unreachable";
        }
        case 16:
            p.profile.areas.erase(p.profile.areas.begin() +
                                  static_cast<std::ptrdiff_t>(pick(p.profile.areas.size())));
            return "drop a profile area";
        case 17:
            p.profile.items[pick(p.profile.items.size())].area = "luck";
            return "profile item in unknown area";
        case 18:
            question.options[pick(question.options.size())] = "";
            return "blank option";
        default: {
            auto it = std::next(p.taxonomies.begin(),
                                static_cast<std::ptrdiff_t>(pick(p.taxonomies.size())));
            if (it->second.items.size() >= 2) {
                it->second.items[1].label = it->second.items[0].label;
                return "duplicate item label";
            }
            it->second.categories.clear();
            return "taxonomy without categories";
        }
    }
}

}  // namespace entrex::testing
