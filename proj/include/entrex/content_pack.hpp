#pragma once

// Data-driven game definition: eight assessed levels, six feature floors,
// the classification/ordering taxonomies and the entrepreneur profile
// questionnaire.  Packs are immutable once loaded.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entrex/error.hpp"
#include "json.hpp"

namespace entrex::pack {

inline constexpr std::size_t kLevelCount = 8;
inline constexpr std::size_t kFloorCount = 6;
inline constexpr std::size_t kProfileAreaCount = 6;

struct ContentUnit {
    std::string heading;
    std::string text;
    friend bool operator==(const ContentUnit&, const ContentUnit&) = default;
};

struct QuizQuestion {
    std::string id;
    std::string prompt;
    std::vector<std::string> options;
    int correct_index = 0;
    friend bool operator==(const QuizQuestion&, const QuizQuestion&) = default;
};

enum class ExerciseKind { Classification, Ordering };

struct ExerciseRef {
    std::string id;
    ExerciseKind kind = ExerciseKind::Classification;
    std::string title;
    std::string taxonomy;
    friend bool operator==(const ExerciseRef&, const ExerciseRef&) = default;
};

struct Level {
    int number = 0;
    std::string title;
    std::vector<ContentUnit> content_units;
    std::vector<QuizQuestion> quiz;
    std::vector<ExerciseRef> exercises;
    friend bool operator==(const Level&, const Level&) = default;
};

enum class FloorKind { BusinessPlan, Recreation, LiftStation, VirtualMarket, Chat, TopList };

inline constexpr std::array kAllFloorKinds = {
    FloorKind::BusinessPlan, FloorKind::Recreation, FloorKind::LiftStation,
    FloorKind::VirtualMarket, FloorKind::Chat, FloorKind::TopList,
};

std::string_view to_string(FloorKind kind) noexcept;
std::optional<FloorKind> floor_kind_from_string(std::string_view name) noexcept;
std::string_view to_string(ExerciseKind kind) noexcept;
std::optional<ExerciseKind> exercise_kind_from_string(std::string_view name) noexcept;

struct StaticResource {
    std::string label;
    std::string uri;
    friend bool operator==(const StaticResource&, const StaticResource&) = default;
};

struct Floor {
    FloorKind kind = FloorKind::BusinessPlan;
    std::string title;
    std::vector<StaticResource> static_resources;
    friend bool operator==(const Floor&, const Floor&) = default;
};

struct TaxonomyItem {
    std::string label;
    std::string category;
    friend bool operator==(const TaxonomyItem&, const TaxonomyItem&) = default;
};

struct Taxonomy {
    std::string name;
    std::vector<std::string> categories;
    std::vector<TaxonomyItem> items;

    const TaxonomyItem* find_item(std::string_view label) const noexcept;
    bool has_category(std::string_view category) const noexcept;

    friend bool operator==(const Taxonomy&, const Taxonomy&) = default;
};

struct ProfileItem {
    std::string id;
    std::string area;
    std::string statement;
    friend bool operator==(const ProfileItem&, const ProfileItem&) = default;
};

/// Self-assessment questionnaire filled at the Lift Station; ratings 1..5.
struct ProfileQuestionnaire {
    std::vector<std::string> areas;
    std::vector<ProfileItem> items;
    friend bool operator==(const ProfileQuestionnaire&, const ProfileQuestionnaire&) = default;
};

struct ContentPack {
    std::string version;
    std::vector<Level> levels;
    std::vector<Floor> floors;
    std::map<std::string, Taxonomy> taxonomies;
    ProfileQuestionnaire profile;

    /// Level by 1-based number, or nullptr.
    const Level* level(int number) const noexcept;
    const Taxonomy* taxonomy(std::string_view name) const noexcept;
    const Floor* floor(FloorKind kind) const noexcept;
    /// Titles of the levels in level order (business plan section keys).
    std::vector<std::string> level_titles() const;

    friend bool operator==(const ContentPack&, const ContentPack&) = default;
};

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity) noexcept;

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string path;
    std::string message;
    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Diagnostic> diagnostics;

    std::size_t error_count() const noexcept;
};

/// Thrown for documents that are not well-formed JSON.  Line and column are
/// 1-based; both are 0 for an empty document.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(ErrorCode::ParseError, message), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Thrown by load_pack when the document parses but the pack is invalid.
class ValidationError : public Error {
public:
    explicit ValidationError(ValidationReport report);

    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// Checks every structural invariant.  Diagnostics come out in document
/// order; `ok` is false iff at least one has Error severity.
ValidationReport validate_pack(const ContentPack& pack);

/// Parses and validates a pack document.  Throws ParseError or
/// ValidationError; never returns a pack that fails validation.
ContentPack load_pack(std::string_view source);
ContentPack load_pack_file(const std::string& path);

nlohmann::json to_json(const ContentPack& pack);
/// Pack document as UTF-8 JSON text (two-space indented, trailing newline).
std::string serialize_pack(const ContentPack& pack);

/// Client view of the pack: identical to to_json but without any
/// `correct_index` fields.
nlohmann::json public_view(const ContentPack& pack);

/// Built-in pack covering the eight curriculum levels.
const ContentPack& default_pack();

}  // namespace entrex::pack
