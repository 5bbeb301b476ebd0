#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace entrex::plan {

struct Section {
    std::string key;
    std::string body;
    friend bool operator==(const Section&, const Section&) = default;
};

/// The Business Plan floor document.  One section per level title, kept in
/// level order; the key set is fixed at creation.
class BusinessPlan {
public:
    BusinessPlan() = default;
    BusinessPlan(std::string player_id, const std::vector<std::string>& section_keys,
                 std::int64_t created_ms = 0);

    const std::string& player_id() const noexcept { return player_id_; }
    const std::vector<Section>& sections() const noexcept { return sections_; }
    std::int64_t last_modified_ms() const noexcept { return last_modified_ms_; }

    /// nullptr for an unknown key.
    const std::string* body(std::string_view key) const noexcept;

    /// Replaces one section.  last_modified moves to max(now, previous + 1).
    /// Throws UnknownSection.
    void upsert_section(std::string_view key, std::string body, std::int64_t now_ms);

    /// Content equality, ignoring last_modified.
    bool same_content(const BusinessPlan& other) const noexcept {
        return player_id_ == other.player_id_ && sections_ == other.sections_;
    }

    friend bool operator==(const BusinessPlan&, const BusinessPlan&) = default;

private:
    std::string player_id_;
    std::vector<Section> sections_;
    std::int64_t last_modified_ms_ = 0;

    friend BusinessPlan plan_from_json(const nlohmann::json& j);
};

struct Completeness {
    std::size_t filled = 0;
    std::vector<std::string> missing;
};

/// Sections with a non-blank body count as filled; missing keeps level order.
Completeness completeness_report(const BusinessPlan& plan);

/// Plain-text export:
///   # Business Plan: <player_id>
///   <blank line>
///   ## <key>
///   <body>
///   <blank line> ... for every section in level order.
std::string export_plan(const BusinessPlan& plan);

nlohmann::json to_json(const BusinessPlan& plan);
BusinessPlan plan_from_json(const nlohmann::json& j);

}  // namespace entrex::plan
