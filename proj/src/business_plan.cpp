#include "entrex/business_plan.hpp"

#include <algorithm>
#include <cctype>

#include "entrex/error.hpp"

namespace entrex::plan {

BusinessPlan::BusinessPlan(std::string player_id, const std::vector<std::string>& section_keys,
                           std::int64_t created_ms)
    : player_id_(std::move(player_id)), last_modified_ms_(created_ms) {
    sections_.reserve(section_keys.size());
    for (const auto& key : section_keys) sections_.push_back({key, {}});
}

const std::string* BusinessPlan::body(std::string_view key) const noexcept {
    for (const auto& s : sections_) {
        if (s.key == key) return &s.body;
    }
    return nullptr;
}

void BusinessPlan::upsert_section(std::string_view key, std::string body, std::int64_t now_ms) {
    auto it = std::find_if(sections_.begin(), sections_.end(),
                           [&](const Section& s) { return s.key == key; });
    if (it == sections_.end()) {
        throw Error(ErrorCode::UnknownSection, "unknown plan section \"" + std::string(key) + "\"");
    }
    it->body = std::move(body);
    last_modified_ms_ = std::max(now_ms, last_modified_ms_ + 1);
}

Completeness completeness_report(const BusinessPlan& plan) {
    Completeness c;
    for (const auto& s : plan.sections()) {
        const bool blank = std::all_of(s.body.begin(), s.body.end(),
                                       [](unsigned char ch) { return std::isspace(ch); });
        if (blank) {
            c.missing.push_back(s.key);
        } else {
            ++c.filled;
        }
    }
    return c;
}

std::string export_plan(const BusinessPlan& plan) {
    std::string out = "# Business Plan: " + plan.player_id() + "\n";
    for (const auto& s : plan.sections()) {
        out += "\n## " + s.key + "\n";
        out += s.body;
        out += "\n";
    }
    return out;
}

nlohmann::json to_json(const BusinessPlan& plan) {
    nlohmann::json sections = nlohmann::json::array();
    for (const auto& s : plan.sections()) sections.push_back({{"key", s.key}, {"body", s.body}});
    return {{"player_id", plan.player_id()},
            {"sections", std::move(sections)},
            {"last_modified_ms", plan.last_modified_ms()}};
}

BusinessPlan plan_from_json(const nlohmann::json& j) {
    BusinessPlan plan;
    plan.player_id_ = j.at("player_id").get<std::string>();
    for (const auto& s : j.at("sections")) {
        plan.sections_.push_back({s.at("key").get<std::string>(), s.at("body").get<std::string>()});
    }
    plan.last_modified_ms_ = j.at("last_modified_ms").get<std::int64_t>();
    return plan;
}

}  // namespace entrex::plan
