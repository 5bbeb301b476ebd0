#include "entrex/minigames.hpp"

#include <algorithm>
#include <utility>

#include "entrex/rng.hpp"

namespace entrex::minigames {

void seeded_shuffle(std::span<std::string> items, std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

ClassificationRound new_classification_round(const pack::Taxonomy& taxonomy, std::uint64_t seed) {
    if (taxonomy.items.empty()) {
        throw Error(ErrorCode::EmptyTaxonomy, "taxonomy \"" + taxonomy.name + "\" has no items");
    }
    ClassificationRound round{taxonomy.name, {}, seed};
    round.presented_items.reserve(taxonomy.items.size());
    for (const auto& item : taxonomy.items) round.presented_items.push_back(item.label);
    seeded_shuffle(round.presented_items, seed);
    return round;
}

namespace {

RoundScore make_score(std::size_t correct, std::size_t total) {
    return {correct, total, total == 0 ? 0.0 : static_cast<double>(correct) / total};
}

}  // namespace

RoundScore score_classification(const ClassificationRound& round, const pack::Taxonomy& taxonomy,
                                const std::map<std::string, std::string>& placements) {
    std::size_t correct = 0;
    for (const auto& label : round.presented_items) {
        auto placed = placements.find(label);
        if (placed == placements.end()) {
            throw Error(ErrorCode::MissingPlacement, "no placement for \"" + label + "\"");
        }
        if (!taxonomy.has_category(placed->second)) {
            throw Error(ErrorCode::UnknownCategory, "unknown category \"" + placed->second + "\"");
        }
        const pack::TaxonomyItem* item = taxonomy.find_item(label);
        if (item != nullptr && item->category == placed->second) ++correct;
    }
    if (placements.size() != round.presented_items.size()) {
        for (const auto& [label, _] : placements) {
            if (std::find(round.presented_items.begin(), round.presented_items.end(), label) ==
                round.presented_items.end()) {
                throw Error(ErrorCode::MissingPlacement,
                            "\"" + label + "\" is not part of this round");
            }
        }
    }
    return make_score(correct, round.presented_items.size());
}

RoundScore score_ordering(std::span<const std::string> expected,
                          std::span<const std::string> given) {
    std::vector<std::string> a(expected.begin(), expected.end());
    std::vector<std::string> b(given.begin(), given.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (expected.empty() || a != b) {
        throw Error(ErrorCode::NotAPermutation, "given order is not a permutation of the stages");
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (expected[i] == given[i]) ++correct;
    }
    return make_score(correct, expected.size());
}

}  // namespace entrex::minigames
