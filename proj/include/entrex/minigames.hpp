#pragma once

// Scored practice rounds used inside levels: classification (SWOT, sectors,
// product categories, ...) and ordering (communication cycle, P&L cascade).
// Results are formative only and never feed the learning score.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "entrex/content_pack.hpp"

namespace entrex::minigames {

struct ClassificationRound {
    std::string taxonomy_name;
    std::vector<std::string> presented_items;
    std::uint64_t seed = 0;
    friend bool operator==(const ClassificationRound&, const ClassificationRound&) = default;
};

struct RoundScore {
    std::size_t correct = 0;
    std::size_t total = 0;
    double fraction = 0.0;
};

/// Durstenfeld/Fisher-Yates shuffle driven by SplitMix64(seed): for i from
/// n-1 down to 1, swap element i with element j = below(i + 1).
void seeded_shuffle(std::span<std::string> items, std::uint64_t seed);

/// Throws EmptyTaxonomy when the taxonomy has no items.
ClassificationRound new_classification_round(const pack::Taxonomy& taxonomy, std::uint64_t seed);

/// Throws MissingPlacement (presented item without a placement, or a
/// placement for an item not in the round) and UnknownCategory.
RoundScore score_classification(const ClassificationRound& round, const pack::Taxonomy& taxonomy,
                                const std::map<std::string, std::string>& placements);

/// Positional matches; throws NotAPermutation.
RoundScore score_ordering(std::span<const std::string> expected,
                          std::span<const std::string> given);

}  // namespace entrex::minigames
