#pragma once

// Virtual Market floor: a seeded, turn-based venture simulation.  Demand is
// scaled by the player's preparedness (learning score), and the books are
// closed every turn into a profit and loss statement and a balance sheet
// that must satisfy assets = liabilities + equity.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entrex/rng.hpp"
#include "json.hpp"

namespace entrex::market {

enum class Distribution { Intensive, Selective, Exclusive };

enum class PricingStrategy {
    Penetration,
    Skimming,
    Competitive,
    Bundle,
    ProductLine,
    Premium,
    CostBased,
    Psychological,
    Optional,
};

/// Labels match the categories of the pack's "pricing" taxonomy.
std::string_view label(PricingStrategy s) noexcept;
std::optional<PricingStrategy> pricing_strategy_from_label(std::string_view text) noexcept;
std::string_view label(Distribution d) noexcept;
std::optional<Distribution> distribution_from_label(std::string_view text) noexcept;
std::span<const PricingStrategy> all_pricing_strategies() noexcept;

template <typename T>
struct PerDistribution {
    T intensive{};
    T selective{};
    T exclusive{};

    constexpr const T& operator[](Distribution d) const noexcept {
        switch (d) {
            case Distribution::Intensive: return intensive;
            case Distribution::Selective: return selective;
            case Distribution::Exclusive: break;
        }
        return exclusive;
    }
    friend bool operator==(const PerDistribution&, const PerDistribution&) = default;
};

struct VentureConfig {
    double base_population = 10'000.0;  ///< units per turn
    double reference_price = 10.0;
    double unit_cost = 6.0;
    double fixed_costs = 8'000.0;      ///< per turn
    double awareness_scale = 5'000.0;  ///< m0
    PerDistribution<double> elasticity{1.8, 1.5, 1.0};
    PerDistribution<double> reach{1.0, 0.6, 0.25};
    double consistency_bonus = 1.05;
    double consistency_penalty = 0.95;
    double penetration_band = 0.8;  ///< penetration needs p <= band * reference
    double premium_band = 1.3;      ///< premium/skimming need p >= band * reference
    double initial_cash = 50'000.0;
    double initial_equipment = 24'000.0;
    double initial_debt = 20'000.0;
    double interest_rate = 0.01;  ///< per turn
    double tax_rate = 0.25;
    int horizon = 12;
    double noise_sigma = 0.15;

    /// Throws InvalidConfig on any broken invariant.
    void validate() const;

    friend bool operator==(const VentureConfig&, const VentureConfig&) = default;
};

struct Decision {
    double price = 10.0;
    std::int64_t production = 0;  ///< units
    double communication_spend = 0.0;
    Distribution distribution = Distribution::Intensive;
    PricingStrategy pricing_strategy = PricingStrategy::Competitive;
    friend bool operator==(const Decision&, const Decision&) = default;
};

struct MarketState {
    int turn = 0;
    double cash = 0.0;
    std::int64_t inventory_units = 0;  ///< valued at unit cost
    double equipment_gross = 0.0;
    double accumulated_depreciation = 0.0;
    double debt = 0.0;
    double equity = 0.0;
    double learning_score = 0.0;
    SplitMix64 rng;
    bool bankrupt = false;
    friend bool operator==(const MarketState&, const MarketState&) = default;
};

struct ProfitAndLoss {
    double sales = 0;
    double cogs = 0;
    double gross_margin = 0;
    double sga = 0;
    double ebitda = 0;
    double depreciation = 0;
    double ebit = 0;
    double interest = 0;
    double income_before_taxes = 0;
    double taxes = 0;
    double net_income = 0;
    friend bool operator==(const ProfitAndLoss&, const ProfitAndLoss&) = default;
};

struct BalanceSheet {
    double cash = 0;
    double inventory = 0;
    double equipment_net = 0;
    double total_assets = 0;
    double debt = 0;
    double equity = 0;
    double liabilities_and_equity = 0;
    friend bool operator==(const BalanceSheet&, const BalanceSheet&) = default;
};

struct TurnResult {
    int turn = 0;  ///< 1-based turn this result closes
    Decision decision;
    double demand_units = 0;
    std::int64_t units_sold = 0;
    ProfitAndLoss pnl;
    BalanceSheet balance;
    friend bool operator==(const TurnResult&, const TurnResult&) = default;
};

struct SimulationOutcome {
    MarketState initial_state;
    MarketState final_state;
    std::vector<TurnResult> turns;
    bool success = false;
    std::int64_t score = 0;  ///< final equity rounded to whole currency
};

/// 0.5 + 0.5 L; throws DomainError outside [0, 1].
double preparedness_modifier(double learning_score);

/// Bonus for penetration/premium/skimming prices inside their band, penalty
/// outside it; 1.0 for strategies without a price band.
double consistency_factor(PricingStrategy strategy, double price, const VentureConfig& config);

/// Demand with the noise factor fixed at 1.
double expected_demand(const Decision& decision, const VentureConfig& config,
                       double learning_score);

/// Draws lognormal(0, sigma) noise from the state's stream (always two draws,
/// also when sigma is 0) and returns the demand in units.  Throws
/// InvalidDecision, AlreadyBankrupt.
double demand(MarketState& state, const Decision& decision, const VentureConfig& config);

void validate_decision(const Decision& decision);

/// Opening balance: equity = cash + equipment - debt.
MarketState initial_state(const VentureConfig& config, double learning_score, std::uint64_t seed);

BalanceSheet balance_sheet(const MarketState& state, const VentureConfig& config) noexcept;

/// |assets - (liabilities + equity)| <= tolerance * max(1, |assets|, |L + E|).
bool identity_holds(const MarketState& state, const VentureConfig& config,
                    double relative_tolerance = 1e-9) noexcept;

/// Closes one turn.  Throws SimulationOver, AlreadyBankrupt, InvalidDecision.
std::pair<MarketState, TurnResult> step_turn(const MarketState& state, const Decision& decision,
                                             const VentureConfig& config);

/// Success: not bankrupt and final equity above the opening equity.
SimulationOutcome make_outcome(const MarketState& initial, MarketState final_state,
                               std::vector<TurnResult> turns);

/// Folds step_turn over the decisions, stopping early on bankruptcy.
SimulationOutcome run_horizon(const MarketState& initial, std::span<const Decision> decisions,
                              const VentureConfig& config);

// ---------------------------------------------------------------------------
// scripted players

enum class Policy {
    Reasonable,  ///< reference price, m = m0, produces to its expected demand
    Steady,      ///< fixed decision every turn, independent of state
    Idle,        ///< no production, no communication
};

std::optional<Policy> policy_from_name(std::string_view name) noexcept;
std::string_view name(Policy policy) noexcept;

Decision policy_decision(Policy policy, const MarketState& state, const VentureConfig& config);

/// Plays `turns` turns (capped at the horizon) with a scripted policy.
SimulationOutcome run_policy(const MarketState& initial, Policy policy, int turns,
                             const VentureConfig& config);

struct SweepPoint {
    double learning_score = 0;
    double success_rate = 0;
};

/// Seed for trial i of a sweep: mix_seed(base_seed + i).  The same seeds are
/// reused at every learning score.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) noexcept;

std::vector<SweepPoint> sweep_success(const VentureConfig& config, Policy policy,
                                      std::span<const double> learning_scores, int trials,
                                      std::uint64_t base_seed, int turns);

/// Tab-separated per-turn statement rows followed by an outcome row.
void write_trace_tsv(std::ostream& out, const SimulationOutcome& outcome);

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const VentureConfig& config);
/// Starts from `base` and applies every recognised key in `overrides`.
/// Throws BadRequest for unknown keys or wrong types, InvalidConfig when
/// the result is invalid.
VentureConfig apply_overrides(VentureConfig base, const nlohmann::json& overrides);
nlohmann::json to_json(const Decision& decision);
Decision decision_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MarketState& state);
MarketState state_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProfitAndLoss& pnl);
nlohmann::json to_json(const BalanceSheet& balance);
nlohmann::json to_json(const TurnResult& result);
TurnResult turn_result_from_json(const nlohmann::json& j);

}  // namespace entrex::market
