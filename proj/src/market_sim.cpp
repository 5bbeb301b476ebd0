#include "entrex/market_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "entrex/error.hpp"

namespace entrex::market {

using nlohmann::json;

namespace {

constexpr std::array kStrategies = {
    PricingStrategy::Penetration, PricingStrategy::Skimming,    PricingStrategy::Competitive,
    PricingStrategy::Bundle,      PricingStrategy::ProductLine, PricingStrategy::Premium,
    PricingStrategy::CostBased,   PricingStrategy::Psychological, PricingStrategy::Optional,
};

constexpr std::array kDistributions = {Distribution::Intensive, Distribution::Selective,
                                       Distribution::Exclusive};

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::string_view label(PricingStrategy s) noexcept {
    switch (s) {
        case PricingStrategy::Penetration: return "Penetration pricing";
        case PricingStrategy::Skimming: return "Skimming pricing";
        case PricingStrategy::Competitive: return "Competitive pricing";
        case PricingStrategy::Bundle: return "Bundle pricing";
        case PricingStrategy::ProductLine: return "Product line pricing";
        case PricingStrategy::Premium: return "Premium pricing";
        case PricingStrategy::CostBased: return "Cost based pricing";
        case PricingStrategy::Psychological: return "Psychological pricing";
        case PricingStrategy::Optional: return "Optional pricing";
    }
    return "";
}

std::optional<PricingStrategy> pricing_strategy_from_label(std::string_view text) noexcept {
    for (auto s : kStrategies) {
        if (label(s) == text) return s;
    }
    return std::nullopt;
}

std::span<const PricingStrategy> all_pricing_strategies() noexcept { return kStrategies; }

std::string_view label(Distribution d) noexcept {
    switch (d) {
        case Distribution::Intensive: return "Intensive";
        case Distribution::Selective: return "Selective";
        case Distribution::Exclusive: return "Exclusive";
    }
    return "";
}

std::optional<Distribution> distribution_from_label(std::string_view text) noexcept {
    for (auto d : kDistributions) {
        if (label(d) == text) return d;
    }
    return std::nullopt;
}

void VentureConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
    for (auto [name, v] : {std::pair{"base_population", base_population},
                           std::pair{"reference_price", reference_price},
                           std::pair{"unit_cost", unit_cost},
                           std::pair{"fixed_costs", fixed_costs},
                           std::pair{"initial_cash", initial_cash},
                           std::pair{"initial_equipment", initial_equipment},
                           std::pair{"initial_debt", initial_debt}}) {
        if (!finite_nonneg(v)) fail(std::string(name) + " must be a finite value >= 0");
    }
    if (!(std::isfinite(awareness_scale) && awareness_scale > 0)) fail("awareness_scale must be > 0");
    if (!(reference_price > 0)) fail("reference_price must be > 0");
    for (auto d : kDistributions) {
        if (!(std::isfinite(elasticity[d]) && elasticity[d] > 0)) fail("elasticities must be > 0");
        if (!(reach[d] > 0 && reach[d] <= 1)) fail("reach values must be in (0, 1]");
    }
    if (!(std::isfinite(consistency_bonus) && consistency_bonus > 0) ||
        !(std::isfinite(consistency_penalty) && consistency_penalty > 0)) {
        fail("consistency factors must be > 0");
    }
    if (!(std::isfinite(penetration_band) && penetration_band > 0) ||
        !(std::isfinite(premium_band) && premium_band > 0)) {
        fail("price bands must be > 0");
    }
    if (!(interest_rate >= 0 && interest_rate < 1)) fail("interest_rate must be in [0, 1)");
    if (!(tax_rate >= 0 && tax_rate < 1)) fail("tax_rate must be in [0, 1)");
    if (horizon < 1) fail("horizon must be >= 1");
    if (!finite_nonneg(noise_sigma)) fail("noise_sigma must be >= 0");
}

double preparedness_modifier(double learning_score) {
    if (!(learning_score >= 0.0 && learning_score <= 1.0)) {
        throw Error(ErrorCode::DomainError, "learning score must be in [0, 1]");
    }
    return 0.5 + 0.5 * learning_score;
}

double consistency_factor(PricingStrategy strategy, double price, const VentureConfig& config) {
    switch (strategy) {
        case PricingStrategy::Penetration:
            return price <= config.penetration_band * config.reference_price
                       ? config.consistency_bonus
                       : config.consistency_penalty;
        case PricingStrategy::Premium:
        case PricingStrategy::Skimming:
            return price >= config.premium_band * config.reference_price
                       ? config.consistency_bonus
                       : config.consistency_penalty;
        default: return 1.0;
    }
}

void validate_decision(const Decision& decision) {
    if (!(std::isfinite(decision.price) && decision.price > 0)) {
        throw Error(ErrorCode::InvalidDecision, "price must be > 0");
    }
    if (decision.production < 0) {
        throw Error(ErrorCode::InvalidDecision, "production must be >= 0");
    }
    if (!finite_nonneg(decision.communication_spend)) {
        throw Error(ErrorCode::InvalidDecision, "communication spend must be >= 0");
    }
}

double expected_demand(const Decision& decision, const VentureConfig& config,
                       double learning_score) {
    validate_decision(decision);
    const double awareness = -std::expm1(-decision.communication_spend / config.awareness_scale);
    const double elasticity_term =
        std::pow(config.reference_price / decision.price, config.elasticity[decision.distribution]);
    return config.base_population * config.reach[decision.distribution] * awareness *
           elasticity_term * preparedness_modifier(learning_score) *
           consistency_factor(decision.pricing_strategy, decision.price, config);
}

double demand(MarketState& state, const Decision& decision, const VentureConfig& config) {
    if (state.bankrupt) throw Error(ErrorCode::AlreadyBankrupt, "venture is bankrupt");
    const double base = expected_demand(decision, config, state.learning_score);
    const double noise = std::exp(config.noise_sigma * state.rng.standard_normal());
    return std::max(0.0, base * noise);
}

MarketState initial_state(const VentureConfig& config, double learning_score, std::uint64_t seed) {
    config.validate();
    preparedness_modifier(learning_score);  // domain check
    MarketState s;
    s.cash = config.initial_cash;
    s.equipment_gross = config.initial_equipment;
    s.debt = config.initial_debt;
    s.equity = config.initial_cash + config.initial_equipment - config.initial_debt;
    s.learning_score = learning_score;
    s.rng = SplitMix64(seed);
    return s;
}

BalanceSheet balance_sheet(const MarketState& state, const VentureConfig& config) noexcept {
    BalanceSheet b;
    b.cash = state.cash;
    b.inventory = static_cast<double>(state.inventory_units) * config.unit_cost;
    b.equipment_net = state.equipment_gross - state.accumulated_depreciation;
    b.total_assets = b.cash + b.inventory + b.equipment_net;
    b.debt = state.debt;
    b.equity = state.equity;
    b.liabilities_and_equity = b.debt + b.equity;
    return b;
}

bool identity_holds(const MarketState& state, const VentureConfig& config,
                    double relative_tolerance) noexcept {
    const BalanceSheet b = balance_sheet(state, config);
    const double scale =
        std::max({1.0, std::abs(b.total_assets), std::abs(b.liabilities_and_equity)});
    return std::abs(b.total_assets - b.liabilities_and_equity) <= relative_tolerance * scale;
}

std::pair<MarketState, TurnResult> step_turn(const MarketState& state, const Decision& decision,
                                             const VentureConfig& config) {
    if (state.bankrupt) throw Error(ErrorCode::AlreadyBankrupt, "venture is bankrupt");
    if (state.turn >= config.horizon) {
        throw Error(ErrorCode::SimulationOver, "all " + std::to_string(config.horizon) +
                                                   " turns have been played");
    }
    validate_decision(decision);

    MarketState next = state;
    TurnResult r;
    r.turn = state.turn + 1;
    r.decision = decision;
    r.demand_units = demand(next, decision, config);

    const std::int64_t available = state.inventory_units + decision.production;
    r.units_sold = std::min(static_cast<std::int64_t>(std::llround(r.demand_units)), available);

    ProfitAndLoss& p = r.pnl;
    p.sales = static_cast<double>(r.units_sold) * decision.price;
    p.cogs = static_cast<double>(r.units_sold) * config.unit_cost;
    p.gross_margin = p.sales - p.cogs;
    p.sga = config.fixed_costs + decision.communication_spend;
    p.ebitda = p.gross_margin - p.sga;
    p.depreciation = config.initial_equipment / config.horizon;
    p.ebit = p.ebitda - p.depreciation;
    p.interest = config.interest_rate * state.debt;
    p.income_before_taxes = p.ebit - p.interest;
    p.taxes = config.tax_rate * std::max(0.0, p.income_before_taxes);
    p.net_income = p.income_before_taxes - p.taxes;

    next.cash = state.cash + p.sales - static_cast<double>(decision.production) * config.unit_cost -
                config.fixed_costs - decision.communication_spend - p.interest - p.taxes;
    next.inventory_units = available - r.units_sold;
    next.accumulated_depreciation = state.accumulated_depreciation + p.depreciation;
    next.equity = state.equity + p.net_income;
    next.turn = state.turn + 1;
    next.bankrupt = next.cash < 0.0;

    r.balance = balance_sheet(next, config);
    return {std::move(next), std::move(r)};
}

SimulationOutcome make_outcome(const MarketState& initial, MarketState final_state,
                               std::vector<TurnResult> turns) {
    SimulationOutcome o;
    o.initial_state = initial;
    o.success = !final_state.bankrupt && final_state.equity > initial.equity;
    o.score = static_cast<std::int64_t>(std::llround(final_state.equity));
    o.final_state = std::move(final_state);
    o.turns = std::move(turns);
    return o;
}

SimulationOutcome run_horizon(const MarketState& initial, std::span<const Decision> decisions,
                              const VentureConfig& config) {
    if (decisions.empty()) throw Error(ErrorCode::InvalidDecision, "no decisions to play");
    MarketState state = initial;
    std::vector<TurnResult> turns;
    for (const auto& d : decisions) {
        auto [next, result] = step_turn(state, d, config);
        state = std::move(next);
        turns.push_back(std::move(result));
        if (state.bankrupt) break;
    }
    return make_outcome(initial, std::move(state), std::move(turns));
}

// ---------------------------------------------------------------------------

std::optional<Policy> policy_from_name(std::string_view text) noexcept {
    for (auto p : {Policy::Reasonable, Policy::Steady, Policy::Idle}) {
        if (name(p) == text) return p;
    }
    return std::nullopt;
}

std::string_view name(Policy policy) noexcept {
    switch (policy) {
        case Policy::Reasonable: return "reasonable";
        case Policy::Steady: return "steady";
        case Policy::Idle: return "idle";
    }
    return "";
}

Decision policy_decision(Policy policy, const MarketState& state, const VentureConfig& config) {
    Decision d;
    d.price = config.reference_price;
    d.distribution = Distribution::Intensive;
    d.pricing_strategy = PricingStrategy::Competitive;
    switch (policy) {
        case Policy::Idle:
            break;
        case Policy::Steady:
            d.communication_spend = config.awareness_scale;
            d.production = static_cast<std::int64_t>(config.base_population / 2);
            break;
        case Policy::Reasonable: {
            d.communication_spend = config.awareness_scale;
            const double forecast = expected_demand(d, config, state.learning_score);
            d.production = std::max<std::int64_t>(
                0, std::llround(forecast) - state.inventory_units);
            break;
        }
    }
    return d;
}

SimulationOutcome run_policy(const MarketState& initial, Policy policy, int turns,
                             const VentureConfig& config) {
    const int n = std::min(turns, config.horizon - initial.turn);
    if (n < 1) throw Error(ErrorCode::SimulationOver, "no turns left to play");
    MarketState state = initial;
    std::vector<TurnResult> results;
    for (int t = 0; t < n && !state.bankrupt; ++t) {
        auto [next, result] = step_turn(state, policy_decision(policy, state, config), config);
        state = std::move(next);
        results.push_back(std::move(result));
    }
    return make_outcome(initial, std::move(state), std::move(results));
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) noexcept {
    return mix_seed(base_seed + trial);
}

std::vector<SweepPoint> sweep_success(const VentureConfig& config, Policy policy,
                                      std::span<const double> learning_scores, int trials,
                                      std::uint64_t base_seed, int turns) {
    if (trials < 1) throw Error(ErrorCode::BadRequest, "trials must be >= 1");
    std::vector<SweepPoint> points;
    for (double l : learning_scores) {
        int wins = 0;
        for (int t = 0; t < trials; ++t) {
            const auto start = initial_state(config, l, trial_seed(base_seed, static_cast<std::uint64_t>(t)));
            if (run_policy(start, policy, turns, config).success) ++wins;
        }
        points.push_back({l, static_cast<double>(wins) / trials});
    }
    return points;
}

namespace {

std::string money(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

void write_trace_tsv(std::ostream& out, const SimulationOutcome& outcome) {
    out << "turn\tdemand\tunits_sold\tsales\tcogs\tgross_margin\tsga\tebitda\tdepreciation\tebit"
           "\tinterest\tincome_before_taxes\ttaxes\tnet_income\tcash\tinventory\tequipment_net"
           "\ttotal_assets\tdebt\tequity\n";
    for (const auto& r : outcome.turns) {
        const auto& p = r.pnl;
        const auto& b = r.balance;
        out << r.turn << '\t' << money(r.demand_units) << '\t' << r.units_sold;
        for (double v : {p.sales, p.cogs, p.gross_margin, p.sga, p.ebitda, p.depreciation, p.ebit,
                         p.interest, p.income_before_taxes, p.taxes, p.net_income, b.cash,
                         b.inventory, b.equipment_net, b.total_assets, b.debt, b.equity}) {
            out << '\t' << money(v);
        }
        out << '\n';
    }
    out << "outcome\tsuccess\tscore\tturns_played\tbankrupt\tfinal_equity\tinitial_equity\n";
    out << "outcome\t" << (outcome.success ? 1 : 0) << '\t' << outcome.score << '\t'
        << outcome.turns.size() << '\t' << (outcome.final_state.bankrupt ? 1 : 0) << '\t'
        << money(outcome.final_state.equity) << '\t' << money(outcome.initial_state.equity)
        << '\n';
}

// ---------------------------------------------------------------------------
// JSON

json to_json(const VentureConfig& c) {
    auto per = [](const PerDistribution<double>& v) {
        return json{{"Intensive", v.intensive}, {"Selective", v.selective}, {"Exclusive", v.exclusive}};
    };
    return {{"base_population", c.base_population},
            {"reference_price", c.reference_price},
            {"unit_cost", c.unit_cost},
            {"fixed_costs", c.fixed_costs},
            {"awareness_scale", c.awareness_scale},
            {"elasticity_by_distribution", per(c.elasticity)},
            {"reach_by_distribution", per(c.reach)},
            {"strategy_consistency_bonus", c.consistency_bonus},
            {"strategy_consistency_penalty", c.consistency_penalty},
            {"penetration_band", c.penetration_band},
            {"premium_band", c.premium_band},
            {"initial_cash", c.initial_cash},
            {"initial_equipment", c.initial_equipment},
            {"initial_debt", c.initial_debt},
            {"interest_rate", c.interest_rate},
            {"tax_rate", c.tax_rate},
            {"horizon", c.horizon},
            {"noise_sigma", c.noise_sigma}};
}

VentureConfig apply_overrides(VentureConfig c, const json& o) {
    if (o.is_null()) return c;
    if (!o.is_object()) throw Error(ErrorCode::BadRequest, "config overrides must be an object");
    auto number = [](const json& v, const std::string& key) {
        if (!v.is_number()) throw Error(ErrorCode::BadRequest, key + " must be a number");
        return v.get<double>();
    };
    auto per = [&](PerDistribution<double>& target, const json& v, const std::string& key) {
        if (!v.is_object()) throw Error(ErrorCode::BadRequest, key + " must be an object");
        for (const auto& [k, x] : v.items()) {
            if (k == "Intensive") target.intensive = number(x, key + "." + k);
            else if (k == "Selective") target.selective = number(x, key + "." + k);
            else if (k == "Exclusive") target.exclusive = number(x, key + "." + k);
            else throw Error(ErrorCode::BadRequest, "unknown distribution \"" + k + "\"");
        }
    };
    for (const auto& [key, v] : o.items()) {
        if (key == "base_population") c.base_population = number(v, key);
        else if (key == "reference_price") c.reference_price = number(v, key);
        else if (key == "unit_cost") c.unit_cost = number(v, key);
        else if (key == "fixed_costs") c.fixed_costs = number(v, key);
        else if (key == "awareness_scale") c.awareness_scale = number(v, key);
        else if (key == "elasticity_by_distribution") per(c.elasticity, v, key);
        else if (key == "reach_by_distribution") per(c.reach, v, key);
        else if (key == "strategy_consistency_bonus") c.consistency_bonus = number(v, key);
        else if (key == "strategy_consistency_penalty") c.consistency_penalty = number(v, key);
        else if (key == "penetration_band") c.penetration_band = number(v, key);
        else if (key == "premium_band") c.premium_band = number(v, key);
        else if (key == "initial_cash") c.initial_cash = number(v, key);
        else if (key == "initial_equipment") c.initial_equipment = number(v, key);
        else if (key == "initial_debt") c.initial_debt = number(v, key);
        else if (key == "interest_rate") c.interest_rate = number(v, key);
        else if (key == "tax_rate") c.tax_rate = number(v, key);
        else if (key == "noise_sigma") c.noise_sigma = number(v, key);
        else if (key == "horizon") {
            if (!v.is_number_integer()) throw Error(ErrorCode::BadRequest, "horizon must be an integer");
            const auto h = v.get<long long>();
            if (h < 1 || h > 1000) throw Error(ErrorCode::InvalidConfig, "horizon must be in 1..1000");
            c.horizon = static_cast<int>(h);
        } else {
            throw Error(ErrorCode::BadRequest, "unknown config key \"" + key + "\"");
        }
    }
    c.validate();
    return c;
}

json to_json(const Decision& d) {
    return {{"price", d.price},
            {"production", d.production},
            {"communication_spend", d.communication_spend},
            {"distribution", label(d.distribution)},
            {"pricing_strategy", label(d.pricing_strategy)}};
}

Decision decision_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidDecision, "decision must be an object");
    Decision d;
    try {
        d.price = j.at("price").get<double>();
        const auto& q = j.at("production");
        if (!q.is_number_integer()) {
            throw Error(ErrorCode::InvalidDecision, "production must be a whole number of units");
        }
        d.production = q.get<std::int64_t>();
        d.communication_spend = j.at("communication_spend").get<double>();
        const auto dist = j.at("distribution").get<std::string>();
        const auto strat = j.at("pricing_strategy").get<std::string>();
        auto parsed_dist = distribution_from_label(dist);
        if (!parsed_dist) throw Error(ErrorCode::InvalidDecision, "unknown distribution \"" + dist + "\"");
        auto parsed_strat = pricing_strategy_from_label(strat);
        if (!parsed_strat) {
            throw Error(ErrorCode::InvalidDecision, "unknown pricing strategy \"" + strat + "\"");
        }
        d.distribution = *parsed_dist;
        d.pricing_strategy = *parsed_strat;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidDecision, std::string("malformed decision: ") + e.what());
    }
    validate_decision(d);
    return d;
}

json to_json(const MarketState& s) {
    return {{"turn", s.turn},
            {"cash", s.cash},
            {"inventory_units", s.inventory_units},
            {"equipment_gross", s.equipment_gross},
            {"accumulated_depreciation", s.accumulated_depreciation},
            {"debt", s.debt},
            {"equity", s.equity},
            {"learning_score", s.learning_score},
            {"rng_state", s.rng.state()},
            {"bankrupt", s.bankrupt}};
}

MarketState state_from_json(const json& j) {
    MarketState s;
    s.turn = j.at("turn").get<int>();
    s.cash = j.at("cash").get<double>();
    s.inventory_units = j.at("inventory_units").get<std::int64_t>();
    s.equipment_gross = j.at("equipment_gross").get<double>();
    s.accumulated_depreciation = j.at("accumulated_depreciation").get<double>();
    s.debt = j.at("debt").get<double>();
    s.equity = j.at("equity").get<double>();
    s.learning_score = j.at("learning_score").get<double>();
    s.rng = SplitMix64(j.at("rng_state").get<std::uint64_t>());
    s.bankrupt = j.at("bankrupt").get<bool>();
    return s;
}

json to_json(const ProfitAndLoss& p) {
    return {{"sales", p.sales},
            {"cogs", p.cogs},
            {"gross_margin", p.gross_margin},
            {"sga", p.sga},
            {"ebitda", p.ebitda},
            {"depreciation", p.depreciation},
            {"ebit", p.ebit},
            {"interest", p.interest},
            {"income_before_taxes", p.income_before_taxes},
            {"taxes", p.taxes},
            {"net_income", p.net_income}};
}

json to_json(const BalanceSheet& b) {
    return {{"cash", b.cash},
            {"inventory", b.inventory},
            {"equipment_net", b.equipment_net},
            {"total_assets", b.total_assets},
            {"debt", b.debt},
            {"equity", b.equity},
            {"liabilities_and_equity", b.liabilities_and_equity}};
}

json to_json(const TurnResult& r) {
    return {{"turn", r.turn},
            {"decision", to_json(r.decision)},
            {"demand_units", r.demand_units},
            {"units_sold", r.units_sold},
            {"pnl", to_json(r.pnl)},
            {"balance", to_json(r.balance)}};
}

TurnResult turn_result_from_json(const json& j) {
    TurnResult r;
    r.turn = j.at("turn").get<int>();
    r.decision = decision_from_json(j.at("decision"));
    r.demand_units = j.at("demand_units").get<double>();
    r.units_sold = j.at("units_sold").get<std::int64_t>();
    const auto& p = j.at("pnl");
    r.pnl = {p.at("sales").get<double>(),        p.at("cogs").get<double>(),
             p.at("gross_margin").get<double>(), p.at("sga").get<double>(),
             p.at("ebitda").get<double>(),       p.at("depreciation").get<double>(),
             p.at("ebit").get<double>(),         p.at("interest").get<double>(),
             p.at("income_before_taxes").get<double>(), p.at("taxes").get<double>(),
             p.at("net_income").get<double>()};
    const auto& b = j.at("balance");
    r.balance = {b.at("cash").get<double>(),          b.at("inventory").get<double>(),
                 b.at("equipment_net").get<double>(), b.at("total_assets").get<double>(),
                 b.at("debt").get<double>(),          b.at("equity").get<double>(),
                 b.at("liabilities_and_equity").get<double>()};
    return r;
}

}  // namespace entrex::market
