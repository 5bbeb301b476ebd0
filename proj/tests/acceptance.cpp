// Acceptance suite: one PASS/FAIL line per criterion.  Exit status is the
// number of failures.

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "entrex/content_pack.hpp"
#include "entrex/error.hpp"
#include "entrex/market_sim.hpp"
#include "entrex/platform.hpp"
#include "entrex/progression.hpp"
#include "support.hpp"

#ifndef ENTREXPLORER_PATH
#error "ENTREXPLORER_PATH must point at the CLI binary"
#endif

using namespace entrex;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Verdict()>& check,
            double time_limit_s = 0) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = check();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit_s > 0 && secs > time_limit_s) {
        v.ok = false;
        v.detail += " (over the " + std::to_string(time_limit_s) + " s limit)";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", secs);
    std::cout << (v.ok ? "PASS " : "FAIL ") << name << " [" << timing << "] " << v.detail
              << std::endl;
    if (!v.ok) ++failures;
}

std::string run_command(const std::string& cmd, int& status) {
    std::string out;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) throw std::runtime_error("cannot run " + cmd);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    status = ::pclose(pipe);
    return out;
}

// ---------------------------------------------------------------------------

Verdict structural_fidelity() {
    const auto& p = pack::default_pack();
    std::vector<std::string> problems;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) problems.push_back(what);
    };
    expect(pack::validate_pack(p).ok, "default pack does not validate");
    expect(p.levels.size() == 8, "level count");
    std::set<pack::FloorKind> kinds;
    for (const auto& f : p.floors) kinds.insert(f.kind);
    expect(p.floors.size() == 6 && kinds.size() == 6, "six distinct floors");

    auto exercise_taxonomy = [&](int level, pack::ExerciseKind kind,
                                 const std::string& name) -> const pack::Taxonomy* {
        for (const auto& e : p.level(level)->exercises) {
            if (e.kind == kind && e.taxonomy == name) return p.taxonomy(name);
        }
        return nullptr;
    };
    const auto* pricing = exercise_taxonomy(4, pack::ExerciseKind::Classification, "pricing");
    expect(pricing && pricing->categories.size() == 9, "nine pricing strategies");
    const auto* distribution =
        exercise_taxonomy(5, pack::ExerciseKind::Classification, "distribution_strategies");
    expect(distribution && distribution->categories.size() == 3, "three distribution strategies");
    const auto* swot = exercise_taxonomy(7, pack::ExerciseKind::Classification, "swot");
    expect(swot && swot->categories.size() == 4, "four SWOT categories");
    const auto* cycle = exercise_taxonomy(6, pack::ExerciseKind::Ordering, "communication_cycle");
    expect(cycle && cycle->categories.size() == 5, "five communication stages");
    std::set<std::string> areas(p.profile.areas.begin(), p.profile.areas.end());
    expect(areas.size() == 6, "six profile areas");
    for (const auto& area : p.profile.areas) {
        expect(std::any_of(p.profile.items.begin(), p.profile.items.end(),
                           [&](const auto& i) { return i.area == area; }),
               "items for " + area);
    }

    if (!problems.empty()) {
        std::string all;
        for (const auto& s : problems) all += s + "; ";
        return {false, all};
    }
    return {true, "8 levels, 6 floors, 9 pricing, 3 distribution, 4 SWOT, 5 stages, 6 areas"};
}

Verdict accounting_identity() {
    std::mt19937_64 rng(0x1de7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int turns_checked = 0;
    double worst = 0;
    for (int i = 0; i < 10'000; ++i) {
        market::VentureConfig c;
        c.base_population = 1'000 + 50'000 * u(rng);
        c.reference_price = 1 + 50 * u(rng);
        c.unit_cost = c.reference_price * (0.1 + 0.9 * u(rng));
        c.fixed_costs = 20'000 * u(rng);
        c.initial_cash = 200'000 * u(rng);
        c.initial_equipment = 100'000 * u(rng);
        c.initial_debt = 100'000 * u(rng);
        c.interest_rate = 0.05 * u(rng);
        c.tax_rate = 0.5 * u(rng);
        c.horizon = 1 + static_cast<int>(rng() % 24);
        c.noise_sigma = 0.5 * u(rng);
        auto state = market::initial_state(c, u(rng), rng());
        while (state.turn < c.horizon && !state.bankrupt) {
            market::Decision d;
            d.price = c.reference_price * (0.3 + 2 * u(rng));
            d.production = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * c.base_population));
            d.communication_spend = 3 * c.awareness_scale * u(rng);
            d.distribution = static_cast<market::Distribution>(rng() % 3);
            d.pricing_strategy = market::all_pricing_strategies()[rng() % 9];
            const auto [next, r] = market::step_turn(state, d, c);
            const auto& p = r.pnl;
            const bool chain = p.gross_margin == p.sales - p.cogs &&
                               p.ebitda == p.gross_margin - p.sga &&
                               p.ebit == p.ebitda - p.depreciation &&
                               p.income_before_taxes == p.ebit - p.interest &&
                               p.net_income == p.income_before_taxes - p.taxes;
            if (!chain) return {false, "P&L chain broken in case " + std::to_string(i)};
            if (!market::identity_holds(next, c)) {
                return {false, "identity broken in case " + std::to_string(i)};
            }
            const auto& b = r.balance;
            worst = std::max(worst, std::abs(b.total_assets - b.liabilities_and_equity) /
                                        std::max({1.0, std::abs(b.total_assets),
                                                  std::abs(b.liabilities_and_equity)}));
            state = next;
            ++turns_checked;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "10000 cases, %d turns, worst relative gap %.2e",
                  turns_checked, worst);
    return {true, buf};
}

Verdict preparedness_monotonicity() {
    const market::VentureConfig c;
    using market::Distribution;
    using market::PricingStrategy;
    // production always covers demand at L = 1, so sales are never capped
    const std::vector<market::Decision> script = {
        {10.0, 12'000, 5'000, Distribution::Intensive, PricingStrategy::Competitive},
        {10.0, 6'400, 5'000, Distribution::Intensive, PricingStrategy::Competitive},
        {10.0, 6'400, 5'000, Distribution::Intensive, PricingStrategy::Psychological},
        {13.0, 3'000, 6'000, Distribution::Selective, PricingStrategy::Premium},
        {10.0, 6'400, 5'000, Distribution::Intensive, PricingStrategy::Competitive},
        {8.0, 9'000, 4'000, Distribution::Intensive, PricingStrategy::Penetration},
        {10.0, 6'400, 5'000, Distribution::Intensive, PricingStrategy::Bundle},
        {10.0, 6'000, 2'500, Distribution::Intensive, PricingStrategy::Competitive},
        {11.0, 5'500, 7'000, Distribution::Intensive, PricingStrategy::ProductLine},
        {10.0, 6'400, 5'000, Distribution::Intensive, PricingStrategy::Competitive},
        {9.0, 6'400, 5'000, Distribution::Selective, PricingStrategy::CostBased},
        {10.0, 6'400, 5'000, Distribution::Intensive, PricingStrategy::Competitive},
    };
    int violations = 0, comparisons = 0, capped = 0, short_runs = 0;
    const std::uint64_t seeds[] = {1, 2, 3, 42, 2024};
    for (auto seed : seeds) {
        std::vector<market::SimulationOutcome> runs;
        for (int k = 0; k <= 10; ++k) {
            runs.push_back(market::run_horizon(market::initial_state(c, k / 10.0, seed), script, c));
        }
        for (const auto& run : runs) {
            if (run.turns.size() < script.size()) ++short_runs;
            for (const auto& r : run.turns) capped += r.units_sold < std::llround(r.demand_units);
        }
        for (std::size_t t = 0; t < script.size(); ++t) {
            for (int k = 1; k <= 10; ++k) {
                const auto& lo = runs[static_cast<std::size_t>(k - 1)].turns;
                const auto& hi = runs[static_cast<std::size_t>(k)].turns;
                // a run that stopped early sells nothing afterwards
                const std::int64_t sold_lo = t < lo.size() ? lo[t].units_sold : 0;
                const std::int64_t sold_hi = t < hi.size() ? hi[t].units_sold : 0;
                ++comparisons;
                if (sold_hi < sold_lo) ++violations;
                if (t < lo.size() && t < hi.size() && script[t].price >= c.unit_cost &&
                    hi[t].pnl.net_income < lo[t].pnl.net_income) {
                    ++violations;
                }
            }
        }
    }
    return {violations == 0, std::to_string(comparisons) + " comparisons, " +
                                 std::to_string(violations) + " violations (" +
                                 std::to_string(capped) + " stock-capped turns, " +
                                 std::to_string(short_runs) + " runs ended early)"};
}

Verdict success_coupling() {
    int status = 0;
    const std::string out = run_command(
        std::string(ENTREXPLORER_PATH) + " simulate --sweep-learning 0:1:0.1 --trials 1000", status);
    if (status != 0) return {false, "CLI exited with status " + std::to_string(status)};
    std::istringstream in(out);
    std::string header;
    std::getline(in, header);
    std::vector<std::pair<double, double>> curve;
    double l = 0, rate = 0;
    while (in >> l >> rate) curve.emplace_back(l, rate);
    if (curve.size() != 11) return {false, "expected 11 sweep points, got " + std::to_string(curve.size())};
    std::ostringstream detail;
    bool ok = true;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        detail << curve[i].second << (i + 1 < curve.size() ? " " : "");
        if (i > 0 && curve[i].second < curve[i - 1].second - 0.03) ok = false;
    }
    const double gap = curve.back().second - curve.front().second;
    if (gap < 0.2) ok = false;
    detail << "; gap " << gap;
    return {ok, detail.str()};
}

Verdict leaderboard_oracle() {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 1'000; ++trial) {
        platform::Leaderboard board;
        std::map<std::string, platform::LeaderEntry> best;
        for (int i = 0; i < 100; ++i) {
            platform::LeaderEntry e{"p" + std::to_string(rng() % 40),
                                    static_cast<std::int64_t>(rng() % 60) - 10,
                                    static_cast<std::int64_t>(rng() % 80)};
            market::SimulationOutcome o;
            o.success = true;
            o.score = e.score;
            board.record_result(e.player_id, o, e.achieved_at_ms);
            auto it = best.find(e.player_id);
            if (it == best.end() || e.score > it->second.score) best[e.player_id] = e;
        }
        std::vector<platform::LeaderEntry> expected;
        for (const auto& [_, e] : best) expected.push_back(e);
        std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
            return std::tie(b.score, a.achieved_at_ms, a.player_id) <
                   std::tie(a.score, b.achieved_at_ms, b.player_id);
        });
        if (expected.size() > 15) expected.resize(15);
        if (board.top_list() != expected) {
            return {false, "mismatch in trial " + std::to_string(trial)};
        }
    }
    return {true, "1000 trials x 100 results"};
}

Verdict gating_and_scoring() {
    const auto& p = pack::default_pack();
    std::mt19937_64 rng(8);
    int attempts = 0, rejected = 0;
    for (int trial = 0; trial < 500; ++trial) {
        progression::PlayerProgress progress;
        for (int step = 0; step < 40; ++step) {
            const int level = 1 + static_cast<int>(rng() % 8);
            const auto& lv = *p.level(level);
            const auto correct = static_cast<std::size_t>(rng() % (lv.quiz.size() + 1));
            try {
                progress = progression::submit_assessment(
                               progress, p, level, testing::answers_with(lv, correct), step)
                               .progress;
                ++attempts;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::LevelLocked) throw;
                ++rejected;
            }
            for (int k = 1; k < 8; ++k) {
                const auto it = progress.attempts.find(k);
                const bool passed_k =
                    it != progress.attempts.end() &&
                    std::any_of(it->second.begin(), it->second.end(),
                                [](const auto& a) { return a.passed; });
                if (progression::is_level_unlocked(progress, k + 1) && !passed_k) {
                    return {false, "level " + std::to_string(k + 1) + " open without a pass"};
                }
                if (progress.attempts.contains(k + 1) && !passed_k) {
                    return {false, "attempt recorded on a locked level"};
                }
            }
        }
        // recompute every stored score from the history rows
        const auto rows = progression::answer_history(progress, p);
        std::vector<const progression::LevelAttempt*> ordered;
        for (const auto& [_, list] : progress.attempts) {
            for (const auto& a : list) ordered.push_back(&a);
        }
        std::stable_sort(ordered.begin(), ordered.end(),
                         [](auto* a, auto* b) { return a->timestamp_ms < b->timestamp_ms; });
        std::size_t cursor = 0;
        for (const auto* a : ordered) {
            std::size_t right = 0;
            for (std::size_t i = 0; i < a->answers.size(); ++i) right += rows.at(cursor++).was_correct;
            if (progression::score_percentage(right, a->answers.size()) != a->score) {
                return {false, "history score mismatch"};
            }
        }
    }
    return {true, std::to_string(attempts) + " attempts, " + std::to_string(rejected) +
                      " locked submissions rejected"};
}

Verdict determinism_and_durability() {
    // byte-identical traces from separate processes
    for (const char* policy : {"reasonable", "steady"}) {
        const std::string cmd = std::string(ENTREXPLORER_PATH) +
                                " simulate --learning-score 0.6 --seed 987654321 --policy " + policy;
        int s1 = 0, s2 = 0;
        const auto a = run_command(cmd, s1);
        const auto b = run_command(cmd, s2);
        if (s1 != 0 || s2 != 0 || a.empty()) return {false, "simulate failed"};
        if (a != b) return {false, std::string("traces differ for ") + policy};
    }

    // crash injected between temp write and rename
    testing::TempDir dir("entrex-durability");
    std::mt19937_64 rng(3);
    platform::StorageOptions opts;
    opts.fsync = false;
    bool crash = false;
    opts.after_temp_write = [&](const fs::path&) {
        if (crash) throw Error(ErrorCode::StorageError, "injected crash");
    };
    platform::PlayerStore store(dir.path(), opts);
    platform::PlayerRecord committed;
    committed.player_id = "p42";
    committed.display_name = "Durable";
    committed.token = "tok";
    committed.plan = plan::BusinessPlan("p42", pack::default_pack().level_titles(), 0);
    store.persist_player_state(committed);
    const auto titles = pack::default_pack().level_titles();
    int injected = 0;
    for (int i = 0; i < 300; ++i) {
        auto next = committed;
        next.plan.upsert_section(titles[rng() % 8], std::string(rng() % 5000, 'a' + i % 26), i + 1);
        crash = rng() % 2 == 0;
        try {
            store.persist_player_state(next);
            committed = next;
        } catch (const Error&) {
            ++injected;
        }
        if (!platform::same_record(store.load("p42"), committed)) {
            return {false, "record differs from last committed version at step " + std::to_string(i)};
        }
    }

    // hard kills of a writer process at random moments
    int kills = 0;
    for (int round = 0; round < 20; ++round) {
        const pid_t pid = ::fork();
        if (pid == 0) {
            platform::PlayerStore child_store(dir.path(), {});
            auto rec = committed;
            for (int i = 0;; ++i) {
                rec.plan.upsert_section(titles[static_cast<std::size_t>(i) % 8],
                                        std::string(static_cast<std::size_t>(i % 7000), 'x'), i);
                child_store.persist_player_state(rec);
            }
        }
        ::usleep(static_cast<useconds_t>(2'000 + rng() % 20'000));
        ::kill(pid, SIGKILL);
        int st = 0;
        ::waitpid(pid, &st, 0);
        ++kills;
        const auto loaded = store.load("p42");
        if (loaded.player_id != "p42" || loaded.plan.sections().size() != 8) {
            return {false, "unreadable record after kill " + std::to_string(round)};
        }
        if (store.load_all().size() != 1) return {false, "temp files surfaced as records"};
    }
    return {true, "traces identical; " + std::to_string(injected) + " injected crashes, " +
                      std::to_string(kills) + " killed writers, no torn records"};
}

Verdict pack_fuzzing() {
    std::mt19937_64 rng(20241019);
    std::map<std::string, int> kinds;
    for (int i = 0; i < 1'000; ++i) {
        auto p = pack::default_pack();
        const auto what = testing::break_one_invariant(p, rng);
        ++kinds[what];
        const auto r = pack::validate_pack(p);
        if (r.ok || r.error_count() == 0) return {false, "no error for mutation: " + what};
        // the serialized form must be rejected as well
        try {
            pack::load_pack(pack::serialize_pack(p));
            return {false, "load_pack accepted mutation: " + what};
        } catch (const pack::ValidationError&) {
        }
    }
    return {true, "1000 mutations over " + std::to_string(kinds.size()) + " kinds, all rejected"};
}

}  // namespace

int main() {
    report("structural fidelity", structural_fidelity, 1.0);
    report("accounting identity (10000 randomized cases)", accounting_identity, 10.0);
    report("preparedness monotonicity", preparedness_monotonicity);
    report("success-probability coupling (CLI sweep)", success_coupling, 60.0);
    report("leaderboard oracle", leaderboard_oracle);
    report("gating and scoring properties", gating_and_scoring);
    report("determinism and durability", determinism_and_durability);
    report("pack fuzzing", pack_fuzzing);
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures;
}
