// entrexplorer: validate content packs, run headless market simulations and
// host the game service.

#include <cmath>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entrex/api.hpp"
#include "entrex/content_pack.hpp"
#include "entrex/market_sim.hpp"
#include "entrex/platform.hpp"

namespace {

using namespace entrex;

int run_validate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "ERROR " << path << ": cannot open file\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        const auto pack = pack::load_pack(buf.str());
        for (const auto& d : pack::validate_pack(pack).diagnostics) {
            std::cout << pack::to_string(d.severity) << ' ' << d.path << ": " << d.message << '\n';
        }
        return 0;
    } catch (const pack::ParseError& e) {
        std::cout << "ERROR line " << e.line() << ":" << e.column() << ": " << e.what() << '\n';
    } catch (const pack::ValidationError& e) {
        for (const auto& d : e.report().diagnostics) {
            std::cout << pack::to_string(d.severity) << ' ' << d.path << ": " << d.message << '\n';
        }
    }
    return 1;
}

struct SweepRange {
    std::vector<double> points;
};

SweepRange parse_sweep(const std::string& text) {
    double from = 0, to = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> from >> c1 >> to >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0) ||
        from < 0 || to > 1 || from > to) {
        throw CLI::ValidationError("--sweep-learning", "expected FROM:TO:STEP within [0,1]");
    }
    SweepRange r;
    const auto count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
        r.points.push_back(std::min(1.0, from + static_cast<double>(i) * step));
    }
    return r;
}

market::VentureConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    return market::apply_overrides({}, nlohmann::json::parse(in));
}

std::shared_ptr<const pack::ContentPack> load_pack_or_default(const std::string& path) {
    if (path.empty()) return std::make_shared<pack::ContentPack>(pack::default_pack());
    return std::make_shared<pack::ContentPack>(pack::load_pack_file(path));
}

platform::HttpServer* g_server = nullptr;

void on_signal(int) {
    if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entrepreneurship serious game: content packs, market simulation, service"};
    app.require_subcommand(1);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Validate a content pack document");
    validate->add_option("pack-file", validate_path, "Pack JSON file")->required();

    std::string sim_pack, sim_policy = "reasonable", sim_sweep, sim_config;
    double sim_learning = -1;
    std::uint64_t sim_seed = 0;
    int sim_turns = 0, sim_trials = 1000;
    auto* simulate = app.add_subcommand("simulate", "Run the virtual market headless");
    simulate->add_option("--pack", sim_pack, "Content pack (default: built-in)");
    simulate->add_option("--learning-score", sim_learning, "Learning score in [0,1]")
        ->check(CLI::Range(0.0, 1.0));
    simulate->add_option("--seed", sim_seed, "RNG seed");
    simulate->add_option("--turns", sim_turns, "Turns to play (default: horizon)");
    simulate->add_option("--policy", sim_policy, "reasonable | steady | idle");
    simulate->add_option("--config", sim_config, "JSON file with venture config overrides");
    simulate->add_option("--sweep-learning", sim_sweep, "FROM:TO:STEP learning-score sweep");
    simulate->add_option("--trials", sim_trials, "Trials per sweep point")->check(CLI::PositiveNumber);

    std::string serve_pack, serve_dir = "state", serve_host = "0.0.0.0";
    int serve_port = 8080;
    std::uint64_t serve_seed = 0;
    auto* serve = app.add_subcommand("serve", "Host the HTTP/JSON game service");
    serve->add_option("--pack", serve_pack, "Content pack (default: built-in)");
    serve->add_option("--port", serve_port, "TCP port")->check(CLI::Range(0, 65535));
    serve->add_option("--host", serve_host, "Bind address");
    serve->add_option("--state-dir", serve_dir, "Directory for persisted state");
    serve->add_option("--seed", serve_seed, "Base seed for market simulations");

    std::string export_out;
    auto* export_pack = app.add_subcommand("export-pack", "Write the built-in content pack");
    export_pack->add_option("--out", export_out, "Output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return run_validate(validate_path);

        if (*export_pack) {
            const std::string doc = pack::serialize_pack(pack::default_pack());
            if (export_out.empty()) {
                std::cout << doc;
            } else {
                std::ofstream(export_out, std::ios::binary) << doc;
            }
            return 0;
        }

        if (*simulate) {
            load_pack_or_default(sim_pack);
            const auto config = load_config(sim_config);
            const auto policy = market::policy_from_name(sim_policy);
            if (!policy) {
                std::cerr << "unknown policy \"" << sim_policy << "\"\n";
                return 2;
            }
            const int turns = sim_turns > 0 ? sim_turns : config.horizon;
            if (!sim_sweep.empty()) {
                const auto range = parse_sweep(sim_sweep);
                const auto points =
                    market::sweep_success(config, *policy, range.points, sim_trials, sim_seed, turns);
                std::printf("learning_score\tsuccess_rate\n");
                for (const auto& p : points) {
                    std::printf("%.6g\t%.6f\n", p.learning_score, p.success_rate);
                }
                return 0;
            }
            if (sim_learning < 0) {
                std::cerr << "--learning-score is required without --sweep-learning\n";
                return 2;
            }
            const auto start = market::initial_state(config, sim_learning, sim_seed);
            market::write_trace_tsv(std::cout, market::run_policy(start, *policy, turns, config));
            return 0;
        }

        if (*serve) {
            platform::ServiceOptions options;
            options.state_dir = serve_dir;
            options.seed = serve_seed;
            platform::Platform platform(load_pack_or_default(serve_pack), std::move(options));
            platform::Api api(platform);
            platform::HttpServer server(api);
            const int port = server.bind(serve_host, serve_port);
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "listening on " << serve_host << ":" << port << '\n';
            server.listen();
            g_server = nullptr;
            return 0;
        }
    } catch (const pack::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
