#include "entrex/api.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

#include "entrex/minigames.hpp"
#include "httplib.h"

namespace entrex::platform {

using nlohmann::json;

int http_status(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Unauthorized: return 401;
        case ErrorCode::LevelLocked: return 403;
        case ErrorCode::NotFound:
        case ErrorCode::UnknownLevel:
        case ErrorCode::UnknownSection:
        case ErrorCode::UnknownPlayer: return 404;
        case ErrorCode::SimulationOver:
        case ErrorCode::AlreadyBankrupt:
        case ErrorCode::NoActiveSimulation:
        case ErrorCode::NotSuccessful: return 409;
        case ErrorCode::StorageError: return 500;
        default: return 400;
    }
}

namespace {

HttpResponse json_response(const json& body, int status = 200) {
    return {status, "application/json", body.dump()};
}

HttpResponse error_response(ErrorCode code, const std::string& message) {
    return json_response({{"error_code", to_string(code)}, {"message", message}},
                         http_status(code));
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
        const std::size_t end = path.find('/', start);
        const std::string part =
            path.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!part.empty()) parts.push_back(part);
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return parts;
}

json parse_body(const HttpRequest& req, bool allow_empty = false) {
    if (req.body.empty() && allow_empty) return json::object();
    try {
        return json::parse(req.body);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("request body is not valid JSON: ") + e.what());
    }
}

const json& require(const json& body, const char* key) {
    if (!body.is_object() || !body.contains(key)) {
        throw Error(ErrorCode::BadRequest, std::string("missing field \"") + key + "\"");
    }
    return body.at(key);
}

std::string require_string(const json& body, const char* key) {
    const json& v = require(body, key);
    if (!v.is_string()) throw Error(ErrorCode::BadRequest, std::string(key) + " must be a string");
    return v.get<std::string>();
}

std::int64_t parse_int(const std::string& text, const char* what) {
    std::int64_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw Error(ErrorCode::BadRequest, std::string(what) + " must be an integer");
    }
    return value;
}

std::string bearer_token(const std::string& header) {
    constexpr std::string_view prefix = "Bearer ";
    if (header.rfind(prefix, 0) == 0) return header.substr(prefix.size());
    return header;
}

json progress_view(const PlayerRecord& r, const pack::ContentPack& pack) {
    const auto score = progression::aggregate_learning_score(r.progress);
    json levels = json::array();
    for (const auto& level : pack.levels) {
        const auto it = r.progress.attempts.find(level.number);
        const std::size_t count = it == r.progress.attempts.end() ? 0 : it->second.size();
        const bool passed = it != r.progress.attempts.end() &&
                            std::any_of(it->second.begin(), it->second.end(),
                                        [](const auto& a) { return a.passed; });
        const int best = level.number >= 1 && level.number <= static_cast<int>(pack::kLevelCount)
                             ? score.per_level[static_cast<std::size_t>(level.number - 1)]
                             : 0;
        levels.push_back({{"number", level.number},
                          {"title", level.title},
                          {"unlocked", progression::is_level_unlocked(r.progress, level.number)},
                          {"passed", passed},
                          {"best_score", best},
                          {"attempt_count", count}});
    }
    json view = progression::to_json(r.progress);
    view["display_name"] = r.display_name;
    view["learning_score"] = {{"value", score.value}, {"per_level", score.per_level}};
    view["levels"] = std::move(levels);
    return view;
}

json plan_view(const plan::BusinessPlan& p) {
    const auto c = plan::completeness_report(p);
    return {{"plan", plan::to_json(p)}, {"filled", c.filled}, {"missing", c.missing}};
}

json simulation_view(const ActiveSimulation& sim) {
    json turns = json::array();
    for (const auto& t : sim.turns) turns.push_back(market::to_json(t));
    json view = {{"config", market::to_json(sim.config)},
                 {"state", market::to_json(sim.state)},
                 {"balance", market::to_json(market::balance_sheet(sim.state, sim.config))},
                 {"turns", std::move(turns)},
                 {"turns_played", sim.turns.size()},
                 {"horizon", sim.config.horizon},
                 {"finished", sim.finished}};
    view["state"].erase("rng_state");
    if (sim.finished) {
        const auto outcome = market::make_outcome(sim.initial_state, sim.state, sim.turns);
        view["outcome"] = {{"success", outcome.success}, {"score", outcome.score}};
    } else {
        view["outcome"] = nullptr;
    }
    return view;
}

struct ExerciseLookup {
    const pack::ExerciseRef* exercise = nullptr;
    const pack::Taxonomy* taxonomy = nullptr;
};

ExerciseLookup find_exercise(const pack::ContentPack& pack, const std::string& id) {
    for (const auto& level : pack.levels) {
        for (const auto& e : level.exercises) {
            if (e.id == id) {
                if (const auto* t = pack.taxonomy(e.taxonomy)) return {&e, t};
            }
        }
    }
    throw Error(ErrorCode::NotFound, "unknown exercise \"" + id + "\"");
}

json score_json(const minigames::RoundScore& s) {
    return {{"correct", s.correct}, {"total", s.total}, {"fraction", s.fraction}};
}

std::uint64_t seed_field(const json& body, std::uint64_t fallback) {
    if (!body.contains("seed")) return fallback;
    if (!body.at("seed").is_number_unsigned() && !body.at("seed").is_number_integer()) {
        throw Error(ErrorCode::BadRequest, "seed must be a non-negative integer");
    }
    if (body.at("seed").is_number_integer() && body.at("seed").get<std::int64_t>() < 0) {
        throw Error(ErrorCode::BadRequest, "seed must be a non-negative integer");
    }
    return body.at("seed").get<std::uint64_t>();
}

class Router {
public:
    Router(Platform& platform, const HttpRequest& req)
        : platform_(platform), req_(req), parts_(split_path(req.path)) {}

    HttpResponse route() {
        if (parts_.size() < 2 || parts_[0] != "api") return not_found();
        const std::string& head = parts_[1];
        const std::size_t n = parts_.size();

        if (head == "players" && n == 2 && is("POST")) return register_player();
        if (head == "pack" && n == 2 && is("GET")) {
            return json_response(pack::public_view(platform_.pack()));
        }
        if (head == "toplist" && n == 2 && is("GET")) return top_list();

        const std::string player = platform_.authenticate(bearer_token(req_.authorization));
        if (head == "progress" && n == 2 && is("GET")) {
            return json_response(progress_view(platform_.snapshot(player), platform_.pack()));
        }
        if (head == "levels" && n == 4 && parts_[3] == "attempts" && is("POST")) {
            return submit_attempt(player, static_cast<int>(parse_int(parts_[2], "level number")));
        }
        if (head == "history" && n == 2 && is("GET")) return history(player);
        if (head == "profile" && n == 2) {
            if (is("POST")) return submit_profile(player);
            if (is("GET")) return profile(player);
        }
        if (head == "plan") return plan(player);
        if (head == "market") return market(player);
        if (head == "exercises" && n == 4 && is("POST")) {
            if (parts_[3] == "round") return exercise_round(parts_[2]);
            if (parts_[3] == "score") return exercise_score(parts_[2]);
        }
        if (head == "chat" && n == 3) {
            if (is("POST")) return post_chat(player, parts_[2]);
            if (is("GET")) return list_chat(parts_[2]);
        }
        return not_found();
    }

private:
    Platform& platform_;
    const HttpRequest& req_;
    std::vector<std::string> parts_;

    bool is(std::string_view method) const { return req_.method == method; }

    HttpResponse not_found() const {
        return error_response(ErrorCode::NotFound, "no route for " + req_.method + " " + req_.path);
    }

    HttpResponse register_player() {
        const json body = parse_body(req_);
        const auto record = platform_.register_player(require_string(body, "display_name"));
        return json_response({{"player_id", record.player_id}, {"token", record.token}}, 201);
    }

    HttpResponse top_list() {
        json out = json::array();
        int rank = 0;
        for (const auto& e : platform_.leaderboard().top_list()) {
            json entry = to_json(e);
            entry["rank"] = ++rank;
            entry["display_name"] = platform_.display_name(e.player_id).value_or("");
            out.push_back(std::move(entry));
        }
        return json_response(out);
    }

    HttpResponse submit_attempt(const std::string& player, int level_number) {
        const json body = parse_body(req_);
        const json& raw = require(body, "answers");
        if (!raw.is_array()) throw Error(ErrorCode::BadRequest, "answers must be an array");
        std::vector<progression::Answer> answers;
        for (const auto& a : raw) {
            if (!a.is_object() || !a.contains("question_id") || !a.contains("chosen_index") ||
                !a.at("question_id").is_string() || !a.at("chosen_index").is_number_integer()) {
                throw Error(ErrorCode::BadRequest,
                            "each answer needs a string question_id and an integer chosen_index");
            }
            const auto chosen = a.at("chosen_index").get<std::int64_t>();
            if (chosen < -1'000'000 || chosen > 1'000'000) {
                throw Error(ErrorCode::InvalidAnswer, "chosen_index out of range");
            }
            answers.push_back({a.at("question_id").get<std::string>(), static_cast<int>(chosen)});
        }
        const auto& pack = platform_.pack();
        const auto now = platform_.now_ms();
        const auto rules = platform_.options().rules;
        return platform_.with_player(player, [&](PlayerRecord& r) {
            auto result = progression::submit_assessment(r.progress, pack, level_number, answers,
                                                         now, rules);
            r.progress = std::move(result.progress);
            json view = progression::to_json(result.attempt);
            json per_question = json::array();
            const auto* level = pack.level(level_number);
            for (std::size_t i = 0; i < result.attempt.answers.size(); ++i) {
                const auto& a = result.attempt.answers[i];
                int correct_index = -1;
                for (const auto& q : level->quiz) {
                    if (q.id == a.question_id) correct_index = q.correct_index;
                }
                per_question.push_back({{"question_id", a.question_id},
                                        {"chosen_index", a.chosen_index},
                                        {"correct", static_cast<bool>(result.correct[i])},
                                        {"correct_index", correct_index}});
            }
            view["results"] = std::move(per_question);
            view["learning_score"] = progression::aggregate_learning_score(r.progress).value;
            return json_response(view, 201);
        });
    }

    HttpResponse history(const std::string& player) {
        const auto record = platform_.snapshot(player);
        json rows = json::array();
        for (const auto& row : progression::answer_history(record.progress, platform_.pack())) {
            rows.push_back({{"level_number", row.level_number},
                            {"prompt", row.prompt},
                            {"chosen_option", row.chosen_option},
                            {"correct_option", row.correct_option},
                            {"was_correct", row.was_correct}});
        }
        return json_response(rows);
    }

    HttpResponse profile(const std::string& player) {
        const auto record = platform_.snapshot(player);
        const auto& q = platform_.pack().profile;
        json items = json::array();
        for (const auto& i : q.items) {
            items.push_back({{"id", i.id}, {"area", i.area}, {"statement", i.statement}});
        }
        return json_response(
            {{"areas", q.areas},
             {"items", std::move(items)},
             {"report", record.progress.profile ? progression::to_json(*record.progress.profile)
                                                : json(nullptr)}});
    }

    HttpResponse submit_profile(const std::string& player) {
        const json body = parse_body(req_);
        const json& raw = require(body, "responses");
        if (!raw.is_array()) throw Error(ErrorCode::BadRequest, "responses must be an array");
        std::vector<progression::ProfileResponse> responses;
        for (const auto& r : raw) {
            if (!r.is_object() || !r.contains("item_id") || !r.contains("rating") ||
                !r.at("item_id").is_string() || !r.at("rating").is_number_integer()) {
                throw Error(ErrorCode::BadRequest,
                            "each response needs a string item_id and an integer rating");
            }
            const auto rating = r.at("rating").get<std::int64_t>();
            if (rating < 1 || rating > 5) {
                throw Error(ErrorCode::RatingOutOfRange, "ratings must be within 1..5");
            }
            responses.push_back({r.at("item_id").get<std::string>(), static_cast<int>(rating)});
        }
        const auto& questionnaire = platform_.pack().profile;
        return platform_.with_player(player, [&](PlayerRecord& r) {
            auto report = progression::record_profile_questionnaire(r.progress, questionnaire,
                                                                    responses);
            return json_response(progression::to_json(report), 201);
        });
    }

    HttpResponse plan(const std::string& player) {
        const std::size_t n = parts_.size();
        if (n == 2 && is("GET")) return json_response(plan_view(platform_.snapshot(player).plan));
        if (n == 2 && is("PUT")) {
            const json body = parse_body(req_);
            const json& sections = require(body, "sections");
            if (!sections.is_object()) {
                throw Error(ErrorCode::BadRequest, "sections must be an object of key -> text");
            }
            const auto now = platform_.now_ms();
            return platform_.with_player(player, [&](PlayerRecord& r) {
                for (const auto& [key, text] : sections.items()) {
                    if (!text.is_string()) {
                        throw Error(ErrorCode::BadRequest, "section bodies must be strings");
                    }
                    r.plan.upsert_section(key, text.get<std::string>(), now);
                }
                return json_response(plan_view(r.plan));
            });
        }
        if (n == 3 && parts_[2] == "export" && is("GET")) {
            return {200, "text/plain; charset=utf-8",
                    plan::export_plan(platform_.snapshot(player).plan)};
        }
        if (n == 4 && parts_[2] == "sections") {
            const std::string& key = parts_[3];
            if (is("GET")) {
                const auto record = platform_.snapshot(player);
                const std::string* body = record.plan.body(key);
                if (body == nullptr) {
                    throw Error(ErrorCode::UnknownSection, "unknown plan section \"" + key + "\"");
                }
                return json_response({{"key", key}, {"body", *body}});
            }
            if (is("PUT")) {
                const json body = parse_body(req_);
                const std::string text = require_string(body, "body");
                const auto now = platform_.now_ms();
                return platform_.with_player(player, [&](PlayerRecord& r) {
                    r.plan.upsert_section(key, text, now);
                    return json_response(plan_view(r.plan));
                });
            }
        }
        return not_found();
    }

    HttpResponse market(const std::string& player) {
        const std::size_t n = parts_.size();
        if (n == 2 && is("GET")) {
            const auto record = platform_.snapshot(player);
            if (!record.simulation) {
                throw Error(ErrorCode::NoActiveSimulation, "no simulation has been started");
            }
            return json_response(simulation_view(*record.simulation));
        }
        if (n == 3 && parts_[2] == "start" && is("POST")) {
            const json body = parse_body(req_, /*allow_empty=*/true);
            const json overrides = body.is_object() && body.contains("config") ? body.at("config")
                                                                               : json(nullptr);
            const auto config = market::apply_overrides({}, overrides);
            return platform_.with_player(player, [&](PlayerRecord& r) {
                const double learning = progression::aggregate_learning_score(r.progress).value;
                const auto seed = platform_.simulation_seed(r.player_id, r.simulations_started);
                ActiveSimulation sim;
                sim.config = config;
                sim.initial_state = market::initial_state(config, learning, seed);
                sim.state = sim.initial_state;
                r.simulation = sim;
                ++r.simulations_started;
                return json_response(simulation_view(sim), 201);
            });
        }
        if (n == 3 && parts_[2] == "turn" && is("POST")) {
            const json body = parse_body(req_);
            const auto decision = market::decision_from_json(require(body, "decision"));
            const auto now = platform_.now_ms();
            return platform_.with_player(player, [&](PlayerRecord& r) {
                if (!r.simulation) {
                    throw Error(ErrorCode::NoActiveSimulation, "no simulation has been started");
                }
                ActiveSimulation& sim = *r.simulation;
                auto [next, result] = market::step_turn(sim.state, decision, sim.config);
                sim.state = std::move(next);
                sim.turns.push_back(result);
                if (sim.state.bankrupt || sim.state.turn >= sim.config.horizon) {
                    sim.finished = true;
                    const auto outcome =
                        market::make_outcome(sim.initial_state, sim.state, sim.turns);
                    if (outcome.success) {
                        platform_.leaderboard().record_result(r.player_id, outcome, now);
                    }
                }
                json view = simulation_view(sim);
                view["result"] = market::to_json(result);
                return json_response(view);
            });
        }
        return not_found();
    }

    HttpResponse exercise_round(const std::string& id) {
        const json body = parse_body(req_, /*allow_empty=*/true);
        const auto [exercise, taxonomy] = find_exercise(platform_.pack(), id);
        const auto seed = seed_field(body, static_cast<std::uint64_t>(platform_.now_ms()));
        json view = {{"exercise_id", exercise->id},
                     {"kind", pack::to_string(exercise->kind)},
                     {"taxonomy", taxonomy->name},
                     {"seed", seed}};
        if (exercise->kind == pack::ExerciseKind::Classification) {
            const auto round = minigames::new_classification_round(*taxonomy, seed);
            view["categories"] = taxonomy->categories;
            view["presented_items"] = round.presented_items;
        } else {
            std::vector<std::string> stages = taxonomy->categories;
            minigames::seeded_shuffle(stages, seed);
            view["presented_items"] = stages;
        }
        return json_response(view, 201);
    }

    HttpResponse exercise_score(const std::string& id) {
        const json body = parse_body(req_);
        const auto [exercise, taxonomy] = find_exercise(platform_.pack(), id);
        if (exercise->kind == pack::ExerciseKind::Ordering) {
            const json& order = require(body, "order");
            if (!order.is_array()) throw Error(ErrorCode::BadRequest, "order must be an array");
            std::vector<std::string> given;
            for (const auto& s : order) {
                if (!s.is_string()) throw Error(ErrorCode::BadRequest, "order entries must be strings");
                given.push_back(s.get<std::string>());
            }
            return json_response(score_json(minigames::score_ordering(taxonomy->categories, given)));
        }
        const auto seed = seed_field(body, 0);
        const json& raw = require(body, "placements");
        if (!raw.is_object()) throw Error(ErrorCode::BadRequest, "placements must be an object");
        std::map<std::string, std::string> placements;
        for (const auto& [label, category] : raw.items()) {
            if (!category.is_string()) {
                throw Error(ErrorCode::BadRequest, "placements map labels to category names");
            }
            placements[label] = category.get<std::string>();
        }
        const auto round = minigames::new_classification_round(*taxonomy, seed);
        return json_response(
            score_json(minigames::score_classification(round, *taxonomy, placements)));
    }

    HttpResponse post_chat(const std::string& player, const std::string& room) {
        const json body = parse_body(req_);
        const auto message = platform_.post_message(room, player, require_string(body, "body"));
        json view = to_json(message);
        view["display_name"] = platform_.display_name(player).value_or("");
        return json_response(view, 201);
    }

    HttpResponse list_chat(const std::string& room) {
        std::int64_t since = 0;
        if (auto it = req_.query.find("since"); it != req_.query.end()) {
            since = parse_int(it->second, "since");
        }
        json out = json::array();
        for (const auto& m : platform_.chat().list_messages(room, since)) {
            json view = to_json(m);
            view["display_name"] = platform_.display_name(m.sender).value_or("");
            out.push_back(std::move(view));
        }
        return json_response(out);
    }
};

}  // namespace

HttpResponse Api::handle(const HttpRequest& request) const {
    try {
        return Router(platform_, request).route();
    } catch (const Error& e) {
        return error_response(e.code(), e.what());
    } catch (const json::exception& e) {
        return error_response(ErrorCode::BadRequest, e.what());
    } catch (const std::exception& e) {
        return error_response(ErrorCode::StorageError, e.what());
    }
}

struct HttpServer::Impl {
    httplib::Server server;
};

HttpServer::HttpServer(Api& api) : impl_(std::make_unique<Impl>()) {
    auto adapter = [&api](const httplib::Request& req, httplib::Response& res) {
        HttpRequest request;
        request.method = req.method;
        request.path = req.path;
        for (const auto& [k, v] : req.params) request.query.emplace(k, v);
        request.authorization = req.get_header_value("Authorization");
        if (request.authorization.empty()) {
            request.authorization = req.get_header_value("X-Session-Token");
        }
        request.body = req.body;
        const HttpResponse response = api.handle(request);
        res.status = response.status;
        res.set_content(response.body, response.content_type);
    };
    const std::string pattern = R"(/api/.*)";
    impl_->server.Get(pattern, adapter);
    impl_->server.Post(pattern, adapter);
    impl_->server.Put(pattern, adapter);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                                : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) {
        throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    }
    return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace entrex::platform
