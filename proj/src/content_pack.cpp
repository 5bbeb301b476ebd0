#include "entrex/content_pack.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace entrex::pack {

using nlohmann::json;

std::string_view to_string(FloorKind kind) noexcept {
    switch (kind) {
        case FloorKind::BusinessPlan: return "BusinessPlan";
        case FloorKind::Recreation: return "Recreation";
        case FloorKind::LiftStation: return "LiftStation";
        case FloorKind::VirtualMarket: return "VirtualMarket";
        case FloorKind::Chat: return "Chat";
        case FloorKind::TopList: return "TopList";
    }
    return "";
}

std::optional<FloorKind> floor_kind_from_string(std::string_view name) noexcept {
    for (FloorKind k : kAllFloorKinds) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

std::string_view to_string(ExerciseKind kind) noexcept {
    return kind == ExerciseKind::Classification ? "classification" : "ordering";
}

std::optional<ExerciseKind> exercise_kind_from_string(std::string_view name) noexcept {
    if (name == "classification") return ExerciseKind::Classification;
    if (name == "ordering") return ExerciseKind::Ordering;
    return std::nullopt;
}

std::string_view to_string(Severity severity) noexcept {
    return severity == Severity::Error ? "ERROR" : "WARNING";
}

const TaxonomyItem* Taxonomy::find_item(std::string_view label) const noexcept {
    auto it = std::find_if(items.begin(), items.end(),
                           [&](const TaxonomyItem& i) { return i.label == label; });
    return it == items.end() ? nullptr : &*it;
}

bool Taxonomy::has_category(std::string_view category) const noexcept {
    return std::find(categories.begin(), categories.end(), category) != categories.end();
}

const Level* ContentPack::level(int number) const noexcept {
    auto it = std::find_if(levels.begin(), levels.end(),
                           [&](const Level& l) { return l.number == number; });
    return it == levels.end() ? nullptr : &*it;
}

const Taxonomy* ContentPack::taxonomy(std::string_view name) const noexcept {
    auto it = taxonomies.find(std::string(name));
    return it == taxonomies.end() ? nullptr : &it->second;
}

const Floor* ContentPack::floor(FloorKind kind) const noexcept {
    auto it = std::find_if(floors.begin(), floors.end(),
                           [&](const Floor& f) { return f.kind == kind; });
    return it == floors.end() ? nullptr : &*it;
}

std::vector<std::string> ContentPack::level_titles() const {
    std::vector<std::string> titles;
    titles.reserve(levels.size());
    for (const auto& l : levels) titles.push_back(l.title);
    return titles;
}

std::size_t ValidationReport::error_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(
        diagnostics.begin(), diagnostics.end(),
        [](const Diagnostic& d) { return d.severity == Severity::Error; }));
}

namespace {

std::string describe(const ValidationReport& report) {
    std::ostringstream out;
    out << "content pack is invalid (" << report.error_count() << " error(s))";
    for (const auto& d : report.diagnostics) {
        if (d.severity == Severity::Error) {
            out << "; " << d.path << ": " << d.message;
            break;
        }
    }
    return out.str();
}

}  // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error(ErrorCode::ValidationError, describe(report)), report_(std::move(report)) {}

// ---------------------------------------------------------------------------
// validation

namespace {

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

class Collector {
public:
    void error(std::string path, std::string message) {
        diags_.push_back({Severity::Error, std::move(path), std::move(message)});
    }
    void warning(std::string path, std::string message) {
        diags_.push_back({Severity::Warning, std::move(path), std::move(message)});
    }
    std::vector<Diagnostic>& diagnostics() { return diags_; }

private:
    std::vector<Diagnostic> diags_;
};

std::string idx(std::string_view base, std::size_t i) {
    return std::string(base) + "[" + std::to_string(i) + "]";
}

void validate_levels(const ContentPack& pack, Collector& out) {
    if (pack.levels.size() != kLevelCount) {
        out.error("levels", "expected " + std::to_string(kLevelCount) + " levels, found " +
                                std::to_string(pack.levels.size()));
    }
    std::set<std::string> titles;
    std::set<std::string> question_ids;
    for (std::size_t i = 0; i < pack.levels.size(); ++i) {
        const Level& level = pack.levels[i];
        const std::string base = idx("levels", i);
        const int expected = static_cast<int>(i) + 1;
        if (level.number != expected) {
            out.error(base + ".number", "expected level number " + std::to_string(expected) +
                                            ", found " + std::to_string(level.number));
        }
        if (blank(level.title)) {
            out.error(base + ".title", "title is blank");
        } else if (!titles.insert(level.title).second) {
            out.error(base + ".title", "duplicate level title \"" + level.title + "\"");
        }
        for (std::size_t u = 0; u < level.content_units.size(); ++u) {
            if (blank(level.content_units[u].text)) {
                out.warning(idx(base + ".content_units", u) + ".text", "content unit has no text");
            }
        }
        if (level.quiz.empty()) {
            out.error(base + ".quiz", "level has no assessment questions");
        }
        for (std::size_t q = 0; q < level.quiz.size(); ++q) {
            const QuizQuestion& question = level.quiz[q];
            const std::string qpath = idx(base + ".quiz", q);
            if (blank(question.id)) {
                out.error(qpath + ".id", "question id is blank");
            } else if (!question_ids.insert(question.id).second) {
                out.error(qpath + ".id", "duplicate question id \"" + question.id + "\"");
            }
            if (blank(question.prompt)) out.error(qpath + ".prompt", "prompt is blank");
            if (question.options.size() < 2) {
                out.error(qpath + ".options", "question needs at least 2 options, found " +
                                                  std::to_string(question.options.size()));
            }
            for (std::size_t o = 0; o < question.options.size(); ++o) {
                if (blank(question.options[o])) {
                    out.error(idx(qpath + ".options", o), "option text is blank");
                }
            }
            if (question.correct_index < 0 ||
                static_cast<std::size_t>(question.correct_index) >= question.options.size()) {
                out.error(qpath + ".correct_index",
                          "correct_index " + std::to_string(question.correct_index) +
                              " out of range for " + std::to_string(question.options.size()) +
                              " options");
            }
        }
        std::set<std::string> exercise_ids;
        for (std::size_t e = 0; e < level.exercises.size(); ++e) {
            const ExerciseRef& ex = level.exercises[e];
            const std::string epath = idx(base + ".exercises", e);
            if (blank(ex.id)) {
                out.error(epath + ".id", "exercise id is blank");
            } else if (!exercise_ids.insert(ex.id).second) {
                out.error(epath + ".id", "duplicate exercise id \"" + ex.id + "\"");
            }
            const Taxonomy* tax = pack.taxonomy(ex.taxonomy);
            if (tax == nullptr) {
                out.error(epath + ".taxonomy", "unknown taxonomy \"" + ex.taxonomy + "\"");
                continue;
            }
            if (ex.kind == ExerciseKind::Classification && tax->items.empty()) {
                out.error(epath + ".taxonomy",
                          "classification exercise needs a taxonomy with items");
            }
            if (ex.kind == ExerciseKind::Ordering && tax->categories.size() < 2) {
                out.error(epath + ".taxonomy",
                          "ordering exercise needs a taxonomy with at least 2 stages");
            }
        }
    }
}

void validate_floors(const ContentPack& pack, Collector& out) {
    if (pack.floors.size() != kFloorCount) {
        out.error("floors", "expected " + std::to_string(kFloorCount) + " floors, found " +
                                std::to_string(pack.floors.size()));
    }
    std::set<FloorKind> kinds;
    for (std::size_t i = 0; i < pack.floors.size(); ++i) {
        const Floor& floor = pack.floors[i];
        const std::string base = idx("floors", i);
        if (!kinds.insert(floor.kind).second) {
            out.error(base + ".kind",
                      "duplicate floor kind " + std::string(to_string(floor.kind)));
        }
        if (blank(floor.title)) out.error(base + ".title", "title is blank");
        if (floor.kind != FloorKind::Recreation && !floor.static_resources.empty()) {
            out.warning(base + ".static_resources",
                        "static resources are only shown on the Recreation floor");
        }
        for (std::size_t r = 0; r < floor.static_resources.size(); ++r) {
            const auto& res = floor.static_resources[r];
            const std::string rpath = idx(base + ".static_resources", r);
            if (blank(res.label)) out.error(rpath + ".label", "label is blank");
            if (blank(res.uri)) out.error(rpath + ".uri", "uri is blank");
        }
    }
}

void validate_taxonomies(const ContentPack& pack, Collector& out) {
    for (const auto& [key, tax] : pack.taxonomies) {
        const std::string base = "taxonomies." + key;
        if (blank(key)) out.error(base, "taxonomy name is blank");
        if (tax.name != key) {
            out.error(base + ".name", "taxonomy name \"" + tax.name + "\" does not match key");
        }
        if (tax.categories.empty()) out.error(base + ".categories", "taxonomy has no categories");
        std::set<std::string> cats;
        for (std::size_t c = 0; c < tax.categories.size(); ++c) {
            if (blank(tax.categories[c])) {
                out.error(idx(base + ".categories", c), "category is blank");
            } else if (!cats.insert(tax.categories[c]).second) {
                out.error(idx(base + ".categories", c),
                          "duplicate category \"" + tax.categories[c] + "\"");
            }
        }
        std::set<std::string> labels;
        for (std::size_t i = 0; i < tax.items.size(); ++i) {
            const auto& item = tax.items[i];
            const std::string ipath = idx(base + ".items", i);
            if (blank(item.label)) {
                out.error(ipath + ".label", "item label is blank");
            } else if (!labels.insert(item.label).second) {
                out.error(ipath + ".label", "duplicate item label \"" + item.label + "\"");
            }
            if (!tax.has_category(item.category)) {
                out.error(ipath + ".category", "unknown category \"" + item.category + "\"");
            }
        }
    }
}

void validate_profile(const ContentPack& pack, Collector& out) {
    const auto& profile = pack.profile;
    if (profile.areas.size() != kProfileAreaCount) {
        out.error("profile.areas", "expected " + std::to_string(kProfileAreaCount) +
                                       " profile areas, found " +
                                       std::to_string(profile.areas.size()));
    }
    std::set<std::string> areas;
    for (std::size_t a = 0; a < profile.areas.size(); ++a) {
        if (blank(profile.areas[a])) {
            out.error(idx("profile.areas", a), "area name is blank");
        } else if (!areas.insert(profile.areas[a]).second) {
            out.error(idx("profile.areas", a), "duplicate area \"" + profile.areas[a] + "\"");
        }
    }
    std::set<std::string> ids;
    std::map<std::string, std::size_t> per_area;
    for (std::size_t i = 0; i < profile.items.size(); ++i) {
        const auto& item = profile.items[i];
        const std::string ipath = idx("profile.items", i);
        if (blank(item.id)) {
            out.error(ipath + ".id", "item id is blank");
        } else if (!ids.insert(item.id).second) {
            out.error(ipath + ".id", "duplicate item id \"" + item.id + "\"");
        }
        if (!areas.contains(item.area)) {
            out.error(ipath + ".area", "unknown area \"" + item.area + "\"");
        } else {
            ++per_area[item.area];
        }
        if (blank(item.statement)) out.error(ipath + ".statement", "statement is blank");
    }
    for (std::size_t a = 0; a < profile.areas.size(); ++a) {
        if (!blank(profile.areas[a]) && per_area[profile.areas[a]] == 0) {
            out.error(idx("profile.areas", a), "area \"" + profile.areas[a] + "\" has no items");
        }
    }
}

}  // namespace

ValidationReport validate_pack(const ContentPack& pack) {
    Collector out;
    if (blank(pack.version)) out.warning("version", "pack version is blank");
    validate_levels(pack, out);
    validate_floors(pack, out);
    validate_taxonomies(pack, out);
    validate_profile(pack, out);

    ValidationReport report;
    report.diagnostics = std::move(out.diagnostics());
    report.ok = report.error_count() == 0;
    return report;
}

// ---------------------------------------------------------------------------
// reading

namespace {

/// Reads the document into a ContentPack, recording shape problems (missing
/// keys, wrong JSON types) as diagnostics instead of throwing.
class Reader {
public:
    explicit Reader(Collector& out) : out_(out) {}

    ContentPack pack(const json& doc) {
        ContentPack p;
        if (!doc.is_object()) {
            out_.error("", "pack document must be a JSON object");
            return p;
        }
        p.version = string_field(doc, "version", "version", /*required=*/false);
        array_field(doc, "levels", "levels", [&](const json& j, const std::string& path) {
            p.levels.push_back(level(j, path));
        });
        array_field(doc, "floors", "floors", [&](const json& j, const std::string& path) {
            if (auto f = floor(j, path)) p.floors.push_back(std::move(*f));
        });
        if (const json* taxes = member(doc, "taxonomies", "taxonomies", json::value_t::object)) {
            for (const auto& [name, body] : taxes->items()) {
                p.taxonomies[name] = taxonomy(name, body, "taxonomies." + name);
            }
        }
        if (const json* prof = member(doc, "profile", "profile", json::value_t::object)) {
            p.profile.areas = string_array(*prof, "areas", "profile.areas");
            array_field(*prof, "items", "profile.items", [&](const json& j, const std::string& path) {
                ProfileItem item;
                if (expect_object(j, path)) {
                    item.id = string_field(j, "id", path + ".id");
                    item.area = string_field(j, "area", path + ".area");
                    item.statement = string_field(j, "statement", path + ".statement");
                }
                p.profile.items.push_back(std::move(item));
            });
        }
        return p;
    }

private:
    Collector& out_;

    bool expect_object(const json& j, const std::string& path) {
        if (j.is_object()) return true;
        out_.error(path, "expected an object");
        return false;
    }

    const json* member(const json& obj, const char* key, const std::string& path,
                       json::value_t type, bool required = true) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) out_.error(path, "missing field");
            return nullptr;
        }
        const bool ok = type == json::value_t::number_integer ? it->is_number_integer()
                                                              : it->type() == type;
        if (!ok) {
            out_.error(path, std::string("expected ") + type_name(type) + ", found " +
                                 it->type_name());
            return nullptr;
        }
        return &*it;
    }

    static const char* type_name(json::value_t t) {
        switch (t) {
            case json::value_t::object: return "object";
            case json::value_t::array: return "array";
            case json::value_t::string: return "string";
            case json::value_t::number_integer: return "integer";
            default: return "value";
        }
    }

    std::string string_field(const json& obj, const char* key, const std::string& path,
                             bool required = true) {
        const json* j = member(obj, key, path, json::value_t::string, required);
        return j ? j->get<std::string>() : std::string{};
    }

    int int_field(const json& obj, const char* key, const std::string& path) {
        const json* j = member(obj, key, path, json::value_t::number_integer);
        if (!j) return -1;
        const auto v = j->get<long long>();
        if (v < -1'000'000 || v > 1'000'000) {
            out_.error(path, "integer out of range");
            return -1;
        }
        return static_cast<int>(v);
    }

    template <typename F>
    void array_field(const json& obj, const char* key, const std::string& path, F&& each,
                     bool required = true) {
        const json* arr = member(obj, key, path, json::value_t::array, required);
        if (!arr) return;
        for (std::size_t i = 0; i < arr->size(); ++i) each((*arr)[i], idx(path, i));
    }

    std::vector<std::string> string_array(const json& obj, const char* key,
                                          const std::string& path, bool required = true) {
        std::vector<std::string> out;
        array_field(obj, key, path, [&](const json& j, const std::string& p) {
            if (j.is_string()) {
                out.push_back(j.get<std::string>());
            } else {
                out_.error(p, "expected string");
                out.emplace_back();
            }
        }, required);
        return out;
    }

    Level level(const json& j, const std::string& path) {
        Level l;
        if (!expect_object(j, path)) return l;
        l.number = int_field(j, "number", path + ".number");
        l.title = string_field(j, "title", path + ".title");
        array_field(j, "content_units", path + ".content_units",
                    [&](const json& u, const std::string& p) {
                        ContentUnit unit;
                        if (expect_object(u, p)) {
                            unit.heading = string_field(u, "heading", p + ".heading", false);
                            unit.text = string_field(u, "text", p + ".text");
                        }
                        l.content_units.push_back(std::move(unit));
                    },
                    /*required=*/false);
        array_field(j, "quiz", path + ".quiz", [&](const json& q, const std::string& p) {
            QuizQuestion question;
            if (expect_object(q, p)) {
                question.id = string_field(q, "id", p + ".id");
                question.prompt = string_field(q, "prompt", p + ".prompt");
                question.options = string_array(q, "options", p + ".options");
                question.correct_index = int_field(q, "correct_index", p + ".correct_index");
            }
            l.quiz.push_back(std::move(question));
        });
        array_field(j, "exercises", path + ".exercises",
                    [&](const json& e, const std::string& p) {
                        ExerciseRef ex;
                        if (expect_object(e, p)) {
                            ex.id = string_field(e, "id", p + ".id");
                            const auto kind = string_field(e, "kind", p + ".kind");
                            if (auto k = exercise_kind_from_string(kind)) {
                                ex.kind = *k;
                            } else if (!kind.empty()) {
                                out_.error(p + ".kind", "unknown exercise kind \"" + kind + "\"");
                            }
                            ex.title = string_field(e, "title", p + ".title", false);
                            ex.taxonomy = string_field(e, "taxonomy", p + ".taxonomy");
                        }
                        l.exercises.push_back(std::move(ex));
                    },
                    /*required=*/false);
        return l;
    }

    std::optional<Floor> floor(const json& j, const std::string& path) {
        if (!expect_object(j, path)) return std::nullopt;
        Floor f;
        const auto kind = string_field(j, "kind", path + ".kind");
        if (auto k = floor_kind_from_string(kind)) {
            f.kind = *k;
        } else {
            if (!kind.empty()) out_.error(path + ".kind", "unknown floor kind \"" + kind + "\"");
            return std::nullopt;
        }
        f.title = string_field(j, "title", path + ".title");
        array_field(j, "static_resources", path + ".static_resources",
                    [&](const json& r, const std::string& p) {
                        StaticResource res;
                        if (expect_object(r, p)) {
                            res.label = string_field(r, "label", p + ".label");
                            res.uri = string_field(r, "uri", p + ".uri");
                        }
                        f.static_resources.push_back(std::move(res));
                    },
                    /*required=*/false);
        return f;
    }

    Taxonomy taxonomy(const std::string& name, const json& j, const std::string& path) {
        Taxonomy t;
        t.name = name;
        if (!expect_object(j, path)) return t;
        t.categories = string_array(j, "categories", path + ".categories");
        array_field(j, "items", path + ".items", [&](const json& i, const std::string& p) {
            TaxonomyItem item;
            if (expect_object(i, p)) {
                item.label = string_field(i, "label", p + ".label");
                item.category = string_field(i, "category", p + ".category");
            }
            t.items.push_back(std::move(item));
        }, /*required=*/false);
        return t;
    }
};

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    // nlohmann reports the count of bytes read, i.e. a 1-based offset.
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

ContentPack load_pack(std::string_view source) {
    if (blank(source)) throw ParseError("empty pack document", 0, 0);
    json doc;
    try {
        doc = json::parse(source.begin(), source.end());
    } catch (const json::parse_error& e) {
        auto [line, column] = line_and_column(source, e.byte);
        throw ParseError("malformed pack document at line " + std::to_string(line) +
                             ", column " + std::to_string(column) + ": " + e.what(),
                         line, column);
    }

    Collector shape;
    Reader reader(shape);
    ContentPack pack = reader.pack(doc);

    ValidationReport report = validate_pack(pack);
    if (!shape.diagnostics().empty()) {
        auto& diags = shape.diagnostics();
        diags.insert(diags.end(), report.diagnostics.begin(), report.diagnostics.end());
        report.diagnostics = std::move(diags);
        report.ok = report.error_count() == 0;
    }
    if (!report.ok) throw ValidationError(std::move(report));
    return pack;
}

ContentPack load_pack_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::NotFound, "cannot open pack file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_pack(buf.str());
}

// ---------------------------------------------------------------------------
// writing

namespace {

json level_json(const Level& l, bool with_answers) {
    json units = json::array();
    for (const auto& u : l.content_units) units.push_back({{"heading", u.heading}, {"text", u.text}});
    json quiz = json::array();
    for (const auto& q : l.quiz) {
        json jq = {{"id", q.id}, {"prompt", q.prompt}, {"options", q.options}};
        if (with_answers) jq["correct_index"] = q.correct_index;
        quiz.push_back(std::move(jq));
    }
    json exercises = json::array();
    for (const auto& e : l.exercises) {
        exercises.push_back({{"id", e.id},
                             {"kind", to_string(e.kind)},
                             {"title", e.title},
                             {"taxonomy", e.taxonomy}});
    }
    return {{"number", l.number},
            {"title", l.title},
            {"content_units", std::move(units)},
            {"quiz", std::move(quiz)},
            {"exercises", std::move(exercises)}};
}

json pack_json(const ContentPack& pack, bool with_answers) {
    json levels = json::array();
    for (const auto& l : pack.levels) levels.push_back(level_json(l, with_answers));
    json floors = json::array();
    for (const auto& f : pack.floors) {
        json res = json::array();
        for (const auto& r : f.static_resources) res.push_back({{"label", r.label}, {"uri", r.uri}});
        floors.push_back(
            {{"kind", to_string(f.kind)}, {"title", f.title}, {"static_resources", std::move(res)}});
    }
    json taxonomies = json::object();
    for (const auto& [name, t] : pack.taxonomies) {
        json items = json::array();
        for (const auto& i : t.items) items.push_back({{"label", i.label}, {"category", i.category}});
        taxonomies[name] = {{"categories", t.categories}, {"items", std::move(items)}};
    }
    json profile_items = json::array();
    for (const auto& i : pack.profile.items) {
        profile_items.push_back({{"id", i.id}, {"area", i.area}, {"statement", i.statement}});
    }
    return {{"version", pack.version},
            {"levels", std::move(levels)},
            {"floors", std::move(floors)},
            {"taxonomies", std::move(taxonomies)},
            {"profile", {{"areas", pack.profile.areas}, {"items", std::move(profile_items)}}}};
}

}  // namespace

json to_json(const ContentPack& pack) { return pack_json(pack, true); }

json public_view(const ContentPack& pack) { return pack_json(pack, false); }

std::string serialize_pack(const ContentPack& pack) { return to_json(pack).dump(2) + "\n"; }

}  // namespace entrex::pack
