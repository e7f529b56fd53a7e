#include "leleec/cli_io.hpp"

#include "leleec/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace leleec {

using nlohmann::json;

namespace {

int line_at(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        if (auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
        throw ParseError(msg, line_at(text, e.byte == 0 ? 0 : e.byte - 1));
    }
}

/// Line on which each element of the top-level "features" array opens.
std::vector<int> feature_lines(std::string_view text) {
    std::vector<int> lines;
    int line = 1, depth = 0, features_depth = -1;
    bool in_string = false, escape = false;
    std::string token, last_key;
    for (char ch : text) {
        if (ch == '\n') ++line;
        if (in_string) {
            if (escape) {
                escape = false;
            } else if (ch == '\\') {
                escape = true;
            } else if (ch == '"') {
                in_string = false;
                if (depth == 1) last_key = token;
            } else {
                token += ch;
            }
            continue;
        }
        switch (ch) {
            case '"':
                in_string = true;
                token.clear();
                break;
            case '{':
            case '[':
                if (features_depth >= 0 && depth == features_depth) lines.push_back(line);
                ++depth;
                if (ch == '[' && depth == 2 && last_key == "features" && features_depth < 0) features_depth = depth;
                break;
            case '}':
            case ']':
                --depth;
                if (features_depth >= 0 && depth < features_depth) features_depth = -2;
                break;
            case ',':
                if (depth == 1) last_key.clear();
                break;
            default:
                break;
        }
    }
    return lines;
}

std::int64_t get_int(const json& j, const std::string& what, int line) {
    if (!j.is_number_integer()) throw ParseError(what + " must be an integer", line);
    return j.get<std::int64_t>();
}

Rational get_alpha(const json& j, int line) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number()) return parse_rational(j.dump());
    } catch (const ParseError& e) {
        throw ParseError(std::string("alpha: ") + e.what(), line);
    }
    throw ParseError("alpha must be a decimal string, a \"p/q\" string or a number", line);
}

Rect get_rect(const json& j, const std::string& what, int line) {
    if (!j.is_array() || j.size() != 4) throw ParseError(what + " must be [x_lo, y_lo, x_hi, y_hi]", line);
    Coord c[4];
    for (int i = 0; i < 4; ++i) {
        c[i] = get_int(j[i], what, line);
        if (c[i] <= -kMaxCoord || c[i] >= kMaxCoord) throw ValidationError("line " + std::to_string(line) + ": " + what + " coordinate out of range");
    }
    const Rect r = Rect::of(c[0], c[1], c[2], c[3]);
    if (!r.valid())
        throw ValidationError("line " + std::to_string(line) + ": " + what + " " + to_string(r) +
                              " needs x_lo < x_hi and y_lo < y_hi");
    return r;
}

Polygon get_polygon(const json& j, const std::string& what, int line) {
    if (!j.is_array() || j.empty()) throw ParseError(what + " must be a non-empty list of rects", line);
    Polygon p;
    for (std::size_t i = 0; i < j.size(); ++i) p.rects.push_back(get_rect(j[i], what + "[" + std::to_string(i) + "]", line));
    return p;
}

void require_object(const json& j, const std::set<std::string>& allowed, const std::string& what, int line) {
    if (!j.is_object()) throw ParseError(what + " must be an object", line);
    for (const auto& [key, _] : j.items()) {
        if (!allowed.contains(key)) throw ParseError(what + ": unknown field \"" + key + "\"", line);
    }
}

const json& field(const json& j, const char* key, const std::string& what, int line) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(what + ": missing field \"" + key + "\"", line);
    return *it;
}

std::string rect_json(const Rect& r) {
    std::ostringstream os;
    os << '[' << r.lo.x << ", " << r.lo.y << ", " << r.hi.x << ", " << r.hi.y << ']';
    return os.str();
}

std::string polygon_json(const Polygon& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.rects.size(); ++i) {
        if (i) out += ", ";
        out += rect_json(p.rects[i]);
    }
    return out + "]";
}

std::string quoted(const std::string& s) { return json(s).dump(); }

const char* axis_name(Axis a) { return a == Axis::horizontal ? "horizontal" : "vertical"; }

Axis parse_axis(const json& j, int line) {
    if (j == "horizontal") return Axis::horizontal;
    if (j == "vertical") return Axis::vertical;
    throw ParseError("axis must be \"horizontal\" or \"vertical\"", line);
}

CutKind parse_kind(const json& j, int line) {
    if (j == "edge_edge") return CutKind::edge_edge;
    if (j == "corner_corner") return CutKind::corner_corner;
    throw ParseError("cut kind must be \"edge_edge\" or \"corner_corner\"", line);
}

template <class T>
void emit_list(std::ostringstream& os, const char* name, const std::vector<T>& items,
               const std::function<std::string(const T&)>& render, bool last = false) {
    os << "  \"" << name << "\": [";
    for (std::size_t i = 0; i < items.size(); ++i) os << (i ? ",\n    " : "\n    ") << render(items[i]);
    os << (items.empty() ? "]" : "\n  ]") << (last ? "\n" : ",\n");
}

}  // namespace

bool operator==(const LayoutFile& a, const LayoutFile& b) {
    if (a.units != b.units || !(a.config == b.config) || a.features.size() != b.features.size()) return false;
    for (std::size_t i = 0; i < a.features.size(); ++i) {
        if (a.features[i].id != b.features[i].id || !(a.features[i].shape == b.features[i].shape)) return false;
    }
    return true;
}

LayoutFile parse_layout_text(std::string_view text) {
    const json doc = parse_json(text);
    require_object(doc, {"format", "units", "w_min", "s_min", "dis_m", "dis_c", "w_th", "merge_gap", "alpha", "features"},
                   "layout", 1);
    if (get_int(field(doc, "format", "layout", 1), "format", 1) != kFormatVersion)
        throw ParseError("unsupported format version", 1);
    LayoutFile out;
    if (auto it = doc.find("units"); it != doc.end()) {
        if (!it->is_string()) throw ParseError("units must be a string", 1);
        out.units = it->get<std::string>();
        if (out.units != "nm") throw ValidationError("units must be \"nm\"");
    }
    out.config = Config::from_rules(get_int(field(doc, "w_min", "layout", 1), "w_min", 1),
                                    get_int(field(doc, "s_min", "layout", 1), "s_min", 1));
    const std::pair<const char*, Coord*> overrides[] = {{"dis_m", &out.config.dis_m},
                                                        {"dis_c", &out.config.dis_c},
                                                        {"w_th", &out.config.w_th},
                                                        {"merge_gap", &out.config.merge_gap}};
    const bool has_dis_m = doc.contains("dis_m");
    for (const auto& [key, slot] : overrides) {
        if (auto it = doc.find(key); it != doc.end()) *slot = get_int(*it, key, 1);
    }
    if (has_dis_m) {
        // Rules derived from dis_m follow an explicit dis_m unless overridden too.
        if (!doc.contains("w_th")) out.config.w_th = out.config.dis_m;
        if (!doc.contains("dis_c")) out.config.dis_c = out.config.dis_m;
    }
    if (auto it = doc.find("alpha"); it != doc.end()) out.config.alpha = get_alpha(*it, 1);
    out.config.validate();

    const json& features = field(doc, "features", "layout", 1);
    if (!features.is_array()) throw ParseError("features must be a list", 1);
    const auto lines = feature_lines(text);
    std::map<std::int64_t, Feature> by_id;
    for (std::size_t k = 0; k < features.size(); ++k) {
        const int line = k < lines.size() ? lines[k] : 0;
        const std::string what = "features[" + std::to_string(k) + "]";
        require_object(features[k], {"id", "rects"}, what, line);
        const std::int64_t id = get_int(field(features[k], "id", what, line), what + ".id", line);
        if (id < 0 || id >= static_cast<std::int64_t>(features.size()))
            throw ValidationError("line " + std::to_string(line) + ": feature id " + std::to_string(id) +
                                  " outside 0.." + std::to_string(features.size() - 1));
        Feature f{static_cast<int>(id), get_polygon(field(features[k], "rects", what, line), what + ".rects", line)};
        if (auto defect = polygon_defect(f.shape); !defect.empty())
            throw ValidationError("line " + std::to_string(line) + ": feature " + std::to_string(id) + ": " + defect);
        if (!by_id.emplace(id, std::move(f)).second)
            throw ValidationError("line " + std::to_string(line) + ": duplicate feature id " + std::to_string(id));
    }
    for (auto& [_, f] : by_id) out.features.push_back(std::move(f));
    build_conflict_edges(out.features, out.config);  // rejects overlapping or touching features
    return out;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

LayoutFile parse_layout(const std::filesystem::path& path) { return parse_layout_text(read_text(path)); }

std::string emit_layout(const LayoutFile& layout) {
    const Config& c = layout.config;
    const Config base = Config::from_rules(c.w_min, c.s_min);
    std::ostringstream os;
    os << "{\n  \"format\": " << kFormatVersion << ",\n  \"units\": " << quoted(layout.units) << ",\n";
    os << "  \"w_min\": " << c.w_min << ",\n  \"s_min\": " << c.s_min << ",\n";
    if (c.dis_m != base.dis_m) os << "  \"dis_m\": " << c.dis_m << ",\n";
    if (c.dis_c != c.dis_m) os << "  \"dis_c\": " << c.dis_c << ",\n";
    if (c.w_th != c.dis_m) os << "  \"w_th\": " << c.w_th << ",\n";
    if (c.merge_gap != base.merge_gap) os << "  \"merge_gap\": " << c.merge_gap << ",\n";
    if (c.alpha != base.alpha) os << "  \"alpha\": " << quoted(format_rational(c.alpha)) << ",\n";
    emit_list<Feature>(os, "features", layout.features, [](const Feature& f) {
        return "{\"id\": " + std::to_string(f.id) + ", \"rects\": " + polygon_json(f.shape) + "}";
    }, true);
    os << "}\n";
    return os.str();
}

bool operator==(const ResultFile& a, const ResultFile& b) {
    if (!(a.config == b.config) || a.vertices.size() != b.vertices.size()) return false;
    for (std::size_t i = 0; i < a.vertices.size(); ++i) {
        if (a.vertices[i].id != b.vertices[i].id || a.vertices[i].feature != b.vertices[i].feature ||
            !(a.vertices[i].shape == b.vertices[i].shape))
            return false;
    }
    return a.colors == b.colors && a.cuts == b.cuts && a.trim_cuts == b.trim_cuts && a.conflicts == b.conflicts &&
           a.stitches == b.stitches && a.cost == b.cost && a.stats == b.stats;
}

ResultFile make_result_file(const Decomposition& d, const Config& cfg) {
    const LayoutGraph& lg = d.graphs.layout;
    const EndCutGraph& eg = d.graphs.endcuts;
    ResultFile r;
    r.config = cfg;
    r.vertices = lg.vertices;
    r.colors = d.result.colors;
    for (int id : d.result.selected_cuts) {
        const auto& c = eg.nodes[id];
        r.cuts.push_back({id, c.vertex_a, c.vertex_b, c.cut, c.kind});
    }
    for (const auto& t : d.result.trim) r.trim_cuts.push_back(t.rect);
    for (int e : d.result.conflicts) r.conflicts.emplace_back(lg.conflict_edges[e].u, lg.conflict_edges[e].v);
    for (int e : d.result.stitches) {
        const auto& s = lg.stitch_edges[e];
        r.stitches.push_back({s.feature, s.axis, s.at, s.u, s.v});
    }
    r.cost = d.result.cost;
    r.stats = {d.stats.components, d.stats.subproblems,    d.stats.bridges_cut,   d.stats.preselected,
               d.stats.max_variables, d.stats.nodes_explored, d.stats.proven_optimal};
    return r;
}

std::string emit_result(const ResultFile& r) {
    const Config& c = r.config;
    std::ostringstream os;
    os << "{\n  \"format\": " << kFormatVersion << ",\n  \"cost\": " << quoted(format_rational(r.cost)) << ",\n";
    os << "  \"config\": {\"w_min\": " << c.w_min << ", \"s_min\": " << c.s_min << ", \"dis_m\": " << c.dis_m
       << ", \"dis_c\": " << c.dis_c << ", \"w_th\": " << c.w_th << ", \"merge_gap\": " << c.merge_gap
       << ", \"alpha\": " << quoted(format_rational(c.alpha)) << ", \"stitch\": " << std::boolalpha
       << c.enable_stitch << ", \"preselect\": " << c.enable_preselect << ", \"bridges\": " << c.enable_bridges
       << "},\n";
    os << "  \"stats\": {\"components\": " << r.stats.components << ", \"subproblems\": " << r.stats.subproblems
       << ", \"bridges_cut\": " << r.stats.bridges_cut << ", \"preselected\": " << r.stats.preselected
       << ", \"max_variables\": " << r.stats.max_variables << ", \"nodes_explored\": " << r.stats.nodes_explored
       << ", \"proven_optimal\": " << r.stats.proven_optimal << "},\n";
    emit_list<Segment>(os, "vertices", r.vertices, [](const Segment& s) {
        return "{\"id\": " + std::to_string(s.id) + ", \"feature\": " + std::to_string(s.feature) +
               ", \"rects\": " + polygon_json(s.shape) + "}";
    });
    os << "  \"colors\": {";
    for (std::size_t v = 0; v < r.colors.size(); ++v)
        os << (v ? ",\n    " : "\n    ") << '"' << v << "\": " << r.colors[v] + 1;
    os << (r.colors.empty() ? "},\n" : "\n  },\n");
    emit_list<Rect>(os, "trim_cuts", r.trim_cuts, rect_json);
    emit_list<CutRecord>(os, "cuts", r.cuts, [](const CutRecord& c) {
        return "{\"id\": " + std::to_string(c.id) + ", \"between\": [" + std::to_string(c.u) + ", " +
               std::to_string(c.v) + "], \"kind\": " + quoted(to_string(c.kind)) + ", \"rect\": " + rect_json(c.rect) + "}";
    });
    emit_list<std::pair<int, int>>(os, "conflicts", r.conflicts, [](const std::pair<int, int>& p) {
        return "[" + std::to_string(p.first) + ", " + std::to_string(p.second) + "]";
    });
    emit_list<StitchRecord>(os, "stitches", r.stitches, [](const StitchRecord& s) {
        return "{\"feature\": " + std::to_string(s.feature) + ", \"axis\": " + quoted(axis_name(s.axis)) +
               ", \"at\": " + std::to_string(s.at) + ", \"between\": [" + std::to_string(s.u) + ", " +
               std::to_string(s.v) + "]}";
    }, true);
    os << "}\n";
    return os.str();
}

ResultFile parse_result_text(std::string_view text) {
    const json doc = parse_json(text);
    require_object(doc, {"format", "cost", "config", "stats", "vertices", "colors", "trim_cuts", "cuts", "conflicts", "stitches"},
                   "result", 1);
    if (get_int(field(doc, "format", "result", 1), "format", 1) != kFormatVersion)
        throw ParseError("unsupported format version", 1);
    ResultFile r;
    const json& cost = field(doc, "cost", "result", 1);
    if (!cost.is_string()) throw ParseError("cost must be a decimal string", 1);
    r.cost = parse_rational(cost.get<std::string>());

    const json& cj = field(doc, "config", "result", 1);
    require_object(cj, {"w_min", "s_min", "dis_m", "dis_c", "w_th", "merge_gap", "alpha", "stitch", "preselect", "bridges"},
                   "config", 0);
    Config& c = r.config;
    c.w_min = get_int(field(cj, "w_min", "config", 0), "w_min", 0);
    c.s_min = get_int(field(cj, "s_min", "config", 0), "s_min", 0);
    c.dis_m = get_int(field(cj, "dis_m", "config", 0), "dis_m", 0);
    c.dis_c = get_int(field(cj, "dis_c", "config", 0), "dis_c", 0);
    c.w_th = get_int(field(cj, "w_th", "config", 0), "w_th", 0);
    c.merge_gap = get_int(field(cj, "merge_gap", "config", 0), "merge_gap", 0);
    c.alpha = get_alpha(field(cj, "alpha", "config", 0), 0);
    const std::pair<const char*, bool*> flags[] = {
        {"stitch", &c.enable_stitch}, {"preselect", &c.enable_preselect}, {"bridges", &c.enable_bridges}};
    for (const auto& [key, slot] : flags) {
        const json& j = field(cj, key, "config", 0);
        if (!j.is_boolean()) throw ParseError(std::string("config.") + key + " must be true or false");
        *slot = j.get<bool>();
    }

    const json& sj = field(doc, "stats", "result", 1);
    require_object(sj, {"components", "subproblems", "bridges_cut", "preselected", "max_variables", "nodes_explored", "proven_optimal"},
                   "stats", 0);
    r.stats.components = static_cast<int>(get_int(field(sj, "components", "stats", 0), "components", 0));
    r.stats.subproblems = static_cast<int>(get_int(field(sj, "subproblems", "stats", 0), "subproblems", 0));
    r.stats.bridges_cut = static_cast<int>(get_int(field(sj, "bridges_cut", "stats", 0), "bridges_cut", 0));
    r.stats.preselected = static_cast<int>(get_int(field(sj, "preselected", "stats", 0), "preselected", 0));
    r.stats.max_variables = static_cast<int>(get_int(field(sj, "max_variables", "stats", 0), "max_variables", 0));
    r.stats.nodes_explored = static_cast<std::uint64_t>(get_int(field(sj, "nodes_explored", "stats", 0), "nodes_explored", 0));
    const json& po = field(sj, "proven_optimal", "stats", 0);
    if (!po.is_boolean()) throw ParseError("stats.proven_optimal must be true or false");
    r.stats.proven_optimal = po.get<bool>();

    const json& vj = field(doc, "vertices", "result", 1);
    if (!vj.is_array()) throw ParseError("vertices must be a list");
    for (std::size_t i = 0; i < vj.size(); ++i) {
        const std::string what = "vertices[" + std::to_string(i) + "]";
        require_object(vj[i], {"id", "feature", "rects"}, what, 0);
        Segment s;
        s.id = static_cast<int>(get_int(field(vj[i], "id", what, 0), what + ".id", 0));
        s.feature = static_cast<int>(get_int(field(vj[i], "feature", what, 0), what + ".feature", 0));
        s.shape = get_polygon(field(vj[i], "rects", what, 0), what + ".rects", 0);
        if (s.id != static_cast<int>(i)) throw ParseError(what + ": vertex ids must be dense and in order");
        r.vertices.push_back(std::move(s));
    }

    const json& colors = field(doc, "colors", "result", 1);
    if (!colors.is_object()) throw ParseError("colors must be an object");
    r.colors.assign(r.vertices.size(), -1);
    for (const auto& [key, value] : colors.items()) {
        std::size_t pos = 0;
        int id = -1;
        try {
            id = std::stoi(key, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != key.size() || id < 0 || static_cast<std::size_t>(id) >= r.colors.size())
            throw ParseError("colors: unknown vertex \"" + key + "\"");
        const auto mask = get_int(value, "colors." + key, 0);
        r.colors[id] = static_cast<int>(mask) - 1;
    }

    const json& tj = field(doc, "trim_cuts", "result", 1);
    if (!tj.is_array()) throw ParseError("trim_cuts must be a list");
    for (std::size_t i = 0; i < tj.size(); ++i) r.trim_cuts.push_back(get_rect(tj[i], "trim_cuts[" + std::to_string(i) + "]", 0));

    const json& kj = field(doc, "cuts", "result", 1);
    if (!kj.is_array()) throw ParseError("cuts must be a list");
    for (std::size_t i = 0; i < kj.size(); ++i) {
        const std::string what = "cuts[" + std::to_string(i) + "]";
        require_object(kj[i], {"id", "between", "kind", "rect"}, what, 0);
        const json& between = field(kj[i], "between", what, 0);
        if (!between.is_array() || between.size() != 2) throw ParseError(what + ".between must be [u, v]");
        r.cuts.push_back({static_cast<int>(get_int(field(kj[i], "id", what, 0), what + ".id", 0)),
                          static_cast<int>(get_int(between[0], what + ".between", 0)),
                          static_cast<int>(get_int(between[1], what + ".between", 0)),
                          get_rect(field(kj[i], "rect", what, 0), what + ".rect", 0),
                          parse_kind(field(kj[i], "kind", what, 0), 0)});
    }

    const json& ej = field(doc, "conflicts", "result", 1);
    if (!ej.is_array()) throw ParseError("conflicts must be a list");
    for (const auto& p : ej) {
        if (!p.is_array() || p.size() != 2) throw ParseError("conflicts entries must be [u, v]");
        r.conflicts.emplace_back(static_cast<int>(get_int(p[0], "conflict", 0)), static_cast<int>(get_int(p[1], "conflict", 0)));
    }

    const json& stj = field(doc, "stitches", "result", 1);
    if (!stj.is_array()) throw ParseError("stitches must be a list");
    for (std::size_t i = 0; i < stj.size(); ++i) {
        const std::string what = "stitches[" + std::to_string(i) + "]";
        require_object(stj[i], {"feature", "axis", "at", "between"}, what, 0);
        const json& between = field(stj[i], "between", what, 0);
        if (!between.is_array() || between.size() != 2) throw ParseError(what + ".between must be [u, v]");
        r.stitches.push_back({static_cast<int>(get_int(field(stj[i], "feature", what, 0), what + ".feature", 0)),
                              parse_axis(field(stj[i], "axis", what, 0), 0),
                              get_int(field(stj[i], "at", what, 0), what + ".at", 0),
                              static_cast<int>(get_int(between[0], what + ".between", 0)),
                              static_cast<int>(get_int(between[1], what + ".between", 0))});
    }
    return r;
}

ResultFile parse_result(const std::filesystem::path& path) { return parse_result_text(read_text(path)); }

std::vector<std::string> verify_result(const LayoutFile& layout, const ResultFile& result) {
    std::vector<std::string> bad;
    Graphs g;
    try {
        g = build_graphs(layout.features, result.config);
    } catch (const Error& e) {
        bad.push_back(std::string("graph construction: ") + e.what());
        return bad;
    }
    const LayoutGraph& lg = g.layout;
    const EndCutGraph& eg = g.endcuts;

    if (result.vertices.size() != lg.vertices.size()) {
        bad.push_back("vertices: result has " + std::to_string(result.vertices.size()) + ", layout yields " +
                      std::to_string(lg.vertices.size()));
        return bad;
    }
    for (std::size_t v = 0; v < lg.vertices.size(); ++v) {
        if (result.vertices[v].feature != lg.vertices[v].feature || !(result.vertices[v].shape == lg.vertices[v].shape))
            bad.push_back("vertices: vertex " + std::to_string(v) + " does not match the layout");
    }
    for (std::size_t v = 0; v < result.colors.size(); ++v) {
        if (result.colors[v] != 0 && result.colors[v] != 1)
            bad.push_back("colors: vertex " + std::to_string(v) + " has no mask 1 or 2");
    }
    if (!bad.empty()) return bad;

    std::vector<int> selected;
    for (const auto& c : result.cuts) {
        if (c.id < 0 || static_cast<std::size_t>(c.id) >= eg.nodes.size()) {
            bad.push_back("cuts: " + std::to_string(c.id) + " is not a candidate");
            continue;
        }
        const auto& n = eg.nodes[c.id];
        if (n.vertex_a != c.u || n.vertex_b != c.v || !(n.cut == c.rect) || n.kind != c.kind)
            bad.push_back("cuts: " + std::to_string(c.id) + " does not match candidate " + to_string(n.cut));
        if (!selected.empty() && selected.back() >= c.id) bad.push_back("cuts: ids not strictly ascending");
        selected.push_back(c.id);
    }
    if (!bad.empty()) return bad;

    const Evaluation ev = evaluate_decomposition(lg, eg, result.colors, selected, result.config.alpha);
    bad.insert(bad.end(), ev.violations.begin(), ev.violations.end());

    std::vector<std::pair<int, int>> conflicts;
    for (int e : ev.conflicts) conflicts.emplace_back(lg.conflict_edges[e].u, lg.conflict_edges[e].v);
    if (conflicts != result.conflicts)
        bad.push_back("conflicts: result lists " + std::to_string(result.conflicts.size()) + ", recomputed " +
                      std::to_string(conflicts.size()));
    std::vector<StitchRecord> stitches;
    for (int e : ev.stitches) {
        const auto& s = lg.stitch_edges[e];
        stitches.push_back({s.feature, s.axis, s.at, s.u, s.v});
    }
    if (stitches != result.stitches)
        bad.push_back("stitches: result lists " + std::to_string(result.stitches.size()) + ", recomputed " +
                      std::to_string(stitches.size()));
    const Rational listed = Rational(static_cast<std::int64_t>(result.conflicts.size())) +
                            result.config.alpha * static_cast<std::int64_t>(result.stitches.size());
    if (result.cost != listed)
        bad.push_back("cost: " + format_rational(result.cost) + " != |conflicts| + alpha*|stitches| = " +
                      format_rational(listed));
    if (result.cost != ev.cost)
        bad.push_back("cost: " + format_rational(result.cost) + " != recomputed " + format_rational(ev.cost));
    std::vector<Rect> trim;
    for (const auto& t : merge_trim_shapes(eg, selected)) trim.push_back(t.rect);
    if (trim != result.trim_cuts) bad.push_back("trim_cuts: do not match the merged selected cuts");
    return bad;
}

std::string emit_svg(const ResultFile& r) {
    Rect box = Rect::of(0, 0, 100, 100);
    bool first = true;
    for (const auto& v : r.vertices) {
        for (const auto& rect : v.shape.rects) {
            box = first ? rect : bounding_union(box, rect);
            first = false;
        }
    }
    const Coord margin = std::max<Coord>(20, r.config.dis_m);
    box = box.expanded(margin);
    const Coord flip = box.lo.y + box.hi.y;

    std::ostringstream os;
    auto rect_el = [&](const Rect& q, const char* cls) {
        os << "<rect class=\"" << cls << "\" x=\"" << q.lo.x << "\" y=\"" << flip - q.hi.y << "\" width=\""
           << q.width() << "\" height=\"" << q.height() << "\"/>\n";
    };
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << box.lo.x << ' ' << box.lo.y << ' ' << box.width()
       << ' ' << box.height() << "\" width=\"" << box.width() << "\" height=\"" << box.height() << "\">\n";
    os << "<defs>\n"
          "<pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"8\" height=\"8\" patternTransform=\"rotate(45)\">"
          "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#222222\" stroke-width=\"3\"/></pattern>\n"
          "<marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
          "orient=\"auto-start-reverse\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#d62728\"/></marker>\n"
          "</defs>\n";
    os << "<style>.mask1{fill:#4c78a8}.mask2{fill:#f2b134}.unassigned{fill:#bbbbbb}"
          ".trim{fill:url(#hatch);stroke:#222222;stroke-width:1;fill-opacity:0.8}"
          ".stitch{stroke:#000000;stroke-width:2;stroke-dasharray:4 3}"
          ".conflict{stroke:#d62728;stroke-width:3;marker-start:url(#arrow);marker-end:url(#arrow)}</style>\n";
    os << "<rect x=\"" << box.lo.x << "\" y=\"" << box.lo.y << "\" width=\"" << box.width() << "\" height=\""
       << box.height() << "\" fill=\"#ffffff\"/>\n";
    os << "<g id=\"masks\">\n";
    for (const auto& v : r.vertices) {
        const int color = v.id < static_cast<int>(r.colors.size()) ? r.colors[v.id] : -1;
        const char* cls = color == 0 ? "mask1" : (color == 1 ? "mask2" : "unassigned");
        for (const auto& rect : v.shape.rects) rect_el(rect, cls);
    }
    os << "</g>\n<g id=\"trim\">\n";
    for (const auto& t : r.trim_cuts) rect_el(t, "trim");
    os << "</g>\n<g id=\"stitches\">\n";
    for (const auto& s : r.stitches) {
        const Rect b = bounding_union(r.vertices[s.u].shape.bbox(), r.vertices[s.v].shape.bbox());
        if (s.axis == Axis::horizontal)
            os << "<line class=\"stitch\" x1=\"" << s.at << "\" y1=\"" << flip - b.hi.y << "\" x2=\"" << s.at
               << "\" y2=\"" << flip - b.lo.y << "\"/>\n";
        else
            os << "<line class=\"stitch\" x1=\"" << b.lo.x << "\" y1=\"" << flip - s.at << "\" x2=\"" << b.hi.x
               << "\" y2=\"" << flip - s.at << "\"/>\n";
    }
    os << "</g>\n<g id=\"conflicts\">\n";
    for (auto [u, v] : r.conflicts) {
        const Rect a = r.vertices[u].shape.bbox(), b = r.vertices[v].shape.bbox();
        os << "<line class=\"conflict\" x1=\"" << (a.lo.x + a.hi.x) / 2 << "\" y1=\"" << flip - (a.lo.y + a.hi.y) / 2
           << "\" x2=\"" << (b.lo.x + b.hi.x) / 2 << "\" y2=\"" << flip - (b.lo.y + b.hi.y) / 2 << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

std::string emit_baseline(const BaselineDecomposition& d) {
    std::ostringstream os;
    os << "{\n  \"format\": " << kFormatVersion << ",\n  \"kind\": \"lelele\",\n  \"cost\": "
       << quoted(format_rational(d.result.cost)) << ",\n  \"proven_optimal\": " << std::boolalpha << d.proven_optimal
       << ",\n  \"colors\": {";
    for (std::size_t v = 0; v < d.result.colors.size(); ++v)
        os << (v ? ",\n    " : "\n    ") << '"' << v << "\": " << d.result.colors[v] + 1;
    os << (d.result.colors.empty() ? "},\n" : "\n  },\n");
    std::vector<std::pair<int, int>> pairs;
    for (int e : d.result.conflicts) pairs.emplace_back(d.layout.conflict_edges[e].u, d.layout.conflict_edges[e].v);
    emit_list<std::pair<int, int>>(os, "conflicts", pairs, [](const std::pair<int, int>& p) {
        return "[" + std::to_string(p.first) + ", " + std::to_string(p.second) + "]";
    }, true);
    os << "}\n";
    return os.str();
}

namespace {

/// Uniform draw in [0, bound) that does not depend on the standard library's distributions.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

void add(LayoutFile& out, std::vector<Rect> rects) {
    out.features.push_back({static_cast<int>(out.features.size()), Polygon{std::move(rects)}});
}

}  // namespace

LayoutFile gen_synthetic(std::string_view kind, int n, std::uint64_t seed, const Config& cfg) {
    if (n < 1) throw ValidationError("n must be at least 1");
    cfg.validate();
    std::mt19937_64 rng(seed);
    LayoutFile out;
    out.config = cfg;
    const Coord w = cfg.w_min;
    const Coord gap = std::max(cfg.s_min, (cfg.dis_m - cfg.w_min + 1) / 2);
    const Coord apart = std::max(cfg.dis_m, cfg.dis_c) + 4 * w;

    if (kind == "grid") {
        // n blocks of n parallel wires; neighbours conflict, blocks stay apart.
        const Coord length = 4 * cfg.dis_m;
        const Coord block_w = n * (w + gap) - gap;
        for (int b = 0; b < n; ++b) {
            const Coord x0 = b * (block_w + apart);
            for (int i = 0; i < n; ++i) {
                const Coord jitter = static_cast<Coord>(draw(rng, 4)) * w;
                const Coord x = x0 + i * (w + gap);
                add(out, {Rect::of(x, jitter, x + w, jitter + length)});
            }
        }
    } else if (kind == "comb") {
        // n combs: a spine with teeth, and a finger between each pair of teeth.
        Coord x0 = 0;
        const Coord pitch = 2 * (w + gap);
        const Coord tooth = 4 * cfg.dis_m;
        for (int c = 0; c < n; ++c) {
            const int teeth = 3 + static_cast<int>(draw(rng, 4));
            const Coord width = (teeth - 1) * pitch + w;
            std::vector<Rect> comb{Rect::of(x0, 0, x0 + width, w)};
            for (int t = 0; t < teeth; ++t) {
                const Coord x = x0 + t * pitch;
                comb.push_back(Rect::of(x, w, x + w, w + tooth));
            }
            add(out, std::move(comb));
            for (int t = 0; t + 1 < teeth; ++t) {
                const Coord x = x0 + t * pitch + w + gap;
                const Coord extra = static_cast<Coord>(draw(rng, 3)) * w;
                add(out, {Rect::of(x, w + gap, x + w, w + tooth + gap + extra)});
            }
            x0 += width + apart;
        }
    } else if (kind == "clique4_array") {
        // The four-feature motif: every pair conflicts, a 3-mask coloring cannot avoid one conflict.
        const Coord unit = 10;
        const Rect motif[] = {Rect::of(0, 70, 100, 170), Rect::of(0, 0, 100, 50), Rect::of(110, 0, 210, 50),
                              Rect::of(110, 70, 210, 170)};
        const Coord scale = std::max<Coord>(1, cfg.w_min / unit);
        int cols = 1;
        while (cols * cols < n) ++cols;
        const Coord pitch = 210 * scale + apart;
        for (int k = 0; k < n; ++k) {
            const Coord dx = (k % cols) * pitch, dy = (k / cols) * pitch;
            for (const auto& r : motif)
                add(out, {Rect::of(r.lo.x * scale, r.lo.y * scale, r.hi.x * scale, r.hi.y * scale).translated(dx, dy)});
        }
    } else if (kind == "via_array") {
        // n square contacts on shuffled sites of a tight grid.
        const Coord side = 2 * w, pitch = side + gap;
        int m = 1;
        while (m * m * 4 < n * 5) ++m;
        std::vector<int> sites(static_cast<std::size_t>(m * m));
        for (std::size_t i = 0; i < sites.size(); ++i) sites[i] = static_cast<int>(i);
        for (std::size_t i = sites.size(); i > 1; --i) std::swap(sites[i - 1], sites[draw(rng, i)]);
        sites.resize(static_cast<std::size_t>(n));
        std::sort(sites.begin(), sites.end());
        for (int s : sites) {
            const Coord x = (s % m) * pitch, y = (s / m) * pitch;
            add(out, {Rect::of(x, y, x + side, y + side)});
        }
    } else {
        throw ValidationError("unknown layout kind \"" + std::string(kind) + "\"");
    }
    return out;
}

}  // namespace leleec
