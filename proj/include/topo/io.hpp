#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "topo/errors.hpp"
#include "topo/extension.hpp"
#include "topo/maps.hpp"
#include "topo/point_set.hpp"
#include "topo/space.hpp"
#include "topo/sweep.hpp"

namespace topo {

using ojson = nlohmann::ordered_json;

/// Optional display names for point ids. Presentation only; never affects
/// semantics or equality.
struct SpaceDoc {
    FinSpace space;
    std::vector<std::string> labels;
};

struct InstanceDoc {
    ExtensionInstance instance;
    std::vector<std::string> x_labels;
    std::vector<std::string> y_labels;
};

struct MapDoc {
    std::vector<int> assignment;
};

struct ReportDoc {
    ojson body;
};

using Document = std::variant<SpaceDoc, InstanceDoc, MapDoc, ReportDoc>;

namespace detail {

/// Canonical text: single line, ", " and ": " separators, keys in stored
/// order, newline-terminated by the callers that write whole documents.
inline void write_canonical(const ojson& j, std::string& out) {
    if (j.is_object()) {
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ", ";
            first = false;
            out += ojson(it.key()).dump();
            out += ": ";
            write_canonical(it.value(), out);
        }
        out += '}';
    } else if (j.is_array()) {
        out += '[';
        bool first = true;
        for (const ojson& item : j) {
            if (!first) out += ", ";
            first = false;
            write_canonical(item, out);
        }
        out += ']';
    } else {
        out += j.dump();
    }
}

inline const ojson& require_field(const ojson& j, const std::string& key,
                                  const std::string& where) {
    auto it = j.find(key);
    if (it == j.end())
        fail(ErrorCode::missing_field, "missing \"" + key + "\" in " + where);
    return *it;
}

inline int require_int(const ojson& j, const std::string& where) {
    if (!j.is_number_integer())
        fail(ErrorCode::invariant_violation, where + " must be an integer");
    return j.get<int>();
}

inline std::vector<int> require_int_array(const ojson& j, const std::string& where) {
    if (!j.is_array()) fail(ErrorCode::invariant_violation, where + " must be an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (const ojson& item : j) out.push_back(require_int(item, where + " entry"));
    return out;
}

}  // namespace detail

inline std::string canonical_text(const ojson& j) {
    std::string out;
    detail::write_canonical(j, out);
    out += '\n';
    return out;
}

inline ojson points_json(const PointSet& s) {
    ojson arr = ojson::array();
    s.for_each([&](int x) { arr.push_back(x); });
    return arr;
}

inline ojson space_to_json(const FinSpace& sp, const std::vector<std::string>& labels = {}) {
    ojson j;
    j["n"] = sp.size();
    ojson opens = ojson::array();
    for (const PointSet& u : sp.opens()) opens.push_back(points_json(u));
    j["opens"] = std::move(opens);
    if (!labels.empty()) j["labels"] = labels;
    return j;
}

inline FinSpace space_from_json(const ojson& j, std::vector<std::string>* labels_out,
                                const std::string& where) {
    if (!j.is_object()) fail(ErrorCode::invariant_violation, where + " must be an object");
    int n = detail::require_int(detail::require_field(j, "n", where), where + ".n");
    const ojson& opens = detail::require_field(j, "opens", where);
    if (!opens.is_array())
        fail(ErrorCode::invariant_violation, where + ".opens must be an array");
    std::vector<std::vector<int>> families;
    families.reserve(opens.size());
    for (std::size_t i = 0; i < opens.size(); ++i)
        families.push_back(detail::require_int_array(
            opens[i], where + ".opens[" + std::to_string(i) + "]"));
    if (labels_out != nullptr) {
        labels_out->clear();
        auto it = j.find("labels");
        if (it != j.end()) {
            if (!it->is_array() || it->size() != static_cast<std::size_t>(n))
                fail(ErrorCode::invariant_violation,
                     where + ".labels must list one name per point");
            for (const ojson& label : *it) {
                if (!label.is_string())
                    fail(ErrorCode::invariant_violation, where + ".labels must hold strings");
                labels_out->push_back(label.get<std::string>());
            }
        }
    }
    return FinSpace::build(n, families);
}

inline ojson instance_to_json(const ExtensionInstance& inst,
                              const std::vector<std::string>& x_labels = {},
                              const std::vector<std::string>& y_labels = {}) {
    ojson j;
    j["X"] = space_to_json(inst.source(), x_labels);
    j["Y"] = space_to_json(inst.target(), y_labels);
    j["S"] = points_json(inst.dense_set());
    ojson f = ojson::object();
    inst.dense_set().for_each(
        [&](int s) { f[std::to_string(s)] = inst.partial_map()(s); });
    j["f"] = std::move(f);
    return j;
}

inline ojson map_to_json(const std::vector<int>& assignment) {
    ojson j;
    j["assignment"] = assignment;
    return j;
}

inline ojson item_to_json(const SweepItem& item) {
    ojson j;
    j["x_n"] = item.x_n;
    j["x_index"] = item.x_index;
    j["y_n"] = item.y_n;
    j["y_index"] = item.y_index;
    if (!item.s.empty()) j["S"] = item.s;
    j["f"] = item.f;
    if (!item.extension.empty()) j["F"] = item.extension;
    if (item.alpha >= 0) j["alpha"] = item.alpha;
    return j;
}

inline ojson report_to_json(const VerificationReport& report,
                            const std::vector<GapResult>* gaps = nullptr) {
    ojson j;
    j["check"] = report.check;
    ojson params = ojson::object();
    for (const auto& [k, v] : report.parameters) params[k] = v;
    j["parameters"] = std::move(params);
    ojson counts = ojson::object();
    for (const auto& [k, v] : report.counts) counts[k] = v;
    j["counts"] = std::move(counts);
    j["pass"] = report.pass();
    ojson disc = ojson::array();
    for (const Discrepancy& d : report.discrepancies) {
        ojson entry;
        entry["claim"] = d.claim;
        entry["item"] = item_to_json(d.item);
        entry["detail"] = d.detail;
        disc.push_back(std::move(entry));
    }
    j["discrepancies"] = std::move(disc);
    if (gaps != nullptr) {
        ojson arr = ojson::array();
        for (const GapResult& g : *gaps) {
            ojson entry;
            entry["item"] = item_to_json(g.item);
            entry["instance"] = instance_to_json(g.instance);
            entry["witness"] = map_to_json(g.witness.assignment());
            arr.push_back(std::move(entry));
        }
        j["gaps"] = std::move(arr);
    }
    return j;
}

inline Document parse_document(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::syntax_error, e.what());
    }
    if (!j.is_object())
        fail(ErrorCode::invariant_violation, "a document must be a JSON object");

    if (j.contains("check")) return ReportDoc{std::move(j)};

    if (j.contains("assignment")) {
        return MapDoc{detail::require_int_array(j["assignment"], "$.assignment")};
    }

    if (j.contains("n") || j.contains("opens")) {
        std::vector<std::string> labels;
        FinSpace sp = space_from_json(j, &labels, "$");
        return SpaceDoc{std::move(sp), std::move(labels)};
    }

    if (j.contains("X") || j.contains("Y")) {
        std::vector<std::string> x_labels, y_labels;
        SpaceRef x = make_space(
            space_from_json(detail::require_field(j, "X", "$"), &x_labels, "$.X"));
        SpaceRef y = make_space(
            space_from_json(detail::require_field(j, "Y", "$"), &y_labels, "$.Y"));
        std::vector<int> s_points =
            detail::require_int_array(detail::require_field(j, "S", "$"), "$.S");
        PointSet s = PointSet::empty(x->size());
        for (int p : s_points) {
            if (p < 0 || p >= x->size())
                fail(ErrorCode::point_out_of_range,
                     "$.S lists point " + std::to_string(p) + " outside the source universe");
            if (s.contains(p))
                fail(ErrorCode::invariant_violation,
                     "$.S lists point " + std::to_string(p) + " twice");
            s.add(p);
        }
        const ojson& f = detail::require_field(j, "f", "$");
        if (!f.is_object()) fail(ErrorCode::invariant_violation, "$.f must be an object");
        std::vector<std::pair<int, int>> pairs;
        for (auto it = f.begin(); it != f.end(); ++it) {
            int p = -1;
            try {
                std::size_t used = 0;
                p = std::stoi(it.key(), &used);
                if (used != it.key().size()) p = -1;
            } catch (const std::exception&) {
                p = -1;
            }
            if (p < 0)
                fail(ErrorCode::invariant_violation,
                     "$.f key \"" + it.key() + "\" is not a point id");
            pairs.emplace_back(p, detail::require_int(it.value(), "$.f[\"" + it.key() + "\"]"));
        }
        std::sort(pairs.begin(), pairs.end());
        PointSet f_domain = PointSet::empty(x->size());
        for (auto [p, v] : pairs) {
            if (p >= x->size())
                fail(ErrorCode::point_out_of_range,
                     "$.f assigns point " + std::to_string(p) + " outside the source universe");
            f_domain.add(p);
        }
        if (!(f_domain == s))
            fail(ErrorCode::invariant_violation,
                 "$.f must be defined exactly on S; got " + f_domain.to_string() + " vs " +
                     s.to_string());
        ExtensionInstance inst(x, y, s, PartialMap::from_pairs(x, y, pairs));
        return InstanceDoc{std::move(inst), std::move(x_labels), std::move(y_labels)};
    }

    fail(ErrorCode::missing_field,
         "document is none of: space (n/opens), instance (X/Y/S/f), map (assignment), "
         "report (check)");
}

inline std::string serialize_document(const Document& doc) {
    if (const auto* sp = std::get_if<SpaceDoc>(&doc))
        return canonical_text(space_to_json(sp->space, sp->labels));
    if (const auto* inst = std::get_if<InstanceDoc>(&doc))
        return canonical_text(instance_to_json(inst->instance, inst->x_labels, inst->y_labels));
    if (const auto* map = std::get_if<MapDoc>(&doc)) return canonical_text(map_to_json(map->assignment));
    return canonical_text(std::get<ReportDoc>(doc).body);
}

namespace detail {

inline std::string dot_node_label(int x, const std::vector<std::string>& labels) {
    if (static_cast<std::size_t>(x) < labels.size()) return labels[static_cast<std::size_t>(x)];
    return std::to_string(x);
}

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

/// Edges of the specialization preorder: x -> y iff x lies in the closure
/// of {y}; self-loops are left out.
inline void dot_preorder_edges(const FinSpace& sp, const std::string& prefix,
                               const std::string& indent, std::string& out) {
    for (int y = 0; y < sp.size(); ++y) {
        PointSet cl = sp.closure(PointSet::singleton(sp.size(), y));
        for (int x = 0; x < sp.size(); ++x) {
            if (x == y || !cl.contains(x)) continue;
            out += indent + prefix + std::to_string(x) + " -> " + prefix + std::to_string(y) +
                   ";\n";
        }
    }
}

inline void dot_nodes(const FinSpace& sp, const std::string& prefix,
                      const std::vector<std::string>& labels, const std::string& indent,
                      std::string& out) {
    for (int x = 0; x < sp.size(); ++x)
        out += indent + prefix + std::to_string(x) + " [label=\"" +
               dot_escape(dot_node_label(x, labels)) + "\"];\n";
}

}  // namespace detail

/// DOT rendering of an instance: both specialization preorders side by
/// side, the base map as dashed f-arcs, and, when given, an extension as
/// solid F-arcs.
inline std::string emit_dot(const InstanceDoc& doc, const TotalMap* extension = nullptr) {
    const ExtensionInstance& inst = doc.instance;
    std::string out = "digraph instance {\n";
    out += "  rankdir=BT;\n";
    out += "  subgraph cluster_source {\n    label=\"X\";\n";
    detail::dot_nodes(inst.source(), "x", doc.x_labels, "    ", out);
    detail::dot_preorder_edges(inst.source(), "x", "    ", out);
    out += "  }\n";
    out += "  subgraph cluster_target {\n    label=\"Y\";\n";
    detail::dot_nodes(inst.target(), "y", doc.y_labels, "    ", out);
    detail::dot_preorder_edges(inst.target(), "y", "    ", out);
    out += "  }\n";
    inst.dense_set().for_each([&](int s) {
        out += "  x" + std::to_string(s) + " -> y" + std::to_string(inst.partial_map()(s)) +
               " [label=\"f\", style=dashed, constraint=false];\n";
    });
    if (extension != nullptr) {
        for (int x = 0; x < inst.source().size(); ++x)
            out += "  x" + std::to_string(x) + " -> y" + std::to_string((*extension)(x)) +
                   " [label=\"F\", constraint=false];\n";
    }
    out += "}\n";
    return out;
}

/// DOT rendering of a space's specialization preorder. Only space and
/// instance documents can be drawn.
inline std::string emit_dot(const Document& doc) {
    if (const auto* sp = std::get_if<SpaceDoc>(&doc)) {
        std::string out = "digraph space {\n";
        out += "  rankdir=BT;\n";
        detail::dot_nodes(sp->space, "p", sp->labels, "  ", out);
        detail::dot_preorder_edges(sp->space, "p", "  ", out);
        out += "}\n";
        return out;
    }
    if (const auto* inst = std::get_if<InstanceDoc>(&doc)) return emit_dot(*inst);
    fail(ErrorCode::unsupported_kind, "only space and instance documents can be drawn");
}

}  // namespace topo
