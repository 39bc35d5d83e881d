#ifndef DEADLINE_PLAN_IO_HPP
#define DEADLINE_PLAN_IO_HPP

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "pmf.hpp"
#include "task_tree.hpp"

namespace deadline {

inline constexpr int kPlanFormatVersion = 1;

namespace detail {

using nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& path, const std::string& msg) {
    throw Error(Errc::SchemaError, path + ": " + msg);
}

inline double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) schema_error(path, "expected a number");
    return j.get<double>();
}

inline TaskTree node_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) schema_error(path, "node must be an object");
    auto type_it = j.find("type");
    if (type_it == j.end() || !type_it->is_string()) schema_error(path, "missing string field 'type'");
    const std::string type = type_it->get<std::string>();

    std::string label;
    if (auto it = j.find("label"); it != j.end()) {
        if (!it->is_string()) schema_error(path, "'label' must be a string");
        label = it->get<std::string>();
    }

    if (type == "primitive") {
        if (j.contains("children")) schema_error(path, "primitive nodes take no 'children'");
        const bool has_pmf = j.contains("pmf");
        const bool has_uniform = j.contains("uniform");
        if (has_pmf == has_uniform) schema_error(path, "primitive needs exactly one of 'pmf' or 'uniform'");
        try {
            if (has_uniform) {
                const json& u = j.at("uniform");
                if (!u.is_object() || !u.contains("low") || !u.contains("high") || !u.contains("bins")) {
                    schema_error(path + ".uniform", "expected {low, high, bins}");
                }
                const json& bins = u.at("bins");
                if (!bins.is_number_integer() || bins.get<long long>() < 0) {
                    schema_error(path + ".uniform.bins", "expected a non-negative integer");
                }
                UniformSpec spec{number_at(u.at("low"), path + ".uniform.low"),
                                 number_at(u.at("high"), path + ".uniform.high"), bins.get<std::size_t>()};
                return TaskTree::uniform(spec, label);
            }
            const json& atoms = j.at("pmf");
            if (!atoms.is_array()) schema_error(path + ".pmf", "expected a list of [value, probability]");
            std::vector<std::pair<double, double>> pairs;
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                const std::string at = path + ".pmf[" + std::to_string(i) + "]";
                if (!atoms[i].is_array() || atoms[i].size() != 2) schema_error(at, "expected [value, probability]");
                pairs.emplace_back(number_at(atoms[i][0], at), number_at(atoms[i][1], at));
            }
            Pmf pmf = make_pmf(pairs);
            return TaskTree::primitive(std::move(pmf), std::move(label));
        } catch (const Error& e) {
            if (e.code() == Errc::SchemaError) throw;
            throw Error(e.code(), path + (label.empty() ? "" : " (" + label + ")") + ": " + e.what());
        }
    }

    if (type != "sequence" && type != "parallel") schema_error(path, "unknown node type '" + type + "'");
    if (j.contains("pmf") || j.contains("uniform")) schema_error(path, "composite nodes carry no distribution");
    auto kids_it = j.find("children");
    if (kids_it == j.end() || !kids_it->is_array() || kids_it->empty()) {
        schema_error(path, "composite node needs a non-empty 'children' list");
    }
    std::vector<TaskTree> children;
    for (std::size_t i = 0; i < kids_it->size(); ++i) {
        children.push_back(node_from_json((*kids_it)[i], path + ".children[" + std::to_string(i) + "]"));
    }
    return type == "sequence" ? TaskTree::sequence(std::move(children), std::move(label))
                              : TaskTree::parallel(std::move(children), std::move(label));
}

inline json node_to_json(const TaskTree& t) {
    json j;
    j["type"] = kind_name(t.kind());
    if (!t.label().empty()) j["label"] = t.label();
    if (t.is_primitive()) {
        if (const auto& u = t.uniform_spec()) {
            j["uniform"] = {{"low", u->low}, {"high", u->high}, {"bins", u->bins}};
        } else {
            json atoms = json::array();
            const auto values = t.pmf().support();
            const auto probs = t.pmf().probs();
            for (std::size_t i = 0; i < values.size(); ++i) atoms.push_back({values[i], probs[i]});
            j["pmf"] = std::move(atoms);
        }
    } else {
        json kids = json::array();
        for (const TaskTree& c : t.children()) kids.push_back(node_to_json(c));
        j["children"] = std::move(kids);
    }
    return j;
}

} // namespace detail

inline TaskTree parse_plan(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::ParseError, e.what());
    }
    if (!doc.is_object()) detail::schema_error("document", "expected an object");
    auto version = doc.find("version");
    if (version == doc.end() || !version->is_number_integer() || version->get<int>() != kPlanFormatVersion) {
        detail::schema_error("document", "unsupported or missing 'version' (expected " +
                                             std::to_string(kPlanFormatVersion) + ")");
    }
    auto root = doc.find("root");
    if (root == doc.end()) detail::schema_error("document", "missing 'root'");
    return detail::node_from_json(*root, "root");
}

inline TaskTree load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_plan(buf.str());
}

inline std::string dump_plan(const TaskTree& tree, int indent = 2) {
    nlohmann::json doc{{"version", kPlanFormatVersion}, {"root", detail::node_to_json(tree)}};
    return doc.dump(indent);
}

inline void save_plan(const TaskTree& tree, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
    out << dump_plan(tree) << '\n';
    if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

} // namespace deadline

#endif
