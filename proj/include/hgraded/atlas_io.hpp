/**
 * @file atlas_io.hpp
 * @brief Atlas files.
 *
 * Format:
 *
 *     {
 *       "group": "2", "parity": "0",            // optional, graded atlases only
 *       "charts": { "U": { "even": ["x"], "odd": [] }, ... },
 *       "transitions": { "U->V": { "y": "1/x" }, ... }
 *     }
 *
 * "U->V" is the transition from chart U to chart V: it gives every coordinate
 * of V as an expression in the coordinates of U.
 */
#pragma once

#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <json.hpp>

#include "hgraded/covering.hpp"
#include "hgraded/error.hpp"
#include "hgraded/expression.hpp"

namespace hgraded {

namespace detail {

inline std::vector<std::string> json_names(const nlohmann::json& j, const std::string& where) {
    std::vector<std::string> out;
    if (j.is_null()) return out;
    if (!j.is_array()) throw ParseError(where + " must be an array of names");
    for (const auto& item : j) {
        if (!item.is_string()) throw ParseError(where + " must contain only strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

inline std::pair<std::string, std::string> split_transition_key(const std::string& key) {
    const auto arrow = key.find("->");
    if (arrow == std::string::npos || arrow == 0 || arrow + 2 >= key.size() ||
        key.find("->", arrow + 2) != std::string::npos)
        throw ParseError("transition key '" + key + "' is not of the form \"from->to\"");
    return {key.substr(0, arrow), key.substr(arrow + 2)};
}

}  // namespace detail

inline Atlas atlas_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("atlas must be a JSON object");
    Atlas atlas;
    const bool graded = doc.contains("group");
    if (graded) {
        if (!doc["group"].is_string()) throw ParseError("\"group\" must be a string such as \"2x2\"");
        atlas.group = FiniteAbelianGroup::parse(doc["group"].get<std::string>());
        if (doc.contains("parity")) {
            if (!doc["parity"].is_string()) throw ParseError("\"parity\" must be a bit string");
            atlas.parity = ParityMap::parse(*atlas.group, doc["parity"].get<std::string>());
        } else {
            atlas.parity = ParityMap::trivial(*atlas.group);
        }
    } else if (doc.contains("parity")) {
        throw ParseError("\"parity\" given without \"group\"");
    }

    if (!doc.contains("charts") || !doc["charts"].is_object() || doc["charts"].empty())
        throw ParseError("atlas needs a non-empty \"charts\" object");
    for (const auto& [id, chart] : doc["charts"].items()) {
        if (!chart.is_object()) throw ParseError("chart '" + id + "' must be an object");
        for (const auto& [field, value] : chart.items())
            if (field != "even" && field != "odd") throw ParseError("chart '" + id + "' has unknown field '" + field + "'");
        auto even = detail::json_names(chart.value("even", nlohmann::json()), "chart '" + id + "' even");
        auto odd = detail::json_names(chart.value("odd", nlohmann::json()), "chart '" + id + "' odd");
        SignaturePtr sig = graded ? Signature::graded_from_names(*atlas.group, *atlas.parity, even, odd)
                                  : Signature::super(std::move(even), std::move(odd));
        atlas.add_chart(id, std::move(sig));
    }

    if (doc.contains("transitions")) {
        const auto& transitions = doc["transitions"];
        if (!transitions.is_object()) throw ParseError("\"transitions\" must be an object");
        for (const auto& [key, body] : transitions.items()) {
            auto [from, to] = detail::split_transition_key(key);
            if (!atlas.charts.count(from) || !atlas.charts.count(to))
                throw ParseError("transition '" + key + "' refers to an undeclared chart");
            if (!body.is_object()) throw ParseError("transition '" + key + "' must map coordinates to expressions");
            const SignaturePtr& source = atlas.charts.at(from);
            const SignaturePtr& target = atlas.charts.at(to);
            std::map<std::string, SuperRational> images;
            for (const auto& [var, text] : body.items()) {
                if (!text.is_string()) throw ParseError("image of '" + var + "' in '" + key + "' must be a string");
                auto canonical = split_weighted_name(var);
                std::string name = canonical.second ? weighted_name(canonical.first, Character{*canonical.second})
                                                    : canonical.first;
                try {
                    images.emplace(name, parse_expression(text.get<std::string>(), source));
                } catch (const ParseError& e) {
                    throw ParseError("transition '" + key + "', coordinate '" + var + "': " + e.what());
                }
            }
            auto ordered = detail::images_by_name(*target, images);
            atlas.add_transition(from, to, make_morphism(source, target, std::move(ordered)));
        }
    }
    return atlas;
}

inline Atlas parse_atlas(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed atlas JSON: ") + e.what());
    }
    return atlas_from_json(doc);
}

inline Atlas load_atlas(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open atlas file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_atlas(text);
}

inline nlohmann::json atlas_to_json(const Atlas& atlas) {
    nlohmann::json doc = nlohmann::json::object();
    if (atlas.group) {
        doc["group"] = atlas.group->to_string();
        doc["parity"] = (atlas.parity ? *atlas.parity : ParityMap::trivial(*atlas.group)).to_string();
    }
    doc["charts"] = nlohmann::json::object();
    for (const auto& [id, sig] : atlas.charts) {
        nlohmann::json even = nlohmann::json::array(), odd = nlohmann::json::array();
        for (const auto& v : sig->even()) even.push_back(v.name);
        for (const auto& v : sig->odd()) odd.push_back(v.name);
        doc["charts"][id] = {{"even", even}, {"odd", odd}};
    }
    doc["transitions"] = nlohmann::json::object();
    for (const auto& [key, m] : atlas.transitions) {
        nlohmann::json body = nlohmann::json::object();
        const auto refs = m.target()->refs();
        for (std::size_t k = 0; k < refs.size(); ++k)
            body[m.target()->variable(refs[k]).name] = format_expression(m.images()[k]);
        doc["transitions"][key.first + "->" + key.second] = body;
    }
    return doc;
}

inline void save_atlas(const Atlas& atlas, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << atlas_to_json(atlas).dump(2) << '\n';
}

}  // namespace hgraded
