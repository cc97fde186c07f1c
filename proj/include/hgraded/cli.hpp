/**
 * @file cli.hpp
 * @brief Command dispatch for the hgraded tool.
 *
 * Exit codes: 0 success, 1 mathematical failure (validation error, singular
 * lift, failed cocycle check), 2 usage, parse or file error.
 */
#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hgraded/atlas_io.hpp"
#include "hgraded/covering.hpp"
#include "hgraded/expression.hpp"
#include "hgraded/graded_ops.hpp"

namespace hgraded::cli {

class UsageError : public Error {
public:
    using Error::Error;
};

enum ExitCode : int { Success = 0, MathFailure = 1, UsageFailure = 2 };

struct CommandConfig {
    std::string command;  // char-table | decompose | act | lift | lift-atlas | check-cocycle
    std::optional<std::string> group;
    std::optional<std::string> parity;
    std::vector<std::string> even;
    std::vector<std::string> odd;
    std::vector<std::string> target_even;
    std::vector<std::string> target_odd;
    std::vector<std::string> maps;  // "y=expr"
    std::optional<std::string> element;
    std::optional<std::string> expr;  // read from the input stream when absent or "-"
    std::optional<std::string> atlas_path;
    std::optional<std::string> output;
    bool json = false;
};

/// Splits "x@(0,1),y" at commas outside parentheses. Repeated flags are flattened.
inline std::vector<std::string> split_names(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::string current;
        int depth = 0;
        auto flush = [&] {
            auto b = current.find_first_not_of(" \t");
            auto e = current.find_last_not_of(" \t");
            if (b != std::string::npos) out.push_back(current.substr(b, e - b + 1));
            current.clear();
        };
        for (char c : item) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                flush();
                continue;
            }
            current += c;
        }
        flush();
    }
    return out;
}

namespace detail {

struct Grading {
    FiniteAbelianGroup group;
    ParityMap parity;
};

inline std::optional<Grading> grading(const CommandConfig& cfg, bool required) {
    if (!cfg.group) {
        if (cfg.parity) throw UsageError("--parity needs --group");
        if (required) throw UsageError(cfg.command + " needs --group");
        return std::nullopt;
    }
    try {
        FiniteAbelianGroup g = FiniteAbelianGroup::parse(*cfg.group);
        ParityMap pm = cfg.parity ? ParityMap::parse(g, *cfg.parity) : ParityMap::trivial(g);
        return Grading{g, pm};
    } catch (const MathError& e) {
        throw UsageError(e.what());
    }
}

inline SignaturePtr signature(const std::optional<Grading>& grading, const std::vector<std::string>& even,
                              const std::vector<std::string>& odd) {
    auto e = split_names(even), o = split_names(odd);
    if (grading) return Signature::graded_from_names(grading->group, grading->parity, e, o);
    return Signature::super(std::move(e), std::move(o));
}

inline std::string read_all(std::istream& in) {
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

inline std::string expression_text(const CommandConfig& cfg, std::istream& in) {
    if (cfg.expr && *cfg.expr != "-") return *cfg.expr;
    std::string text = read_all(in);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    if (text.empty()) throw UsageError("no expression given (use --expr or standard input)");
    return text;
}

inline std::string character_value(long exponent, long order) {
    exponent %= order;
    if (exponent < 0) exponent += order;
    const long d = std::gcd(exponent, order);
    const long k = exponent / d, n = order / d;
    if (n == 1) return "1";
    if (n == 2) return "-1";
    if (n == 4) return k == 1 ? "i" : "-i";
    return "zeta(" + std::to_string(n) + "," + std::to_string(k) + ")";
}

inline GroupElement parse_element(const FiniteAbelianGroup& group, std::string text) {
    if (!text.empty() && text.front() == '(') {
        if (text.back() != ')') throw UsageError("invalid element '" + text + "'");
        text = text.substr(1, text.size() - 2);
    }
    std::vector<int> residues;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto b = part.find_first_not_of(' ');
        auto e = part.find_last_not_of(' ');
        part = b == std::string::npos ? "" : part.substr(b, e - b + 1);
        if (part.empty() || part.size() > 9 || part.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("invalid element '" + text + "'");
        residues.push_back(std::stoi(part));
    }
    if (residues.size() != group.rank())
        throw UsageError("element '" + text + "' needs " + std::to_string(group.rank()) + " components");
    return group.element(std::move(residues));
}

inline int char_table(const CommandConfig& cfg, std::ostream& out) {
    auto gr = grading(cfg, true);
    const auto& g = gr->group;
    const auto elements = g.elements();
    const auto characters = g.characters();
    if (cfg.json) {
        nlohmann::json doc;
        doc["group"] = g.to_string();
        doc["exponent"] = g.exponent();
        for (const auto& e : elements) doc["elements"].push_back(e.to_string());
        for (const auto& chi : characters) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& e : elements) row.push_back(character_value(g.character_exponent(chi, e), g.exponent()));
            doc["characters"].push_back({{"character", chi.to_string()}, {"values", row}});
        }
        out << doc.dump(2) << '\n';
        return Success;
    }
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header{""};
    for (const auto& e : elements) header.push_back(e.to_string());
    cells.push_back(header);
    for (const auto& chi : characters) {
        std::vector<std::string> row{chi.to_string()};
        for (const auto& e : elements) row.push_back(character_value(g.character_exponent(chi, e), g.exponent()));
        cells.push_back(row);
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : cells) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) line += "  ";
            line += std::string(width[c] - row[c].size(), ' ') + row[c];
        }
        out << line << '\n';
    }
    return Success;
}

inline int decompose_cmd(const CommandConfig& cfg, std::istream& in, std::ostream& out) {
    auto gr = grading(cfg, false);
    SignaturePtr sig = signature(gr, cfg.even, cfg.odd);
    SuperRational f = parse_expression(expression_text(cfg, in), sig);
    auto components = decompose(f);
    if (cfg.json) {
        nlohmann::json doc;
        doc["group"] = sig->group().to_string();
        doc["parity"] = sig->parity_map().to_string();
        doc["components"] = nlohmann::json::object();
        for (const auto& [chi, part] : components) doc["components"][chi.to_string()] = format_expression(part);
        out << doc.dump(2) << '\n';
        return Success;
    }
    if (components.empty()) out << "0\n";
    for (const auto& [chi, part] : components) out << chi.to_string() << ": " << format_expression(part) << '\n';
    return Success;
}

inline int act_cmd(const CommandConfig& cfg, std::istream& in, std::ostream& out) {
    auto gr = grading(cfg, true);
    if (!cfg.element) throw UsageError("act needs --element");
    SignaturePtr sig = signature(gr, cfg.even, cfg.odd);
    GroupElement g = parse_element(gr->group, *cfg.element);
    SuperRational f = parse_expression(expression_text(cfg, in), sig);
    std::string result = format_expression(act(g, f).normalized());
    if (cfg.json)
        out << nlohmann::json{{"element", g.to_string()}, {"result", result}}.dump(2) << '\n';
    else
        out << result << '\n';
    return Success;
}

inline int lift_cmd(const CommandConfig& cfg, std::ostream& out) {
    auto gr = grading(cfg, true);
    SignaturePtr source = Signature::super(split_names(cfg.even), split_names(cfg.odd));
    SignaturePtr target = Signature::super(split_names(cfg.target_even), split_names(cfg.target_odd));
    if (cfg.maps.empty() && target->size() > 0) throw UsageError("lift needs --map for every target coordinate");
    std::map<std::string, SuperRational> images;
    for (const auto& entry : cfg.maps) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) throw UsageError("--map expects \"name=expression\", got '" + entry + "'");
        std::string name = entry.substr(0, eq);
        name.erase(0, name.find_first_not_of(' '));
        name.erase(name.find_last_not_of(' ') + 1);
        if (!images.emplace(name, parse_expression(entry.substr(eq + 1), source)).second)
            throw UsageError("duplicate --map for '" + name + "'");
    }
    Morphism psi = make_super_morphism(source, target, images);
    Morphism lift = lift_super(psi, gr->group, gr->parity);
    const auto refs = lift.target()->refs();
    if (cfg.json) {
        nlohmann::json doc;
        doc["group"] = gr->group.to_string();
        doc["parity"] = gr->parity.to_string();
        doc["images"] = nlohmann::json::object();
        for (std::size_t k = 0; k < refs.size(); ++k)
            doc["images"][lift.target()->variable(refs[k]).name] = format_expression(lift.images()[k].normalized());
        out << doc.dump(2) << '\n';
        return Success;
    }
    for (std::size_t k = 0; k < refs.size(); ++k)
        out << lift.target()->variable(refs[k]).name << " = " << format_expression(lift.images()[k].normalized())
            << '\n';
    return Success;
}

inline int lift_atlas_cmd(const CommandConfig& cfg, std::ostream& out) {
    auto gr = grading(cfg, true);
    if (!cfg.atlas_path) throw UsageError("lift-atlas needs an atlas file");
    Atlas atlas = load_atlas(*cfg.atlas_path);
    Atlas lifted = lift_atlas(atlas, gr->group, gr->parity);
    out << atlas_to_json(lifted).dump(2) << '\n';
    return Success;
}

inline nlohmann::json report_json(const CocycleReport& report) {
    nlohmann::json doc;
    doc["passed"] = report.passed;
    doc["formal_identity"] = report.formal_identity;
    doc["pairs_checked"] = report.pairs_checked;
    doc["triples_checked"] = report.triples_checked;
    doc["failures"] = nlohmann::json::array();
    for (const auto& f : report.failures) {
        nlohmann::json residuals = nlohmann::json::object();
        for (const auto& [var, text] : f.residuals) residuals[var] = text;
        doc["failures"].push_back(
            {{"kind", to_string(f.kind)}, {"charts", f.charts}, {"message", f.message}, {"residuals", residuals}});
    }
    return doc;
}

inline int check_cocycle_cmd(const CommandConfig& cfg, std::ostream& out) {
    if (!cfg.atlas_path) throw UsageError("check-cocycle needs an atlas file");
    Atlas atlas = load_atlas(*cfg.atlas_path);
    CocycleReport report = check_cocycle(atlas);
    if (cfg.json) {
        out << report_json(report).dump(2) << '\n';
    } else {
        out << "cocycle: " << (report.passed ? "pass" : "FAIL") << " (" << report.pairs_checked << " pairs, "
            << report.triples_checked << " triples checked as formal identities)\n";
        for (const auto& f : report.failures) {
            out << "  " << to_string(f.kind) << " " << hgraded::detail::loop_name(f.charts) << ": " << f.message
                << '\n';
            for (const auto& [var, text] : f.residuals) out << "    " << var << " -> " << text << '\n';
        }
    }
    return report.passed ? Success : MathFailure;
}

inline int dispatch(const CommandConfig& cfg, std::istream& in, std::ostream& out) {
    if (cfg.command == "char-table") return char_table(cfg, out);
    if (cfg.command == "decompose") return decompose_cmd(cfg, in, out);
    if (cfg.command == "act") return act_cmd(cfg, in, out);
    if (cfg.command == "lift") return lift_cmd(cfg, out);
    if (cfg.command == "lift-atlas") return lift_atlas_cmd(cfg, out);
    if (cfg.command == "check-cocycle") return check_cocycle_cmd(cfg, out);
    throw UsageError("unknown command '" + cfg.command + "'");
}

}  // namespace detail

/// Runs one command. Results go to `out` (or to cfg.output), diagnostics to `err`.
inline int run(const CommandConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    std::ostringstream buffer;
    int code = Success;
    try {
        code = detail::dispatch(cfg, in, buffer);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return UsageFailure;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return UsageFailure;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return MathFailure;
    } catch (const MathError& e) {
        err << "math error: " << e.what() << '\n';
        return MathFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return UsageFailure;
    }
    if (cfg.output) {
        std::ofstream file(*cfg.output);
        if (!file) {
            err << "error: cannot write '" << *cfg.output << "'\n";
            return UsageFailure;
        }
        file << buffer.str();
    } else {
        out << buffer.str();
    }
    return code;
}

inline int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err) { return run(cfg, std::cin, out, err); }

}  // namespace hgraded::cli
