#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hgraded/cli.hpp"

int main(int argc, char** argv) {
    using hgraded::cli::CommandConfig;

    CLI::App app{"Exact computations with H-graded supercommutative functions"};
    app.require_subcommand(1);
    CommandConfig cfg;
    std::string group, parity, element, expr, output;

    auto grading = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--group", group, "finite abelian group, e.g. 2x2");
        if (required) opt->required();
        sub->add_option("--parity", parity, "parity bits, one per cyclic factor, e.g. 10");
    };
    auto domain = [&](CLI::App* sub) {
        sub->add_option("--even", cfg.even, "even coordinates, comma separated (x@(1,0) for weighted names)");
        sub->add_option("--odd", cfg.odd, "odd coordinates, comma separated");
    };
    auto common = [&](CLI::App* sub) {
        sub->add_flag("--json", cfg.json, "machine-readable output");
        sub->add_option("--output", output, "write the result to a file");
    };

    auto* table = app.add_subcommand("char-table", "character table of a group");
    grading(table, true);
    common(table);

    auto* dec = app.add_subcommand("decompose", "homogeneous components of a superfunction");
    grading(dec, false);
    domain(dec);
    dec->add_option("--expr", expr, "expression; read from stdin when absent or '-'");
    common(dec);

    auto* act = app.add_subcommand("act", "action of a group element on a superfunction");
    grading(act, true);
    domain(act);
    act->add_option("--element", element, "group element, e.g. 1,0")->required();
    act->add_option("--expr", expr, "expression; read from stdin when absent or '-'");
    common(act);

    auto* lift = app.add_subcommand("lift", "graded lift of a superdomain morphism to the coverings");
    grading(lift, true);
    domain(lift);
    lift->add_option("--target-even", cfg.target_even, "even coordinates of the target");
    lift->add_option("--target-odd", cfg.target_odd, "odd coordinates of the target");
    lift->add_option("--map", cfg.maps, "target coordinate image, e.g. y=1/x (repeatable)");
    common(lift);

    auto* lift_atlas = app.add_subcommand("lift-atlas", "covering atlas of a supermanifold atlas");
    grading(lift_atlas, true);
    std::string atlas_path;
    lift_atlas->add_option("atlas", atlas_path, "atlas JSON file")->required();
    common(lift_atlas);

    auto* cocycle = app.add_subcommand("check-cocycle", "verify the cocycle condition of an atlas");
    cocycle->add_option("atlas", atlas_path, "atlas JSON file")->required();
    common(cocycle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : hgraded::cli::UsageFailure;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (!group.empty()) cfg.group = group;
    if (!parity.empty()) cfg.parity = parity;
    if (!element.empty()) cfg.element = element;
    if (!expr.empty()) cfg.expr = expr;
    if (!output.empty()) cfg.output = output;
    if (!atlas_path.empty()) cfg.atlas_path = atlas_path;
    return hgraded::cli::run(cfg, std::cin, std::cout, std::cerr);
}
