#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tk/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"transcend-kit: transcendental extensions and generic hyperplane members"};
    tk::CliOptions opt;
    app.add_option("command", opt.command,
                   "generic-member | member-at | chart | specialize | check-smooth | "
                   "check-regular | survey | mixed-witness | verify-paper")
        ->required();
    app.add_option("--input", opt.input, "script file with ring/poly/morphism declarations");
    app.add_option("--chart", opt.chart, "chart index (default 0)");
    app.add_option("--prime", opt.prime, "residue characteristic to check against");
    app.add_option("--field-size", opt.field_size, "survey coefficient field F_q, q a prime power");
    app.add_flag("--assert", opt.assert_mode, "exit 1 on a negative verdict");
    app.add_option("--max-degree", opt.max_degree, "degree guard ceiling");
    CLI11_PARSE(app, argc, argv);
    return tk::run_cli(opt, std::cout, std::cerr);
}
