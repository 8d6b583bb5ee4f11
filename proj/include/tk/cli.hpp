#pragma once

#include <iosfwd>
#include <string>

namespace tk {

struct CliOptions {
    std::string command;     // generic-member | member-at | chart | specialize |
                             // check-smooth | check-regular | survey | mixed-witness |
                             // verify-paper
    std::string input;       // script file (empty for verify-paper)
    int chart = 0;
    long prime = 0;          // 0 = unset
    long field_size = 0;     // 0 = use the declared field
    bool assert_mode = false;
    long max_degree = 0;     // 0 = keep the ambient default
};

// runs one command against the script in opt.input; returns the process exit
// code: 0 success, 1 negative verdict under --assert (or failed verify-paper
// examples), 2 diagnostics
int run_cli(const CliOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace tk
