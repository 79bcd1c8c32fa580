// kdvlab: the end-to-end verification suite. Eleven numbered criteria, each
// with tolerances pinned in the implementation; a criterion either passes or
// fails with a one-line diagnostic. The CLI `all` subcommand and the
// acceptance test binary both run through this.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kdvlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AcceptanceOptions {
    std::uint64_t seed = 0x5eed0d15ULL;  // canonical suite seed; CLI may override
    int threads = 1;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace kdvlab
