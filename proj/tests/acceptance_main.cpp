// Acceptance gate: runs the eleven criteria and prints one verdict line per
// criterion. Exit status 0 iff every criterion passes.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "kdvlab/acceptance.hpp"

int main(int argc, char** argv) {
    kdvlab::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            opt.seed = std::strtoull(argv[++i], nullptr, 0);
        else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
            opt.threads = int(std::strtol(argv[++i], nullptr, 0));
        else {
            std::fprintf(stderr, "usage: %s [--seed S] [--threads T]\n", argv[0]);
            return 2;
        }
    }

    auto results = kdvlab::run_acceptance(opt);
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s  C%-2d %-26s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%d/%d criteria passed\n", int(results.size()) - failed, int(results.size()));
    return failed == 0 ? 0 : 1;
}
