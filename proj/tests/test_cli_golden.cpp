// Golden-file driver for the CLI.  Compares stdout bytes and exit codes
// against committed expectations; --regen rewrites them.

#include <cstring>
#include <iostream>

#include "golden_runner.hpp"

int main(int argc, char** argv) {
    bool regen = argc > 1 && std::strcmp(argv[1], "--regen") == 0;
    int failures = fgl::testing::run_golden_corpus(FGL_CLI_PATH, FGL_GOLDEN_DIR, regen, true);
    if (regen) {
        std::cout << "expected outputs regenerated\n";
        return failures;
    }
    if (failures == 0) {
        std::cout << "all golden cases passed\n";
        return 0;
    }
    std::cout << failures << " golden cases failed\n";
    return 1;
}
