// Runs every acceptance criterion and prints one line per criterion.
// Exit status is non-zero if any criterion fails or exceeds its budget.

#include "equihom/acceptance.hpp"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

int main(int argc, char **argv) {
    using namespace equihom;
    const std::string suite = argc > 1 ? argv[1] : "all";
    // a fresh directory, so the t check performs the search and writes the file
    auto dir = std::filesystem::temp_directory_path() /
               ("equihom-acceptance-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    AcceptanceOptions opt;
    opt.t_dir = dir;

    std::size_t failed = 0, total = 0;
    try {
        run_acceptance(suite, opt, [&](const CriterionResult &r) {
            ++total;
            failed += !r.ok();
            std::cout << format_result(r) << std::endl;
        });
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        std::filesystem::remove_all(dir);
        return 2;
    }
    std::filesystem::remove_all(dir);
    std::cout << (total - failed) << "/" << total << " criteria passed\n";
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
