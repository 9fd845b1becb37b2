// Runs the acceptance criteria on the bundled corpus and prints one line per
// criterion. Exit status 0 iff every criterion passes.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "chz/acceptance.hpp"
#include "chz/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria on the bundled corpus"};
    chz::AcceptanceOptions opts;
    std::string out;
    app.add_option("--seed", opts.seed, "RNG seed");
    app.add_option("--out", out, "directory for the CSV tables");
    CLI11_PARSE(app, argc, argv);

    const chz::AcceptanceRun run = chz::run_acceptance(opts);
    for (const auto& c : run.criteria) std::cout << c.line() << "\n";
    if (!out.empty()) {
        std::filesystem::create_directories(out);
        for (const auto& [name, text] : run.csv) chz::write_text((std::filesystem::path(out) / name).string(), text);
    }
    std::cout << (run.pass() ? "ALL PASS" : "FAILED") << "\n";
    return run.pass() ? 0 : 1;
}
