#include <CLI11.hpp>

#include <cstdio>
#include <exception>

#include "viewforge/util/error.hpp"

int main(int argc, char** argv) {
    CLI::App app{"viewforge: view planning and simulated acquisition toolkit"};
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "viewforge: error: %s\n", e.what());
        return 1;
    }
    return 0;
}
