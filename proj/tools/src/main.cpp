#include "commands.hpp"

int main(int argc, char** argv) {
    return detumble::cli::run_cli(argc, argv);
}
