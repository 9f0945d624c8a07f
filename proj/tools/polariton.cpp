#include "polariton/cli.hpp"

int main(int argc, char** argv) { return polariton::cli::run_cli(argc, argv); }
