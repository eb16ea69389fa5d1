#include "hyperell/cli.hpp"

int main(int argc, char** argv) { return hyperell::cli::run(argc, argv); }
