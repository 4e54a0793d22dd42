#include "polarcvx/cli.hpp"

int main(int argc, char** argv) { return polarcvx::cli::run(argc, argv); }
