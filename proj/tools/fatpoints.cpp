#include "fatpoints/cli.hpp"

int main(int argc, char** argv) { return fatpoints::cli::main_entry(argc, argv); }
