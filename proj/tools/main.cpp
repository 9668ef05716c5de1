#include "cli.hpp"

int main(int argc, char** argv) { return hdecay::cli::run(argc, argv); }
