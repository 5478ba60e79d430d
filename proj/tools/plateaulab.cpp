#include "plateaulab/runner.hpp"

int main(int argc, char** argv) { return plateaulab::cli_main(argc, argv); }
