#include "dirilab/cli.hpp"

int main(int argc, char** argv) { return dirilab::cli_main(argc, argv); }
