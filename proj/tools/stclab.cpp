#include "stclab/cli.hpp"

int main(int argc, char** argv) { return stclab::cli::run(argc, argv); }
