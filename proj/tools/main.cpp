#include "risklab/cli.hpp"

int main(int argc, char** argv) { return risklab::cli::run(argc, argv); }
