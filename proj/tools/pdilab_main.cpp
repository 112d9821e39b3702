#include "pdilab/cli.hpp"

int main(int argc, char** argv) { return pdilab::cli::run(argc, argv); }
