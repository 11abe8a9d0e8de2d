#include "displab/tools/cli.hpp"

int main(int argc, char** argv) { return displab::cli::run(argc, argv); }
