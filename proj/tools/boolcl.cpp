#include "boolcl/cli.hpp"

int main(int argc, char** argv) { return boolcl::cli::run(argc, argv); }
