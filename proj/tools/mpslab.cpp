#include "mpslab/cli.hpp"

int main(int argc, char** argv) { return mpslab::cli::run(argc, argv); }
