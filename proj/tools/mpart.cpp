#include "mpart/cli.hpp"

int main(int argc, char** argv) { return mpart::cli::run(argc, argv); }
