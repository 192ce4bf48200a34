#include "thetanull/cli_io.hpp"

int main(int argc, char** argv) { return thetanull::run(argc, argv); }
