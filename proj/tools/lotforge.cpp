#include "lotforge/cli.hpp"

int main(int argc, char** argv) { return lotforge::cli_main(argc, argv); }
