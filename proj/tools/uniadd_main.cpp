#include "uniadd/cli.hpp"

int main(int argc, char** argv) { return uniadd::cli_run(argc, argv); }
