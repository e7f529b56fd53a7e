#include "leleec/cli_io.hpp"

int main(int argc, char** argv) { return leleec::run_cli(argc, argv); }
