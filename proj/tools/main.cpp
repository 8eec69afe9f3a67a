#include "fsum/cli.hpp"

int main(int argc, char** argv) { return fsum::cli_main(argc, argv); }
