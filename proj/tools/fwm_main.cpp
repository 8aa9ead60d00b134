#include "fwm/cli.hpp"

int main(int argc, char** argv) { return fwm::cli::cli_main(argc, argv); }
