#include "scalefree/cli.hpp"

int main(int argc, char** argv) { return scalefree::cli::run_cli(argc, argv); }
