#include "mattekit/cli/driver.hpp"

int main(int argc, char** argv) { return mattekit::cli::run_cli(argc, argv); }
