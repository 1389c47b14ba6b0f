#include "cli.hpp"

int main(int argc, char** argv) { return operlab::cli::run_cli(argc, argv); }
