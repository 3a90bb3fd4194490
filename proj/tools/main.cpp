#include "entropy_gap/cli.hpp"

int main(int argc, char** argv) { return entropy_gap::cli::run(argc, argv); }
