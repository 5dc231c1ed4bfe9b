#include "cli.hpp"

int main(int argc, char** argv) { return graphlim::cli::run(argc, argv); }
