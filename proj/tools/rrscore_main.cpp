#include "rrscore/cli.hpp"

int main(int argc, char** argv) { return rrscore::cli::run(argc, argv); }
