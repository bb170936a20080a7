#include "lnhom/cli.hpp"

int main(int argc, char** argv) { return lnhom::cli::run(argc, argv); }
