#include <dmxyz/cli.hpp>

int main(int argc, char** argv) { return dmxyz::cli::run(argc, argv); }
