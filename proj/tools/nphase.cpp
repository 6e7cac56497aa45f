#include "nphase/cli.hpp"

int main(int argc, char** argv) { return nphase::run_cli(argc, argv); }
