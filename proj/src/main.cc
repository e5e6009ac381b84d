#include "bnls/cli.hpp"

int main(int argc, char** argv) { return bnls::run_cli(argc, argv); }
