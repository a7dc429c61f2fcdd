#include "poro/cli.hpp"

int main(int argc, char** argv) { return poro::run_cli(argc, argv); }
