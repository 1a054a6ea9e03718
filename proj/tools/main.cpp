#include "cli_main.hpp"

int main(int argc, char** argv) { return dynsched::cli_main(argc, argv); }
