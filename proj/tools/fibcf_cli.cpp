#include "fibcf/cli.hpp"

int main(int argc, char** argv) { return fibcf::cli::main_entry(argc, argv); }
