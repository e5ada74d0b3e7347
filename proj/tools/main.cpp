#include "cli.hpp"

int main(int argc, char** argv) { return mcarma::cli::main_entry(argc, argv); }
