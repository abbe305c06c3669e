#include "cli.hpp"

int main(int argc, char** argv) { return idnc::cli::main_entry(argc, argv); }
