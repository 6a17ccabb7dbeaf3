#include "commands.hpp"

int main(int argc, char** argv) { return svmix::cli::run_cli(argc, argv); }
