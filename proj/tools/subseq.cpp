#include "subseq/cli.hpp"

int main(int argc, char** argv) { return subseq::cli::run_cli(argc, argv); }
