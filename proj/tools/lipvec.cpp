#include "cli.hpp"

int main(int argc, char** argv) { return lipvec::cli::run(argc, argv); }
