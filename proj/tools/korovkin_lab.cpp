#include "korovkin/cli.hpp"

int main(int argc, char** argv) { return korovkin::cli::run(argc, argv); }
