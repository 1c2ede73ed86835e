#include "h31cert/cli.hpp"

int main(int argc, char** argv) { return h31cert::cli::run(argc, argv); }
