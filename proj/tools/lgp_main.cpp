// Thin executable wrapper around the library's command-line entry point.
#include "lgp/cli.hpp"

int main(int argc, char** argv) { return lgp::run(argc, argv); }
