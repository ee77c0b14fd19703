#include "infnc/cli.hpp"

int main(int argc, char** argv) { return infnc::cli::run({argv + 1, argv + argc}); }
