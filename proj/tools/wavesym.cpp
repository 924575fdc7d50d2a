#include "wavesym/cli.hpp"

int main(int argc, char** argv) { return wavesym::cli::run(argc, argv); }
