#include "topomode/cli_app.hpp"

int main(int argc, char** argv) { return topomode::cli::run(argc, argv); }
