#include "cli_app.hpp"

int main(int argc, char** argv) { return chyp::cli::run(argc, argv); }
