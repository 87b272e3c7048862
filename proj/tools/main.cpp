#include "cli_app.hpp"

int main(int argc, char** argv) { return fracseries::cli::run(argc, argv); }
