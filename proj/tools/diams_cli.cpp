#include <diams/cli.hpp>

int main(int argc, char **argv) { return diams::cli::run_cli(argc, argv); }
