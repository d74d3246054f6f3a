#include "ym/io.h"

int main(int argc, char **argv) { return ym::run_cli(argc, argv); }
