#include "aapdhg/cli.hpp"

int main(int argc, char** argv) { return aapdhg::run(argc, argv); }
