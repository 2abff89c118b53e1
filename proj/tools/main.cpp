#include "sonnetssl/cli/app.hpp"

int main(int argc, char** argv) { return sonnetssl::cli::run(argc, argv); }
