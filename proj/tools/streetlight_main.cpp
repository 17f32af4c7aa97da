#include "streetlight/cli.hpp"

int main(int argc, char** argv) {
    return streetlight::cli::run(argc, argv);
}
