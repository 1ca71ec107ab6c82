#include "thermoq/cli.hpp"

int main(int argc, char** argv) {
    return thermoq::run_cli(argc, argv);
}
