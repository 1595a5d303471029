#include "kpdm_cli/app.hpp"

int main(int argc, char** argv) {
    return kpdm::cli::main_entry(argc, argv);
}
