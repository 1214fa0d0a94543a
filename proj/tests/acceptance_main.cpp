// Acceptance suite: runs every acceptance check and prints one line per
// criterion. Exit status is nonzero if any check is refuted.
#include <cstring>
#include <iostream>

#include "lamina/verify.hpp"

int main(int argc, char** argv) {
    bool serial = false;
    for (int i = 1; i < argc; ++i)
        if (!std::strcmp(argv[i], "--serial")) serial = true;
    lamina::verify::VerificationReport rep = lamina::verify::runAcceptance(16, serial);
    std::cout << rep.toText();
    return rep.allVerified() ? 0 : 1;
}
