// Writes the synthetic run bundle into the directory given on the command line.

#include <cstdio>
#include <exception>

#include "bundle.hpp"

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::fprintf(stderr, "usage: make_bundle <dir>\n");
        return 2;
    }
    try {
        for (const auto& p : bundle::write_bundle(argv[1])) std::printf("%s\n", p.string().c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "make_bundle: %s\n", e.what());
        return 1;
    }
    return 0;
}
