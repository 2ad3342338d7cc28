#include "randset/cli.hpp"

int main(int argc, char** argv)
{
    return randset::cli::run(argc, argv);
}
