#include <iostream>

#include "kgws/app.hpp"

int main(int argc, char** argv)
{
    return kgws::app::run_cli(argc, argv, std::cout, std::cerr);
}
