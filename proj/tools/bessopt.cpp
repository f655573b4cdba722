/*
 * bessopt.cpp
 */

#include "bess/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
  return bess::cli_main(argc, argv, std::cout, std::cerr);
}
