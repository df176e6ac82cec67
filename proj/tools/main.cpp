// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include <iostream>

#include "cli.hpp"

int main(int argc, char **argv)
{
    return patchrad::cli::parse_and_dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
