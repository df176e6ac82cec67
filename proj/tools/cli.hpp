// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef PATCHRAD_CLI_HPP
#define PATCHRAD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace patchrad::cli
{
    inline constexpr int exit_ok = 0;
    inline constexpr int exit_runtime_error = 1;
    inline constexpr int exit_usage_error = 2;

    // args excludes the program name
    int parse_and_dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
}

#endif
