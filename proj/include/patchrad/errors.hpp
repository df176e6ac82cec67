// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef PATCHRAD_ERRORS_HPP
#define PATCHRAD_ERRORS_HPP

#include <stdexcept>

namespace patchrad
{
    struct InvalidArgument : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Green's function evaluated at (or numerically at) its source point
    struct SingularityError : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    // Observation point closer than the guard distance to a source sample
    struct ProximityError : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    // Re{M_(k)} is identically zero, no current direction can be defined
    struct DegenerateCurrentError : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    struct StepTooLargeError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    struct OracleFailure : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // Relative error requested against a zero reference field
    struct UndefinedMetricError : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    struct IoError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };
}

#endif
