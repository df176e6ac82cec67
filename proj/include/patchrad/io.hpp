// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// CSV import / export of meshes and embedded current matrices.
//
// Mesh:     header "sx,sy,sz,area,nx,ny,nz,element_index", one row per patch, SI units.
// Currents: header "re_1,im_1,...,re_N,im_N", 3K rows in mesh patch order (x, y, z per patch).
// Numbers are written with 17 significant digits so files round-trip exactly.

#ifndef PATCHRAD_IO_HPP
#define PATCHRAD_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "patchrad/geometry.hpp"
#include "patchrad/radiation.hpp"

namespace patchrad
{
    std::string format_number(double value);
    double parse_number(std::string_view text, const std::string &context);
    std::vector<std::string_view> split_csv_line(std::string_view line);

    void write_mesh_csv(const SurfaceMesh<double> &mesh, const std::filesystem::path &path);

    // Normals must be unit within 1e-9 and are renormalized; the wavelength is not stored in the file.
    SurfaceMesh<double> read_mesh_csv(const std::filesystem::path &path, double wavelength);

    void write_currents_csv(const EmbeddedCurrentMatrix<double> &M, const std::filesystem::path &path);
    EmbeddedCurrentMatrix<double> read_currents_csv(const std::filesystem::path &path);
}

#endif
