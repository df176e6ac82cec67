// SPDX-License-Identifier: Apache-2.0
//
// patchrad: patch-averaged radiation operators for near-field array modelling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "patchrad/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace patchrad
{
    std::string format_number(double value)
    {
        char buf[40];
        const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
        return std::string(buf, res.ptr);
    }

    double parse_number(std::string_view text, const std::string &context)
    {
        while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
            text.remove_prefix(1);
        while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
            text.remove_suffix(1);
        if (!text.empty() && text.front() == '+')
            text.remove_prefix(1);
        double value = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size())
            throw IoError(context + ": cannot parse '" + std::string(text) + "' as a number");
        return value;
    }

    std::vector<std::string_view> split_csv_line(std::string_view line)
    {
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true)
        {
            const std::size_t comma = line.find(',', start);
            out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        return out;
    }

    namespace
    {
        std::ofstream open_for_writing(const std::filesystem::path &path)
        {
            std::ofstream out(path, std::ios::binary);
            if (!out)
                throw IoError("cannot open '" + path.string() + "' for writing");
            return out;
        }

        std::ifstream open_for_reading(const std::filesystem::path &path)
        {
            std::ifstream in(path, std::ios::binary);
            if (!in)
                throw IoError("cannot open '" + path.string() + "' for reading");
            return in;
        }

        std::string trimmed(std::string_view s)
        {
            while (!s.empty() && (s.back() == '\r' || s.back() == ' '))
                s.remove_suffix(1);
            return std::string(s);
        }
    }

    void write_mesh_csv(const SurfaceMesh<double> &mesh, const std::filesystem::path &path)
    {
        auto out = open_for_writing(path);
        out << "sx,sy,sz,area,nx,ny,nz,element_index\n";
        for (const auto &p : mesh.patches)
        {
            out << format_number(p.centroid.x()) << ',' << format_number(p.centroid.y()) << ','
                << format_number(p.centroid.z()) << ',' << format_number(p.area) << ','
                << format_number(p.normal.x()) << ',' << format_number(p.normal.y()) << ','
                << format_number(p.normal.z()) << ',' << p.element << '\n';
        }
        if (!out)
            throw IoError("write failed for '" + path.string() + "'");
    }

    SurfaceMesh<double> read_mesh_csv(const std::filesystem::path &path, double wavelength)
    {
        auto in = open_for_reading(path);
        std::string line;
        if (!std::getline(in, line) || trimmed(line) != "sx,sy,sz,area,nx,ny,nz,element_index")
            throw IoError(path.string() + ": missing or malformed mesh header");

        SurfaceMesh<double> mesh;
        mesh.wavelength = wavelength;
        std::size_t row = 1;
        while (std::getline(in, line))
        {
            ++row;
            if (trimmed(line).empty())
                continue;
            const auto cols = split_csv_line(line);
            const std::string ctx = path.string() + ":" + std::to_string(row);
            if (cols.size() != 8)
                throw IoError(ctx + ": expected 8 columns, found " + std::to_string(cols.size()));
            double v[7];
            for (int i = 0; i < 7; ++i)
                v[i] = parse_number(cols[std::size_t(i)], ctx);
            const double elem = parse_number(cols[7], ctx);
            if (elem < 0 || elem != std::floor(elem))
                throw IoError(ctx + ": element_index must be a non-negative integer");
            Vec3<double> n(v[4], v[5], v[6]);
            if (std::abs(n.norm() - 1.0) > 1e-9)
                throw IoError(ctx + ": normal is not a unit vector");
            n.normalize();
            try
            {
                mesh.patches.emplace_back(Vec3<double>(v[0], v[1], v[2]), v[3], n, std::size_t(elem));
            }
            catch (const InvalidArgument &e)
            {
                throw IoError(ctx + ": " + e.what());
            }
        }
        if (mesh.patches.empty())
            throw IoError(path.string() + ": mesh has no patches");
        return mesh;
    }

    void write_currents_csv(const EmbeddedCurrentMatrix<double> &M, const std::filesystem::path &path)
    {
        auto out = open_for_writing(path);
        const auto &m = M.matrix();
        for (Eigen::Index n = 0; n < m.cols(); ++n)
            out << (n ? "," : "") << "re_" << n + 1 << ",im_" << n + 1;
        out << '\n';
        for (Eigen::Index i = 0; i < m.rows(); ++i)
        {
            for (Eigen::Index n = 0; n < m.cols(); ++n)
                out << (n ? "," : "") << format_number(m(i, n).real()) << ',' << format_number(m(i, n).imag());
            out << '\n';
        }
        if (!out)
            throw IoError("write failed for '" + path.string() + "'");
    }

    EmbeddedCurrentMatrix<double> read_currents_csv(const std::filesystem::path &path)
    {
        auto in = open_for_reading(path);
        std::string line;
        if (!std::getline(in, line))
            throw IoError(path.string() + ": empty file");
        const auto header = split_csv_line(line);
        if (header.size() < 2 || header.size() % 2 != 0)
            throw IoError(path.string() + ": header must hold re_n,im_n pairs");
        const std::size_t ports = header.size() / 2;
        for (std::size_t n = 0; n < ports; ++n)
        {
            if (trimmed(header[2 * n]) != "re_" + std::to_string(n + 1) ||
                trimmed(header[2 * n + 1]) != "im_" + std::to_string(n + 1))
                throw IoError(path.string() + ": unexpected header column '" + std::string(header[2 * n]) + "'");
        }

        std::vector<std::complex<double>> values;
        std::size_t rows = 0, lineno = 1;
        while (std::getline(in, line))
        {
            ++lineno;
            if (trimmed(line).empty())
                continue;
            const auto cols = split_csv_line(line);
            const std::string ctx = path.string() + ":" + std::to_string(lineno);
            if (cols.size() != 2 * ports)
                throw IoError(ctx + ": expected " + std::to_string(2 * ports) + " columns");
            for (std::size_t n = 0; n < ports; ++n)
                values.emplace_back(parse_number(cols[2 * n], ctx), parse_number(cols[2 * n + 1], ctx));
            ++rows;
        }
        if (rows == 0 || rows % 3 != 0)
            throw IoError(path.string() + ": row count must be a positive multiple of 3, found " + std::to_string(rows));

        CMatX<double> m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(ports));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t n = 0; n < ports; ++n)
                m(Eigen::Index(i), Eigen::Index(n)) = values[i * ports + n];
        try
        {
            return EmbeddedCurrentMatrix<double>(std::move(m));
        }
        catch (const InvalidArgument &e)
        {
            throw IoError(path.string() + ": " + e.what());
        }
    }
}
