#ifndef SUBGEO_IO_HPP
#define SUBGEO_IO_HPP

#include <iosfwd>
#include <string>

#include "subgeo/geometry.hpp"

namespace subgeo {

enum class PointFormat { text, binary };

/// Text: header `GPTS 1 <n> <d>`, then n lines of d numbers separated by
/// single spaces, written with 17 significant digits.
void write_points_text(std::ostream& os, const PointSet& P);
/// Binary: `GPTS`, version byte 1, u64 n, u32 d, then n*d f64, all little-endian.
void write_points_binary(std::ostream& os, const PointSet& P);

/// Throw FormatError naming the line (text) or byte offset (binary).
PointSet read_points_text(std::istream& is);
PointSet read_points_binary(std::istream& is);

/// Detects the format from the byte after the magic.
PointSet read_points(const std::string& path);
void write_points(const std::string& path, const PointSet& P, PointFormat format);

}  // namespace subgeo

#endif  // SUBGEO_IO_HPP
