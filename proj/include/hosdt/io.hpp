#ifndef HOSDT_IO_HPP_
#define HOSDT_IO_HPP_

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "hosdt/eval.hpp"
#include "hosdt/grid.hpp"

namespace hosdt {

// HOSDT1 volume file:
//
//   HOSDT1\n
//   ndim <d>\n
//   size <n1> ... <nd>\n
//   spacing <h1> ... <hd>\n
//   dtype <u8|f64>\n
//   data\n
//   <payload>
//
// The payload is C order (last axis fastest): u8 is one byte per voxel
// (0 background, 1 foreground), f64 is 8 bytes little-endian IEEE-754 per
// voxel. Spacing uses the shortest decimal that round-trips.
using Volume = std::variant<BinaryGrid, ScalarField>;

void write_volume(const std::filesystem::path& path, const BinaryGrid& grid);
void write_volume(const std::filesystem::path& path, const ScalarField& field);
void write_volume(const std::filesystem::path& path, const Volume& volume);

Volume read_volume(const std::filesystem::path& path);

// Same format against in-memory bytes.
std::string encode_volume(const Volume& volume);
Volume decode_volume(const std::string& bytes);

// Shortest round-trip decimal representation.
std::string format_decimal(double value);

// Header row h,l1,order_l1,linf,order_linf,corrected,iterations,band followed
// by one row per record. Absent orders are empty fields.
void write_study_csv(const std::filesystem::path& path,
                     const std::vector<StudyRecord>& records);
std::string format_study_csv(const std::vector<StudyRecord>& records);
std::vector<StudyRecord> parse_study_csv(const std::string& text);

}  // namespace hosdt

#endif  // HOSDT_IO_HPP_
