// Small file and serialization helpers shared by the dump/load routines.
#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace pipconcat {

// Opens for reading; missing file -> "file-not-found".
std::ifstream open_input(const std::string& path);
std::ifstream open_input_binary(const std::string& path);
// Opens for writing; failure -> "io-error".
std::ofstream open_output(const std::string& path);
std::ofstream open_output_binary(const std::string& path);

// Explicit little-endian scalar serialization (independent of host order).
void put_u64_le(std::ostream& os, std::uint64_t v);
void put_f64_le(std::ostream& os, double v);
std::uint64_t get_u64_le(std::istream& is, const std::string& what);
double get_f64_le(std::istream& is, const std::string& what);

// Shortest text form that round-trips an IEEE-754 double (17 significant
// digits).
std::string format_g17(double v);

// Splits on a single delimiter without merging consecutive delimiters.
std::vector<std::string> split_fields(const std::string& line, char delim);

}  // namespace pipconcat
