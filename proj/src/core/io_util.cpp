#include "core/io_util.hpp"

#include <cstdio>
#include <cstring>
#include <limits>

#include "core/common.hpp"

static_assert(std::numeric_limits<double>::is_iec559,
              "IEEE-754 doubles required by the binary signal format");

namespace pipconcat {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::kFileNotFound, path);
  return in;
}

std::ifstream open_input_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::kFileNotFound, path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::kIoError, "cannot write " + path);
  return out;
}

std::ofstream open_output_binary(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::kIoError, "cannot write " + path);
  return out;
}

void put_u64_le(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(b, 8);
}

void put_f64_le(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64_le(os, bits);
}

std::uint64_t get_u64_le(std::istream& is, const std::string& what) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  require(is.gcount() == 8, ErrorCode::kParseError, "truncated " + what);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double get_f64_le(std::istream& is, const std::string& what) {
  const std::uint64_t bits = get_u64_le(is, what);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

std::string format_g17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace pipconcat
