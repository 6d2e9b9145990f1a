#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace mbessel {

// Binary field files: the bytes "CYLF", three little-endian uint32 dimensions
// (radial, theta, z), then little-endian float64 values, radial index fastest.

class FieldFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Field {
    std::array<std::uint32_t, 3> dims{};
    std::vector<double> values;

    [[nodiscard]] std::size_t count() const { return std::size_t{dims[0]} * dims[1] * dims[2]; }
};

void write_field(std::ostream& out, const Field& field);
Field read_field(std::istream& in);

void write_field(const std::filesystem::path& path, const Field& field);
Field read_field(const std::filesystem::path& path);

}  // namespace mbessel
