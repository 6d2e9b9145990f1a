#include "mbessel/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace mbessel {
namespace {

constexpr char kMagic[4] = {'C', 'Y', 'L', 'F'};
constexpr std::size_t kMaxValues = std::size_t{1} << 30;

template <class T>
T to_little(T v) {
    if constexpr (std::endian::native == std::endian::big) {
        unsigned char b[sizeof(T)];
        std::memcpy(b, &v, sizeof(T));
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
        std::memcpy(&v, b, sizeof(T));
    }
    return v;
}

template <class T>
void put(std::ostream& out, T v) {
    v = to_little(v);
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw FieldFormatError("field file truncated");
    return to_little(v);
}

}  // namespace

void write_field(std::ostream& out, const Field& field) {
    if (field.values.size() != field.count()) throw std::invalid_argument("write_field: value count does not match dims");
    out.write(kMagic, sizeof kMagic);
    for (std::uint32_t d : field.dims) put(out, d);
    for (double v : field.values) put(out, v);
    if (!out) throw std::runtime_error("write_field: stream error");
}

Field read_field(std::istream& in) {
    char magic[4];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw FieldFormatError("not a CYLF field file");
    Field field;
    for (auto& d : field.dims) d = get<std::uint32_t>(in);
    const double total = double(field.dims[0]) * field.dims[1] * field.dims[2];
    if (total > double(kMaxValues)) throw FieldFormatError("field dimensions too large");
    field.values.resize(field.count());
    for (auto& v : field.values) v = get<double>(in);
    if (in.peek() != std::char_traits<char>::eof()) throw FieldFormatError("trailing bytes after field data");
    return field;
}

void write_field(const std::filesystem::path& path, const Field& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_field(out, field);
}

Field read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_field(in);
}

}  // namespace mbessel
