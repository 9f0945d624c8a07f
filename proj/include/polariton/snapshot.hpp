#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "polariton/error.hpp"
#include "polariton/grid.hpp"
#include "polariton/state.hpp"

// EPCS snapshot layout, version 1. All integers and floats little-endian.
//
//   offset  size  content
//   0       4     magic "EPCS"
//   4       4     u32 format version (1)
//   8       4     u32 ndim (1 or 2)
//   12      4     u32 nx
//   16      4     u32 ny (1 for 1D)
//   20      8     f64 dx (um)
//   28      8     f64 dy (um, 0 for 1D)
//   36      4     u32 model tag (0 cnrp1, 1 cnrp1_spin, 2 cnrp2, 3 hinrp)
//   40      4     u32 field count
//   44      8     f64 t (ps)
//   52            fields, in the model's member order, each:
//                   u8  kind (0 complex, 1 real)
//                   u32 name length, then that many name bytes (ASCII)
//                   nx*ny values, row-major with x fastest:
//                     complex: f64 re, f64 im per node; real: f64 per node
//
// The x edges are Dirichlet and y wraps periodically; boundary tags are not
// stored.

namespace polariton {

inline constexpr char kSnapshotMagic[4] = {'E', 'P', 'C', 'S'};
inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderSize = 52;

enum class FieldKind : std::uint8_t { complex = 0, real = 1 };

namespace detail {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put_le(std::string& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  template <class T>
  T get(const char* what) {
    need(sizeof(T), what);
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, data_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
  }

  std::string_view take(std::size_t n, const char* what) {
    need(n, what);
    auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  [[nodiscard]] std::size_t remaining() const noexcept { return data_.size() - pos_; }

 private:
  void need(std::size_t n, const char* what) const {
    if (data_.size() - pos_ < n) {
      throw SnapshotError(SnapshotError::Kind::truncated,
                          std::string("snapshot truncated while reading ") + what);
    }
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Serialise a state to EPCS bytes.
inline std::string encode_snapshot(const SimState& s) {
  const Grid& g = s.grid();
  std::string out;
  out.append(kSnapshotMagic, 4);
  detail::put_le<std::uint32_t>(out, kSnapshotVersion);
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.ndim));
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.nx));
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.ny));
  detail::put_le<double>(out, g.dx);
  detail::put_le<double>(out, g.dy);
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.tag()));
  std::visit(
      [&](const auto& fields) {
        using Fields = std::decay_t<decltype(fields)>;
        detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(Fields::names.size()));
        detail::put_le<double>(out, s.t);
        std::size_t slot = 0;
        for_each_member(
            [&](const auto& f) {
              using T = typename std::decay_t<decltype(f)>::value_type;
              const std::string_view name = Fields::names[slot++];
              if (!(f.grid() == g)) {
                throw SnapshotError(SnapshotError::Kind::malformed,
                                    "snapshot: fields do not share one grid");
              }
              detail::put_le<std::uint8_t>(
                  out, static_cast<std::uint8_t>(std::is_same_v<T, complex> ? FieldKind::complex
                                                                            : FieldKind::real));
              detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
              out.append(name);
              for (const T& v : f.values()) {
                if constexpr (std::is_same_v<T, complex>) {
                  detail::put_le<double>(out, v.real());
                  detail::put_le<double>(out, v.imag());
                } else {
                  detail::put_le<double>(out, v);
                }
              }
            },
            fields);
      },
      s.fields);
  return out;
}

/// Parse EPCS bytes back into a state. The grid is rebuilt from the stored
/// spacing with the standard boundary tags.
inline SimState decode_snapshot(std::string_view bytes) {
  detail::ByteReader in(bytes);
  const auto magic = in.take(4, "magic");
  if (magic != std::string_view(kSnapshotMagic, 4)) {
    throw SnapshotError(SnapshotError::Kind::bad_magic,
                        "snapshot: bad magic '" + std::string(magic) + "'");
  }
  const auto version = in.get<std::uint32_t>("version");
  if (version != kSnapshotVersion) {
    throw SnapshotError(SnapshotError::Kind::unsupported_version,
                        "snapshot: unsupported format version " + std::to_string(version));
  }
  Grid g;
  const auto ndim = in.get<std::uint32_t>("ndim");
  g.nx = in.get<std::uint32_t>("nx");
  g.ny = in.get<std::uint32_t>("ny");
  g.dx = in.get<double>("dx");
  g.dy = in.get<double>("dy");
  if ((ndim != 1 && ndim != 2) || g.nx < 3 || (ndim == 1 && g.ny != 1) ||
      (ndim == 2 && g.ny < 3)) {
    throw SnapshotError(SnapshotError::Kind::malformed, "snapshot: invalid grid header");
  }
  g.ndim = static_cast<int>(ndim);
  const auto tag_raw = in.get<std::uint32_t>("model tag");
  if (tag_raw > static_cast<std::uint32_t>(ModelTag::hinrp)) {
    throw SnapshotError(SnapshotError::Kind::malformed,
                        "snapshot: unknown model tag " + std::to_string(tag_raw));
  }
  const auto tag = static_cast<ModelTag>(tag_raw);
  const auto count = in.get<std::uint32_t>("field count");
  const double t = in.get<double>("time");

  auto read_fields = [&](auto fields) -> SimState {
    using Fields = decltype(fields);
    if (count != Fields::names.size()) {
      throw SnapshotError(SnapshotError::Kind::malformed,
                          "snapshot: " + std::string(to_string(tag)) + " expects " +
                              std::to_string(Fields::names.size()) + " fields, header says " +
                              std::to_string(count));
    }
    std::size_t slot = 0;
    for_each_member(
        [&](auto& f) {
          using T = typename std::decay_t<decltype(f)>::value_type;
          const std::string_view expected = Fields::names[slot++];
          const auto kind = in.get<std::uint8_t>("field kind");
          const auto want = std::is_same_v<T, complex> ? FieldKind::complex : FieldKind::real;
          if (kind != static_cast<std::uint8_t>(want)) {
            throw SnapshotError(SnapshotError::Kind::malformed,
                                "snapshot: wrong kind for field " + std::string(expected));
          }
          const auto len = in.get<std::uint32_t>("field name length");
          const auto name = in.take(len, "field name");
          if (name != expected) {
            throw SnapshotError(SnapshotError::Kind::malformed,
                                "snapshot: expected field '" + std::string(expected) +
                                    "', found '" + std::string(name) + "'");
          }
          std::vector<T> values(g.size());
          for (auto& v : values) {
            if constexpr (std::is_same_v<T, complex>) {
              const double re = in.get<double>("field values");
              const double im = in.get<double>("field values");
              v = complex(re, im);
            } else {
              v = in.get<double>("field values");
            }
          }
          f = Field<T>(g, std::move(values));
        },
        fields);
    if (in.remaining() != 0) {
      throw SnapshotError(SnapshotError::Kind::malformed,
                          "snapshot: " + std::to_string(in.remaining()) + " trailing bytes");
    }
    return SimState{std::move(fields), t};
  };

  switch (tag) {
    case ModelTag::cnrp1: return read_fields(Cnrp1Fields{});
    case ModelTag::cnrp1_spin: return read_fields(Cnrp1SpinFields{});
    case ModelTag::cnrp2: return read_fields(Cnrp2Fields{});
    case ModelTag::hinrp: return read_fields(HinrpFields{});
  }
  throw SnapshotError(SnapshotError::Kind::malformed, "snapshot: unknown model tag");
}

inline std::size_t write_snapshot(const SimState& s, std::ostream& sink) {
  const std::string bytes = encode_snapshot(s);
  sink.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!sink) throw SnapshotError(SnapshotError::Kind::io, "snapshot: write failed");
  return bytes.size();
}

inline SimState read_snapshot(std::istream& source) {
  std::ostringstream buf;
  buf << source.rdbuf();
  return decode_snapshot(buf.str());
}

inline std::size_t write_snapshot_file(const SimState& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError(SnapshotError::Kind::io, "cannot open " + path.string());
  return write_snapshot(s, out);
}

inline SimState read_snapshot_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError(SnapshotError::Kind::io, "cannot open " + path.string());
  return read_snapshot(in);
}

/// In-memory series, in emission order.
struct SnapshotSeries {
  std::vector<SimState> snapshots;

  void operator()(const SimState& s) { snapshots.push_back(s); }
};

/// Writes snap_NNNNNN.epcs files (NNNNNN = snapshot ordinal) into a directory.
class SnapshotDirectory {
 public:
  explicit SnapshotDirectory(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  void operator()(const SimState& s) {
    write_snapshot_file(s, dir_ / file_name(count_));
    ++count_;
  }

  [[nodiscard]] std::size_t count() const noexcept { return count_; }
  [[nodiscard]] const std::filesystem::path& path() const noexcept { return dir_; }

  static std::string file_name(std::size_t ordinal) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%06zu.epcs", ordinal);
    return buf;
  }

 private:
  std::filesystem::path dir_;
  std::size_t count_ = 0;
};

/// Snapshot files of a directory, sorted by name (hence by ordinal).
inline std::vector<std::filesystem::path> list_snapshots(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw SnapshotError(SnapshotError::Kind::io, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".epcs") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace polariton
