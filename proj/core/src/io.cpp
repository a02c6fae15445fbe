#include "tomo/io.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <vector>

namespace tomo {

namespace {

void put_bytes(std::string& out, const void* p, std::size_t n) {
  out.append(static_cast<const char*>(p), n);
}

template <typename T>
void put(std::string& out, T v) {
  put_bytes(out, &v, sizeof(T));
}

struct Reader {
  const std::string& buf;
  std::size_t pos = 0;

  explicit Reader(const std::string& b) : buf(b) {}

  void read_bytes(void* p, std::size_t n) {
    if (pos + n > buf.size()) throw IoError("file truncated");
    std::memcpy(p, buf.data() + pos, n);
    pos += n;
  }
  template <typename T>
  T get() {
    T v;
    read_bytes(&v, sizeof(T));
    return v;
  }
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& bytes) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed for " + path.string() + ": " + ec.message());
}

std::uint32_t payload_crc(const double* data, std::size_t count) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(data), static_cast<uInt>(count * sizeof(double))));
}

}  // namespace

void write_sttf(const std::filesystem::path& path, const TensorField& field) {
  std::string out;
  out.reserve(64 + field.raw().size() * sizeof(double));
  out.append("STTF", 4);
  put<std::uint16_t>(out, 1);
  put<std::uint16_t>(out, static_cast<std::uint16_t>(field.dim()));
  put<std::uint16_t>(out, static_cast<std::uint16_t>(field.rank()));
  put<std::uint16_t>(out, 0);
  const Grid& g = field.grid();
  for (int a = 0; a < field.dim(); ++a)
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.shape[static_cast<std::size_t>(a)]));
  for (int a = 0; a < field.dim(); ++a) put<double>(out, g.spacing[static_cast<std::size_t>(a)]);
  for (int a = 0; a < field.dim(); ++a) put<double>(out, g.origin[static_cast<std::size_t>(a)]);
  put_bytes(out, field.raw().data(), field.raw().size() * sizeof(double));
  put<std::uint32_t>(out, payload_crc(field.raw().data(), field.raw().size()));
  write_atomic(path, out);
}

TensorField read_sttf(const std::filesystem::path& path) {
  const std::string buf = slurp(path);
  Reader r(buf);
  char magic[4];
  r.read_bytes(magic, 4);
  if (std::memcmp(magic, "STTF", 4) != 0) throw IoError(path.string() + ": not an STTF file");
  const auto version = r.get<std::uint16_t>();
  if (version != 1) throw IoError(path.string() + ": unsupported STTF version");
  const int n = r.get<std::uint16_t>();
  const int m = r.get<std::uint16_t>();
  r.get<std::uint16_t>();  // reserved
  std::vector<int> shape;
  for (int a = 0; a < n; ++a) shape.push_back(static_cast<int>(r.get<std::uint32_t>()));
  std::vector<double> spacing, origin;
  for (int a = 0; a < n; ++a) spacing.push_back(r.get<double>());
  for (int a = 0; a < n; ++a) origin.push_back(r.get<double>());
  TensorField field(Grid(shape, spacing, origin), m);
  const std::size_t count = field.raw().size();
  r.read_bytes(field.raw().data(), count * sizeof(double));
  const auto crc = r.get<std::uint32_t>();
  if (crc != payload_crc(field.raw().data(), count))
    throw IoError(path.string() + ": payload CRC mismatch");
  return field;
}

void write_sgrm(const std::filesystem::path& path, const SgrmRecord& record) {
  const Sinogram& s = record.sinogram;
  const int n = s.dirs.dim;
  if (record.ell.slots() != n - 1) throw IoError("write_sgrm: multi-index must have n-1 slots");
  std::string out;
  out.append("SGRM", 4);
  put<std::uint16_t>(out, 1);
  put<std::uint16_t>(out, static_cast<std::uint16_t>(n));
  put<std::uint8_t>(out, static_cast<std::uint8_t>(record.family));
  put<std::uint8_t>(out, static_cast<std::uint8_t>(record.order));
  for (int a = 0; a < n - 1; ++a) put<std::uint8_t>(out, static_cast<std::uint8_t>(record.ell[a]));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.dirs.count()));
  for (const Vec& w : s.dirs.directions)
    for (double v : w) put<double>(out, v);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.pgrid.count));
  put<double>(out, -s.pgrid.radius);
  put<double>(out, s.pgrid.radius);
  put_bytes(out, s.data.data(), s.data.size() * sizeof(double));
  put<std::uint32_t>(out, payload_crc(s.data.data(), s.data.size()));
  write_atomic(path, out);
}

SgrmRecord read_sgrm(const std::filesystem::path& path) {
  const std::string buf = slurp(path);
  Reader r(buf);
  char magic[4];
  r.read_bytes(magic, 4);
  if (std::memcmp(magic, "SGRM", 4) != 0) throw IoError(path.string() + ": not an SGRM file");
  const auto version = r.get<std::uint16_t>();
  if (version != 1) throw IoError(path.string() + ": unsupported SGRM version");
  const int n = r.get<std::uint16_t>();
  SgrmRecord record;
  record.family = static_cast<TransformFamily>(r.get<std::uint8_t>());
  record.order = r.get<std::uint8_t>();
  std::vector<int> ell;
  for (int a = 0; a < n - 1; ++a) ell.push_back(r.get<std::uint8_t>());
  record.ell = MultiIndex(std::move(ell));
  const int dcount = static_cast<int>(r.get<std::uint32_t>());
  std::vector<Vec> dirs;
  dirs.reserve(static_cast<std::size_t>(dcount));
  for (int d = 0; d < dcount; ++d) {
    Vec w(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) w[static_cast<std::size_t>(a)] = r.get<double>();
    dirs.push_back(std::move(w));
  }
  PGrid pgrid;
  pgrid.count = static_cast<int>(r.get<std::uint32_t>());
  const double pmin = r.get<double>();
  const double pmax = r.get<double>();
  if (std::abs(pmin + pmax) > 1e-12 * std::max(1.0, std::abs(pmax)))
    throw IoError(path.string() + ": asymmetric p range");
  pgrid.radius = pmax;
  record.sinogram = Sinogram(DirectionSet::from_directions(dirs), pgrid);
  r.read_bytes(record.sinogram.data.data(), record.sinogram.data.size() * sizeof(double));
  const auto crc = r.get<std::uint32_t>();
  if (crc != payload_crc(record.sinogram.data.data(), record.sinogram.data.size()))
    throw IoError(path.string() + ": payload CRC mismatch");
  return record;
}

void write_pgm(const std::filesystem::path& path, std::span<const double> data,
               int rows, int cols) {
  if (data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    throw IoError("write_pgm: size mismatch");
  double lo = data.empty() ? 0.0 : data[0], hi = lo;
  for (double v : data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
  std::string out = "P5\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
  out.reserve(out.size() + data.size());
  for (double v : data)
    out.push_back(static_cast<char>(static_cast<unsigned char>((v - lo) * scale)));
  write_atomic(path, out);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  write_atomic(path, text);
}

std::string sgrm_file_name(TransformFamily family, int order, const MultiIndex& ell) {
  std::string name = family_name(family);
  name += "_k" + std::to_string(order) + "_l";
  for (int i = 0; i < ell.slots(); ++i) name += std::to_string(ell[i]);
  return name + ".sgrm";
}

}  // namespace tomo
