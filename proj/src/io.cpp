#include "sgtv/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace sgtv {

namespace {

std::uint64_t to_le_bits(double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  return bits;
}

double from_le_bits(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  double x;
  std::memcpy(&x, &bits, sizeof x);
  return x;
}

void write_doubles(std::ofstream& out, const double* data, std::size_t count) {
  std::vector<std::uint64_t> buf(count);
  for (std::size_t k = 0; k < count; ++k) buf[k] = to_le_bits(data[k]);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(count * sizeof(std::uint64_t)));
}

void read_doubles(std::ifstream& in, double* data, std::size_t count, const std::string& path) {
  std::vector<std::uint64_t> buf(count);
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(count * sizeof(std::uint64_t)));
  if (!in) throw io_error("truncated payload in " + path);
  for (std::size_t k = 0; k < count; ++k) data[k] = from_le_bits(buf[k]);
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw io_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw io_error("cannot open for reading: " + path);
  return in;
}

std::string read_header_line(std::ifstream& in, const std::string& path) {
  std::string line;
  if (!std::getline(in, line)) throw io_error("missing header in " + path);
  return line;
}

}  // namespace

void write_image(const Image& v, const std::string& path) {
  auto out = open_out(path, true);
  out << "rimg v1 " << v.height() << ' ' << v.width() << '\n';
  write_doubles(out, v.data(), static_cast<std::size_t>(v.size()));
  if (!out) throw io_error("write failed: " + path);
}

Image read_image(const std::string& path) {
  auto in = open_in(path, true);
  std::istringstream header(read_header_line(in, path));
  std::string magic, version;
  int h = 0, w = 0;
  header >> magic >> version >> h >> w;
  if (magic != "rimg" || version != "v1" || header.fail())
    throw io_error("bad image header in " + path);
  if (h < 2 || w < 2) throw io_error("bad image dimensions in " + path);
  Image v(h, w);
  read_doubles(in, v.data(), static_cast<std::size_t>(v.size()), path);
  return v;
}

void write_kspace(const KSpaceData& d, const std::string& path) {
  auto out = open_out(path, true);
  out << "kdat v1 " << d.size() << '\n';
  std::vector<double> flat;
  flat.reserve(d.values.size() * 2);
  for (const auto& z : d.values) {
    flat.push_back(z.real());
    flat.push_back(z.imag());
  }
  write_doubles(out, flat.data(), flat.size());
  if (!out) throw io_error("write failed: " + path);
}

KSpaceData read_kspace(const std::string& path) {
  auto in = open_in(path, true);
  std::istringstream header(read_header_line(in, path));
  std::string magic, version;
  std::int64_t m = 0;
  header >> magic >> version >> m;
  if (magic != "kdat" || version != "v1" || header.fail() || m < 1)
    throw io_error("bad k-space header in " + path);
  std::vector<double> flat(static_cast<std::size_t>(m) * 2);
  read_doubles(in, flat.data(), flat.size(), path);
  KSpaceData d;
  d.values.resize(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < d.values.size(); ++k)
    d.values[k] = {flat[2 * k], flat[2 * k + 1]};
  return d;
}

void write_pattern(const SamplingPattern& p, const std::string& path) {
  p.validate();
  auto out = open_out(path, false);
  out << "pattern v1 " << p.height << ' ' << p.width << ' ' << p.samples() << '\n';
  for (std::int64_t idx : p.indices)
    out << idx / p.width << ' ' << idx % p.width << '\n';
  if (!out) throw io_error("write failed: " + path);
}

SamplingPattern read_pattern(const std::string& path) {
  auto in = open_in(path, false);
  std::istringstream header(read_header_line(in, path));
  std::string magic, version;
  int h = 0, w = 0;
  std::int64_t m = 0;
  header >> magic >> version >> h >> w >> m;
  if (magic != "pattern" || version != "v1" || header.fail() || m < 1)
    throw io_error("bad pattern header in " + path);
  SamplingPattern p;
  p.height = h;
  p.width = w;
  p.indices.reserve(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k) {
    std::int64_t r = 0, c = 0;
    if (!(in >> r >> c)) throw io_error("truncated pattern in " + path);
    if (r < 0 || r >= h || c < 0 || c >= w) throw io_error("pattern index out of range in " + path);
    p.indices.push_back(r * w + c);
  }
  p.validate();
  return p;
}

void write_pgm(const Image& v, const std::string& path) {
  auto out = open_out(path, true);
  out << "P5\n" << v.width() << ' ' << v.height() << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(v.width()));
  for (int i = 0; i < v.height(); ++i) {
    for (int j = 0; j < v.width(); ++j) {
      const double scaled = std::floor(v(i, j) * 255.0 + 0.5);  // round half up
      row[static_cast<std::size_t>(j)] =
          static_cast<unsigned char>(std::clamp(scaled, 0.0, 255.0));
    }
    out.write(reinterpret_cast<const char*>(row.data()), v.width());
  }
  if (!out) throw io_error("write failed: " + path);
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_diagnostics_csv(const AdmmDiagnostics& diag, const std::string& path) {
  auto out = open_out(path, false);
  out << "iteration,objective,primal_residual,dual_residual,rho\n";
  for (const auto& row : diag.rows) {
    out << row.iteration << ',' << format_double(row.objective) << ','
        << format_double(row.primal_residual) << ',' << format_double(row.dual_residual) << ','
        << format_double(row.rho) << '\n';
  }
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace sgtv
