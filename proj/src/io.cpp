#include "hosdt/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace hosdt {

namespace {

constexpr std::string_view kMagic = "HOSDT1";

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xFFU) << (8 * (7 - i));
    return r;
  }
  return v;
}

std::string header(const Lattice& lat, std::string_view dtype) {
  std::string out(kMagic);
  out += "\nndim " + std::to_string(lat.ndim()) + "\nsize";
  for (std::size_t n : lat.dims()) out += " " + std::to_string(n);
  out += "\nspacing";
  for (double h : lat.spacing()) out += " " + format_decimal(h);
  out += "\ndtype ";
  out += dtype;
  out += "\ndata\n";
  return out;
}

// Splits off the next '\n'-terminated line starting at pos.
std::string_view next_line(std::string_view bytes, std::size_t& pos) {
  const std::size_t end = bytes.find('\n', pos);
  if (end == std::string_view::npos) throw Error("truncated header");
  std::string_view line = bytes.substr(pos, end - pos);
  pos = end + 1;
  return line;
}

std::vector<std::string> fields_after(std::string_view line, std::string_view key) {
  std::istringstream in{std::string(line)};
  std::string word;
  in >> word;
  if (word != key) throw Error("expected '" + std::string(key) + "' line");
  std::vector<std::string> out;
  while (in >> word) out.push_back(word);
  return out;
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(std::string("malformed ") + what);
  }
  return v;
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string optional_decimal(const std::optional<double>& v) {
  return v ? format_decimal(*v) : std::string();
}

}  // namespace

std::string format_decimal(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

std::string encode_volume(const Volume& volume) {
  if (const auto* grid = std::get_if<BinaryGrid>(&volume)) {
    std::string out = header(grid->lattice, "u8");
    out.reserve(out.size() + grid->labels.size());
    for (std::uint8_t v : grid->labels) out.push_back(static_cast<char>(v != 0 ? 1 : 0));
    return out;
  }
  const auto& field = std::get<ScalarField>(volume);
  std::string out = header(field.lattice, "f64");
  const std::size_t offset = out.size();
  out.resize(offset + 8 * field.values.size());
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(field.values[i]));
    std::memcpy(out.data() + offset + 8 * i, &bits, 8);
  }
  return out;
}

Volume decode_volume(const std::string& data) {
  const std::string_view bytes(data);
  std::size_t pos = 0;
  const std::size_t magic_end = bytes.find('\n');
  if (magic_end == std::string_view::npos || bytes.substr(0, magic_end) != kMagic) {
    throw Error("bad magic");
  }
  pos = magic_end + 1;

  const auto ndim_fields = fields_after(next_line(bytes, pos), "ndim");
  if (ndim_fields.size() != 1) throw Error("malformed ndim");
  const auto ndim = parse_number<long long>(ndim_fields[0], "ndim");
  if (ndim < 1 || ndim > static_cast<long long>(kMaxDims)) throw Error("unsupported ndim");

  const auto size_fields = fields_after(next_line(bytes, pos), "size");
  if (size_fields.size() != static_cast<std::size_t>(ndim)) throw Error("malformed size");
  std::vector<std::size_t> dims;
  for (const auto& f : size_fields) {
    const auto n = parse_number<long long>(f, "size");
    if (n < 1) throw Error("non-positive size");
    dims.push_back(static_cast<std::size_t>(n));
  }

  const auto spacing_fields = fields_after(next_line(bytes, pos), "spacing");
  if (spacing_fields.size() != static_cast<std::size_t>(ndim)) throw Error("malformed spacing");
  std::vector<double> spacing;
  for (const auto& f : spacing_fields) {
    const auto h = parse_number<double>(f, "spacing");
    if (!(h > 0.0) || !std::isfinite(h)) throw Error("non-positive spacing");
    spacing.push_back(h);
  }

  const auto dtype_fields = fields_after(next_line(bytes, pos), "dtype");
  if (dtype_fields.size() != 1) throw Error("malformed dtype");
  const std::string& dtype = dtype_fields[0];
  if (dtype != "u8" && dtype != "f64") throw Error("unknown dtype");

  if (next_line(bytes, pos) != "data") throw Error("expected 'data' line");

  Lattice lat(std::move(dims), std::move(spacing));
  const std::size_t element = dtype == "u8" ? 1 : 8;
  const std::size_t payload = bytes.size() - pos;
  if (payload < lat.size() * element) throw Error("truncated payload");
  if (payload > lat.size() * element) throw Error("trailing data");

  if (dtype == "u8") {
    std::vector<std::uint8_t> labels(lat.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto v = static_cast<std::uint8_t>(bytes[pos + i]);
      if (v > 1) throw Error("invalid label byte");
      labels[i] = v;
    }
    return BinaryGrid(std::move(lat), std::move(labels));
  }
  std::vector<double> values(lat.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, bytes.data() + pos + 8 * i, 8);
    values[i] = std::bit_cast<double>(to_little_endian(bits));
  }
  return ScalarField(std::move(lat), std::move(values));
}

void write_volume(const std::filesystem::path& path, const BinaryGrid& grid) {
  write_bytes(path, encode_volume(Volume{grid}));
}

void write_volume(const std::filesystem::path& path, const ScalarField& field) {
  write_bytes(path, encode_volume(Volume{field}));
}

void write_volume(const std::filesystem::path& path, const Volume& volume) {
  write_bytes(path, encode_volume(volume));
}

Volume read_volume(const std::filesystem::path& path) {
  return decode_volume(read_bytes(path));
}

std::string format_study_csv(const std::vector<StudyRecord>& records) {
  std::string out = "h,l1,order_l1,linf,order_linf,corrected,iterations,band\n";
  for (const auto& r : records) {
    out += format_decimal(r.h) + "," + format_decimal(r.l1) + "," +
           optional_decimal(r.order_l1) + "," + format_decimal(r.linf) + "," +
           optional_decimal(r.order_linf) + "," + (r.corrected ? "true" : "false") +
           "," + std::to_string(r.iterations) + "," + format_decimal(r.band) + "\n";
  }
  return out;
}

void write_study_csv(const std::filesystem::path& path,
                     const std::vector<StudyRecord>& records) {
  write_bytes(path, format_study_csv(records));
}

std::vector<StudyRecord> parse_study_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "h,l1,order_l1,linf,order_linf,corrected,iterations,band") {
    throw Error("bad study csv header");
  }
  std::vector<StudyRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cols.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cols.size() != 8) throw Error("bad study csv row");
    StudyRecord r;
    r.h = parse_number<double>(cols[0], "h");
    r.l1 = parse_number<double>(cols[1], "l1");
    if (!cols[2].empty()) r.order_l1 = parse_number<double>(cols[2], "order_l1");
    r.linf = parse_number<double>(cols[3], "linf");
    if (!cols[4].empty()) r.order_linf = parse_number<double>(cols[4], "order_linf");
    if (cols[5] != "true" && cols[5] != "false") throw Error("malformed corrected");
    r.corrected = cols[5] == "true";
    r.iterations = parse_number<int>(cols[6], "iterations");
    r.band = parse_number<double>(cols[7], "band");
    out.push_back(r);
  }
  return out;
}

}  // namespace hosdt
